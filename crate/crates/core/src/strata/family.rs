use std::cmp::Ordering;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{StrataError, Variant};

/// Largest number of punctures representable by the bitmask encoding.
pub const MAX_PUNCTURES: u32 = 63;

/// Set of punctures as a bitmask; bit `i - 1` stands for puncture `i`.
pub type Subset = u64;

pub fn subset_from_elements(elements: &[u32]) -> Subset {
    elements.iter().fold(0, |acc, &x| acc | (1u64 << (x - 1)))
}

pub fn subset_elements(s: Subset) -> Vec<u32> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    let mut rest = s;
    while rest != 0 {
        let b = rest.trailing_zeros();
        out.push(b + 1);
        rest &= rest - 1;
    }
    out
}

pub fn full_set(n: u32) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Lexicographic order on the sorted element lists.
pub fn lex_cmp(a: Subset, b: Subset) -> Ordering {
    let (mut x, mut y) = (a, b);
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
        if i != j {
            return i.cmp(&j);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

/// The side of the curve not containing puncture 1.
pub fn normalize_side(n: u32, side: Subset) -> Subset {
    if side & 1 != 0 {
        full_set(n) & !side
    } else {
        side
    }
}

/// Two normalized curves are disjoint exactly when their sides are nested or disjoint.
pub fn compatible(a: Subset, b: Subset) -> bool {
    let c = a & b;
    c == 0 || c == a || c == b
}

pub fn is_essential(n: u32, side: Subset) -> bool {
    let k = side.count_ones();
    side & 1 == 0 && side & !full_set(n) == 0 && k >= 2 && k + 2 <= n
}

/// An orbit of multicurves on the n-punctured sphere, recorded as a laminar
/// family of puncture sets. Each curve is stored by its side avoiding puncture 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct LaminarFamily {
    n: u32,
    members: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    n: u32,
    members: Vec<Vec<u32>>,
}

impl TryFrom<FamilyRepr> for LaminarFamily {
    type Error = StrataError;

    fn try_from(r: FamilyRepr) -> Result<Self, StrataError> {
        LaminarFamily::new(r.n, &r.members)
    }
}

impl From<LaminarFamily> for FamilyRepr {
    fn from(f: LaminarFamily) -> Self {
        FamilyRepr {
            n: f.n,
            members: f.member_lists(),
        }
    }
}

impl LaminarFamily {
    pub fn empty(n: u32) -> Result<Self, StrataError> {
        check_n(n)?;
        Ok(LaminarFamily { n, members: Vec::new() })
    }

    /// Builds a family from curve sides given as puncture lists. A side
    /// containing puncture 1 is replaced by its complement.
    pub fn new(n: u32, members: &[Vec<u32>]) -> Result<Self, StrataError> {
        check_n(n)?;
        let mut masks = Vec::with_capacity(members.len());
        for m in members {
            if m.iter().any(|&x| x < 1 || x > n) {
                return Err(StrataError::InvalidFamily(format!("{m:?} is not a subset of 1..={n}")));
            }
            let mut sorted = m.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m.len() {
                return Err(StrataError::InvalidFamily(format!("{m:?} repeats a puncture")));
            }
            masks.push(subset_from_elements(m));
        }
        LaminarFamily::from_masks(n, masks)
    }

    pub fn from_masks(n: u32, sides: Vec<Subset>) -> Result<Self, StrataError> {
        check_n(n)?;
        let mut members = Vec::with_capacity(sides.len());
        for s in sides {
            if s & !full_set(n) != 0 {
                return Err(StrataError::InvalidFamily(format!("{:?} is not a subset of 1..={n}", subset_elements(s))));
            }
            let a = normalize_side(n, s);
            if !is_essential(n, a) {
                return Err(StrataError::InvalidFamily(format!(
                    "{:?} does not bound an essential curve on {n} punctures",
                    subset_elements(s)
                )));
            }
            members.push(a);
        }
        members.sort_by(|a, b| lex_cmp(*a, *b));
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(StrataError::InvalidFamily("duplicate curve".into()));
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !compatible(a, b) {
                    return Err(StrataError::InvalidFamily(format!(
                        "{:?} and {:?} intersect",
                        subset_elements(a),
                        subset_elements(b)
                    )));
                }
            }
        }
        Ok(LaminarFamily { n, members })
    }

    /// Parses the literal `[[2,3],[2,3,4,5]]`.
    pub fn parse(n: u32, literal: &str) -> Result<Self, StrataError> {
        let members: Vec<Vec<u32>> =
            serde_json::from_str(literal).map_err(|e| StrataError::InvalidLiteral(e.to_string()))?;
        LaminarFamily::new(n, &members)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dimension(&self) -> isize {
        self.members.len() as isize - 1
    }

    pub fn member_lists(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|&m| subset_elements(m)).collect()
    }

    pub fn satisfies(&self, variant: Variant) -> bool {
        self.members.iter().all(|&m| variant.admits(self.n, m))
    }

    /// Every sub-family, including the empty one.
    pub fn faces(&self) -> Vec<LaminarFamily> {
        let k = self.members.len();
        (0u64..(1 << k))
            .map(|sel| LaminarFamily {
                n: self.n,
                members: (0..k).filter(|i| sel >> i & 1 == 1).map(|i| self.members[i]).collect(),
            })
            .collect()
    }

    /// Relabels punctures by `perm` (0-based images of 0-based points) and renormalizes.
    pub fn relabel(&self, perm: &[u32]) -> LaminarFamily {
        let mut members: Vec<Subset> = self
            .members
            .iter()
            .map(|&m| normalize_side(self.n, permute_subset(m, perm)))
            .collect();
        members.sort_by(|a, b| lex_cmp(*a, *b));
        LaminarFamily { n: self.n, members }
    }

    /// Grows a random maximal-or-smaller family: shuffle the admissible curves and
    /// keep each one compatible with those already taken, up to `target` members.
    pub fn random<R: Rng + ?Sized>(n: u32, variant: Variant, target: usize, rng: &mut R) -> Result<Self, StrataError> {
        let mut pool = super::curve_vertices(n, variant)?;
        pool.shuffle(rng);
        let mut members: Vec<Subset> = Vec::new();
        for c in pool {
            if members.len() >= target {
                break;
            }
            if members.iter().all(|&m| compatible(m, c)) {
                members.push(c);
            }
        }
        LaminarFamily::from_masks(n, members)
    }

    pub(crate) fn from_sorted_unchecked(n: u32, members: Vec<Subset>) -> Self {
        LaminarFamily { n, members }
    }
}

pub fn permute_subset(s: Subset, perm: &[u32]) -> Subset {
    let mut out = 0u64;
    let mut rest = s;
    while rest != 0 {
        let b = rest.trailing_zeros();
        out |= 1u64 << perm[b as usize];
        rest &= rest - 1;
    }
    out
}

pub(crate) fn check_n(n: u32) -> Result<(), StrataError> {
    if n < 4 {
        return Err(StrataError::NoEssentialCurves(n));
    }
    if n > MAX_PUNCTURES {
        return Err(StrataError::InvalidFamily(format!("at most {MAX_PUNCTURES} punctures supported, got {n}")));
    }
    Ok(())
}

impl Ord for LaminarFamily {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.members.iter().zip(&other.members) {
                match lex_cmp(*a, *b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.members.len().cmp(&other.members.len())
        })
    }
}

impl PartialOrd for LaminarFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaminarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .member_lists()
            .iter()
            .map(|m| {
                let items: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}
