//! Words in the chain Dehn twists `t1, ..., t(2g+1)` of a closed genus-g surface
//! and their action on the `2g + 2` Weierstrass points.
//!
//! Words act left to right: `t1 t2` means "apply `t1`, then `t2`". The same
//! convention is used by every representation in this crate.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(i64),
    #[error("twist index {index} outside 1..={max} for genus {genus}")]
    IndexOutOfRange { index: u64, max: u32, genus: u32 },
    #[error("zero exponent on t{0}")]
    ZeroExponent(u32),
    #[error("cannot parse word token `{0}`")]
    BadToken(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("genus {0} outside the supported range 1..=4")]
    RangeError(u32),
}

/// One letter `t_index^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u32,
    pub exponent: BigInt,
}

impl Letter {
    pub fn new(index: u32, exponent: impl Into<BigInt>) -> Self {
        Letter {
            index,
            exponent: exponent.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct TwistWord {
    genus: u32,
    letters: Vec<Letter>,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    genus: u32,
    word: String,
}

impl TryFrom<WordRepr> for TwistWord {
    type Error = WordError;

    fn try_from(r: WordRepr) -> Result<Self, WordError> {
        TwistWord::parse(r.genus, &r.word)
    }
}

impl From<TwistWord> for WordRepr {
    fn from(w: TwistWord) -> Self {
        WordRepr {
            genus: w.genus,
            word: w.to_string(),
        }
    }
}

pub(crate) fn check_genus(genus: i64) -> Result<u32, WordError> {
    if genus < 1 || genus > i64::from(u32::MAX / 4) {
        return Err(WordError::InvalidGenus(genus));
    }
    Ok(genus as u32)
}

impl TwistWord {
    pub fn new(genus: u32, letters: Vec<Letter>) -> Result<Self, WordError> {
        check_genus(i64::from(genus))?;
        let max = 2 * genus + 1;
        for l in &letters {
            if l.index < 1 || l.index > max {
                return Err(WordError::IndexOutOfRange {
                    index: u64::from(l.index),
                    max,
                    genus,
                });
            }
            if l.exponent.is_zero() {
                return Err(WordError::ZeroExponent(l.index));
            }
        }
        Ok(TwistWord { genus, letters })
    }

    pub fn empty(genus: u32) -> Result<Self, WordError> {
        TwistWord::new(genus, Vec::new())
    }

    pub fn generator(genus: u32, index: u32) -> Result<Self, WordError> {
        TwistWord::new(genus, vec![Letter::new(index, 1)])
    }

    /// Parses whitespace-separated tokens `t<i>` or `t<i>^<e>`.
    pub fn parse(genus: u32, text: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let body = token
                .strip_prefix('t')
                .ok_or_else(|| WordError::BadToken(token.to_string()))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let index: u64 = idx.parse().map_err(|_| WordError::BadToken(token.to_string()))?;
            let exponent = BigInt::from_str(exp).map_err(|_| WordError::BadToken(token.to_string()))?;
            let max = 2 * genus + 1;
            if index < 1 || index > u64::from(max) {
                return Err(WordError::IndexOutOfRange { index, max, genus });
            }
            letters.push(Letter::new(index as u32, exponent));
        }
        TwistWord::new(genus, letters)
    }

    /// The hyperelliptic involution `t1 t2 ... t(2g) t(2g+1)^2 t(2g) ... t1`.
    pub fn involution(genus: i64) -> Result<Self, WordError> {
        let g = check_genus(genus)?;
        let top = 2 * g + 1;
        let mut letters: Vec<Letter> = (1..top).map(|i| Letter::new(i, 1)).collect();
        letters.push(Letter::new(top, 2));
        letters.extend((1..top).rev().map(|i| Letter::new(i, 1)));
        TwistWord::new(g, letters)
    }

    /// A uniformly random word with `len` letters and exponents in `[-max_exp, max_exp] \ {0}`.
    pub fn random<R: Rng + ?Sized>(genus: u32, len: usize, max_exp: i64, rng: &mut R) -> Self {
        let top = 2 * genus + 1;
        let letters = (0..len)
            .map(|_| {
                let index = rng.gen_range(1..=top);
                let mut e = rng.gen_range(1..=max_exp.max(1));
                if rng.gen_bool(0.5) {
                    e = -e;
                }
                Letter::new(index, e)
            })
            .collect();
        TwistWord { genus, letters }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of generator occurrences, `sum |exponent|`.
    pub fn syllable_length(&self) -> BigInt {
        self.letters.iter().map(|l| l.exponent.abs()).sum()
    }

    /// Free reduction: merges adjacent letters with equal index and drops zero exponents.
    pub fn reduce(&self) -> TwistWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last_mut() {
                Some(last) if last.index == l.index => {
                    last.exponent += &l.exponent;
                    if last.exponent.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(l.clone()),
            }
        }
        TwistWord {
            genus: self.genus,
            letters: out,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0].index != w[1].index)
    }

    pub fn concat(&self, other: &TwistWord) -> Result<TwistWord, WordError> {
        if self.genus != other.genus {
            return Err(WordError::GenusMismatch(self.genus, other.genus));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(TwistWord {
            genus: self.genus,
            letters,
        })
    }

    pub fn inverse(&self) -> TwistWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter::new(l.index, -&l.exponent))
            .collect();
        TwistWord {
            genus: self.genus,
            letters,
        }
    }

    pub fn pow(&self, k: u32) -> TwistWord {
        let mut letters = Vec::with_capacity(self.letters.len() * k as usize);
        for _ in 0..k {
            letters.extend(self.letters.iter().cloned());
        }
        TwistWord {
            genus: self.genus,
            letters,
        }
    }

    /// Image in the symmetric group on the Weierstrass points: `t_i` acts as the
    /// transposition `(i i+1)`, so only exponent parity matters.
    pub fn rho_w(&self) -> Permutation {
        let mut p = Permutation::identity(2 * self.genus as usize + 2);
        for l in &self.letters {
            if l.exponent.is_odd() {
                let i = l.index as usize - 1;
                for x in p.images.iter_mut() {
                    if *x == i {
                        *x = i + 1;
                    } else if *x == i + 1 {
                        *x = i;
                    }
                }
            }
        }
        p
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if l.exponent.is_one() {
                write!(f, "t{}", l.index)?;
            } else {
                write!(f, "t{}^{}", l.index, l.exponent)?;
            }
        }
        Ok(())
    }
}

/// A permutation of `{1, ..., n}`, stored 0-based. Composition is left to right:
/// `p.then(&q)` applies `p` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermRepr", into = "PermRepr")]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermRepr {
    images: Vec<usize>,
}

impl TryFrom<PermRepr> for Permutation {
    type Error = String;

    fn try_from(r: PermRepr) -> Result<Self, String> {
        Permutation::from_one_based(&r.images)
    }
}

impl From<Permutation> for PermRepr {
    fn from(p: Permutation) -> Self {
        PermRepr {
            images: p.images.iter().map(|&x| x + 1).collect(),
        }
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x < 1 || x > n || seen[x - 1] {
                return Err(format!("not a bijection on 1..={n}: {images:?}"));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    fn pack(&self) -> u64 {
        self.images
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

/// Order of the group generated by `gens`, by breadth-first closure.
/// Permutations are packed four bits per point, so the degree is limited to 16.
pub fn permutation_closure_order(gens: &[Permutation]) -> usize {
    let Some(first) = gens.first() else {
        return 1;
    };
    let n = first.degree();
    assert!(n <= 16, "packed closure supports at most 16 points");
    assert!(gens.iter().all(|g| g.degree() == n));

    let gen_images: Vec<Vec<usize>> = gens.iter().map(|g| g.images.clone()).collect();
    let identity = Permutation::identity(n);
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(identity.pack());
    let mut frontier = vec![identity.pack()];
    let mask = 0xFu64;
    while let Some(code) = frontier.pop() {
        for g in &gen_images {
            let mut next = 0u64;
            for i in 0..n {
                let x = ((code >> (4 * i)) & mask) as usize;
                next |= (g[x] as u64) << (4 * i);
            }
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

/// Order of the image of the chain twists in the symmetric group on the
/// `2g + 2` Weierstrass points. Supported for `1 <= g <= 4`.
pub fn perm_group_order(genus: i64) -> Result<u64, WordError> {
    if !(1..=4).contains(&genus) {
        return Err(WordError::RangeError(genus.clamp(0, i64::from(u32::MAX)) as u32));
    }
    let g = genus as u32;
    let gens: Vec<Permutation> = (1..=2 * g + 1)
        .map(|i| TwistWord::generator(g, i).expect("index in range").rho_w())
        .collect();
    Ok(permutation_closure_order(&gens) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(g: u32, s: &str) -> TwistWord {
        TwistWord::parse(g, s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(w(1, "t1 t1^-1").reduce().is_empty());
        assert_eq!(w(1, "t1^2 t1^-1").reduce(), w(1, "t1"));
        assert_eq!(w(1, "t1 t2").reduce(), w(1, "t1 t2"));
        assert_eq!(w(2, "t3 t1 t2 t2^-1 t1^-1 t4").reduce(), w(2, "t3 t4"));
    }

    #[test]
    fn involution_words() {
        let g1 = TwistWord::involution(1).unwrap();
        assert_eq!(g1.to_string(), "t1 t2 t3^2 t2 t1");
        let g2 = TwistWord::involution(2).unwrap();
        assert_eq!(g2.to_string(), "t1 t2 t3 t4 t5^2 t4 t3 t2 t1");
        for g in 1..=6 {
            let inv = TwistWord::involution(g).unwrap();
            assert_eq!(inv.syllable_length(), BigInt::from(4 * g + 2));
        }
        assert_eq!(TwistWord::involution(0), Err(WordError::InvalidGenus(0)));
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!(matches!(
            TwistWord::parse(1, "t4"),
            Err(WordError::IndexOutOfRange { index: 4, .. })
        ));
        assert!(matches!(TwistWord::parse(1, "t0"), Err(WordError::IndexOutOfRange { .. })));
        assert!(matches!(TwistWord::parse(1, "s1"), Err(WordError::BadToken(_))));
        assert!(matches!(TwistWord::parse(1, "t1^"), Err(WordError::BadToken(_))));
        assert!(matches!(TwistWord::parse(1, "t1^0"), Err(WordError::ZeroExponent(1))));
        let big = w(2, "t3^-123456789012345678901234567890");
        assert_eq!(big.to_string(), "t3^-123456789012345678901234567890");
    }

    #[test]
    fn rho_w_examples() {
        assert_eq!(w(2, "t1").rho_w(), Permutation::transposition(6, 1, 2));
        assert!(w(2, "t1^2").rho_w().is_identity());
        for g in 1..=6 {
            assert!(TwistWord::involution(g).unwrap().rho_w().is_identity());
        }
    }

    #[test]
    fn rho_w_composes_left_to_right() {
        // t1 then t2: 1 -> 2 -> 3
        let p = w(1, "t1 t2").rho_w();
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.to_string(), "(1 3 2)");
    }

    #[test]
    fn perm_group_orders() {
        assert_eq!(perm_group_order(1).unwrap(), 24);
        assert_eq!(perm_group_order(2).unwrap(), 720);
        assert_eq!(perm_group_order(3).unwrap(), 40320);
        assert!(matches!(perm_group_order(5), Err(WordError::RangeError(5))));
        assert!(matches!(perm_group_order(0), Err(WordError::RangeError(0))));
    }

    #[test]
    fn json_round_trip() {
        let word = TwistWord::involution(2).unwrap();
        let s = serde_json::to_string(&word).unwrap();
        assert_eq!(serde_json::from_str::<TwistWord>(&s).unwrap(), word);
        let p = word.concat(&w(2, "t3")).unwrap().rho_w();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"images":[1,2,4,3,5,6]}"#);
        assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Permutation>(r#"{"images":[1,1]}"#).is_err());
    }

    proptest! {
        #[test]
        fn rho_w_is_homomorphism(seed in any::<u64>(), g in 1u32..=4, a in 0usize..12, b in 0usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = TwistWord::random(g, a, 3, &mut rng);
            let v = TwistWord::random(g, b, 3, &mut rng);
            let uv = u.concat(&v).unwrap();
            prop_assert_eq!(uv.rho_w(), u.rho_w().then(&v.rho_w()));
            prop_assert!(u.concat(&u.inverse()).unwrap().rho_w().is_identity());
        }

        #[test]
        fn reduce_is_idempotent_and_preserves_image(seed in any::<u64>(), len in 0usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = TwistWord::random(2, len, 2, &mut rng);
            let r = u.reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduce(), r.clone());
            prop_assert_eq!(r.rho_w(), u.rho_w());
            prop_assert!(u.concat(&u.inverse()).unwrap().reduce().is_empty());
        }

        #[test]
        fn word_literal_round_trip(seed in any::<u64>(), len in 0usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = TwistWord::random(3, len, 5, &mut rng);
            prop_assert_eq!(TwistWord::parse(3, &u.to_string()).unwrap(), u);
        }
    }
}
