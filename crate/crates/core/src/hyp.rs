//! The branched double cover `S_g -> S_{0,2g+2}` as a dictionary between laminar
//! families on the `2g + 2` branch points and symmetric multicurves upstairs.
//!
//! Everything is computed from parity data alone. A loop around a set `A` of
//! branch points has monodromy `|A| mod 2`, so a curve with an odd side lifts to
//! one invariant curve and a curve with an even side lifts to two curves swapped
//! by the involution. When `|A| = 2` (or `2g`), those two lifts cobound an annulus
//! and are isotopic.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::strata::{family_to_tree, subset_elements, subset_from_elements, LaminarFamily, Subset};
use crate::surface::{DisconnectedHyperelliptic, HyperellipticSurface, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypError {
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(i64),
    #[error("invalid curve {subset:?} for genus {genus}: {reason}")]
    InvalidCurve { subset: Vec<u32>, genus: u32, reason: String },
    #[error("family lives on {found} punctures, genus {genus} needs {expected}")]
    LegMismatch { found: u32, expected: u32, genus: u32 },
    #[error("inconsistent cut data: {0}")]
    Inconsistent(String),
}

fn check_genus(g: i64) -> Result<u32, HypError> {
    if !(1..=30).contains(&g) {
        return Err(HypError::InvalidGenus(g));
    }
    Ok(g as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    NonseparatingInvariant,
    /// One invariant separating curve; genera of the lifts of the `A` side and of the other side.
    SeparatingInvariant { genus_left: u32, genus_right: u32 },
    /// Two nonseparating curves swapped by the involution, jointly separating.
    SwappedPair { genus_left: u32, genus_right: u32 },
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::NonseparatingInvariant => "nonseparatingInvariant",
            CurveKind::SeparatingInvariant { .. } => "separatingInvariant",
            CurveKind::SwappedPair { .. } => "swappedPair",
        }
    }

    pub fn genera(&self) -> Option<(u32, u32)> {
        match *self {
            CurveKind::NonseparatingInvariant => None,
            CurveKind::SeparatingInvariant { genus_left, genus_right }
            | CurveKind::SwappedPair { genus_left, genus_right } => Some((genus_left, genus_right)),
        }
    }

    /// Number of distinct isotopy classes upstairs.
    pub fn upstairs_curves(&self) -> usize {
        match self {
            CurveKind::SwappedPair { .. } => 2,
            _ => 1,
        }
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, CurveKind::SeparatingInvariant { .. })
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.genera() {
            None => f.write_str(self.name()),
            Some((l, r)) => write!(f, "{}({l},{r})", self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr", into = "ClassRepr")]
pub struct SymmetricCurveClass {
    pub kind: CurveKind,
    pub subset: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    kind: String,
    subset: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genera: Option<(u32, u32)>,
}

impl From<SymmetricCurveClass> for ClassRepr {
    fn from(c: SymmetricCurveClass) -> Self {
        ClassRepr {
            kind: c.kind.name().to_string(),
            subset: c.subset,
            genera: c.kind.genera(),
        }
    }
}

impl TryFrom<ClassRepr> for SymmetricCurveClass {
    type Error = String;

    fn try_from(r: ClassRepr) -> Result<Self, String> {
        let kind = match (r.kind.as_str(), r.genera) {
            ("nonseparatingInvariant", None) => CurveKind::NonseparatingInvariant,
            ("separatingInvariant", Some((genus_left, genus_right))) => {
                CurveKind::SeparatingInvariant { genus_left, genus_right }
            }
            ("swappedPair", Some((genus_left, genus_right))) => CurveKind::SwappedPair { genus_left, genus_right },
            (k, g) => return Err(format!("unknown curve kind {k} with genera {g:?}")),
        };
        Ok(SymmetricCurveClass { kind, subset: r.subset })
    }
}

impl fmt::Display for SymmetricCurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

fn kind_for_size(size: u32, genus: u32) -> CurveKind {
    if size == 2 || size == 2 * genus {
        CurveKind::NonseparatingInvariant
    } else if size % 2 == 1 {
        let h = (size - 1) / 2;
        CurveKind::SeparatingInvariant {
            genus_left: h,
            genus_right: genus - h,
        }
    } else {
        CurveKind::SwappedPair {
            genus_left: (size - 2) / 2,
            genus_right: (2 * genus - size) / 2,
        }
    }
}

/// Classifies the lift of the curve cutting off `subset` from `{1, ..., 2g+2}`.
pub fn classify_curve(subset: &[u32], genus: i64) -> Result<SymmetricCurveClass, HypError> {
    let g = check_genus(genus)?;
    let invalid = |reason: &str| HypError::InvalidCurve {
        subset: subset.to_vec(),
        genus: g,
        reason: reason.to_string(),
    };
    if subset.iter().any(|&x| x < 2 || x > 2 * g + 2) {
        return Err(invalid("elements must lie in 2..=2g+2"));
    }
    let mask = subset_from_elements(subset);
    let size = mask.count_ones();
    if size as usize != subset.len() {
        return Err(invalid("repeated element"));
    }
    if size < 2 || size > 2 * g {
        return Err(invalid("size must lie in 2..=2g"));
    }
    Ok(SymmetricCurveClass {
        kind: kind_for_size(size, g),
        subset: subset_elements(mask),
    })
}

fn check_family(f: &LaminarFamily, genus: i64) -> Result<u32, HypError> {
    let g = check_genus(genus)?;
    if f.n() != 2 * g + 2 {
        return Err(HypError::LegMismatch {
            found: f.n(),
            expected: 2 * g + 2,
            genus: g,
        });
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Lift {
    pub classes: Vec<SymmetricCurveClass>,
    pub upstairs_simplex_size: usize,
}

/// Lifts a family on `2g + 2` branch points to a symmetric multicurve on `S_g`.
pub fn lift_multicurve(f: &LaminarFamily, genus: i64) -> Result<Lift, HypError> {
    let g = check_family(f, genus)?;
    let classes: Vec<SymmetricCurveClass> = f
        .members()
        .iter()
        .map(|&m| SymmetricCurveClass {
            kind: kind_for_size(m.count_ones(), g),
            subset: subset_elements(m),
        })
        .collect();
    let upstairs_simplex_size = classes.iter().map(|c| c.kind.upstairs_curves()).sum();
    Ok(Lift {
        classes,
        upstairs_simplex_size,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Action {
    Invariant,
    SwappedWith(usize),
}

/// One connected component of `S_g` cut along a symmetric multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CutComponent {
    pub genus: u32,
    pub boundary: u32,
    /// Branch points (Weierstrass points) on this component.
    pub branch: u32,
    pub action: Action,
    /// Boundary circles mapped to themselves by the involution.
    pub fixed_boundary: u32,
    /// Vertex of the dual tree (sphere piece) this component lies over.
    pub vertex: usize,
    /// Euler characteristic of that sphere piece.
    pub base_euler: i64,
}

impl CutComponent {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.boundary)
    }

    fn is_annulus_over_leaf(&self) -> bool {
        self.action == Action::Invariant && self.genus == 0 && self.boundary == 2 && self.branch == 2 && self.base_euler == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HypCutProfile {
    pub genus: u32,
    pub classes: Vec<SymmetricCurveClass>,
    pub components: Vec<CutComponent>,
    pub upstairs_simplex_size: usize,
}

impl HypCutProfile {
    /// Sum over components, each member of a swapped pair counted separately.
    pub fn total_euler(&self) -> i64 {
        self.components.iter().map(CutComponent::euler_characteristic).sum()
    }

    pub fn euler_conserved(&self) -> bool {
        self.total_euler() == 2 - 2 * i64::from(self.genus)
    }

    /// `chi_up = 2 chi_down - b` for every sphere piece; a piece whose preimage
    /// splits contributes two copies of itself.
    pub fn riemann_hurwitz_holds(&self) -> bool {
        let mut vertices: Vec<usize> = self.components.iter().map(|c| c.vertex).collect();
        vertices.sort_unstable();
        vertices.dedup();
        vertices.into_iter().all(|v| {
            let over: Vec<&CutComponent> = self.components.iter().filter(|c| c.vertex == v).collect();
            let up: i64 = over.iter().map(|c| c.euler_characteristic()).sum();
            let branch: i64 = over.iter().map(|c| i64::from(c.branch)).sum();
            up == 2 * over[0].base_euler - branch
        })
    }

    pub fn swapped_pairs_consistent(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| match c.action {
            Action::Invariant => true,
            Action::SwappedWith(j) => self.components.get(j).is_some_and(|d| {
                d.action == Action::SwappedWith(i) && d.genus == c.genus && d.boundary == c.boundary && d.branch == c.branch
            }),
        })
    }

    /// The cut surface as a disconnected hyperelliptic surface with boundary.
    pub fn to_disconnected(&self) -> Result<DisconnectedHyperelliptic, HypError> {
        let mut out = DisconnectedHyperelliptic::default();
        for (i, c) in self.components.iter().enumerate() {
            let base = Surface {
                genus: c.genus,
                punctures: 0,
                boundary: c.boundary,
            };
            match c.action {
                Action::Invariant => {
                    let h = HyperellipticSurface::new(base, i64::from(c.branch), 0, i64::from(c.fixed_boundary))
                        .map_err(|e| HypError::Inconsistent(format!("component {i}: {e}")))?;
                    out.fixed.push(h);
                }
                Action::SwappedWith(j) if j > i => out.swapped_pairs.push(base),
                Action::SwappedWith(_) => {}
            }
        }
        Ok(out)
    }
}

fn build_components(f: &LaminarFamily, g: u32) -> Result<Vec<CutComponent>, HypError> {
    let tree = family_to_tree(f);
    let members: &[Subset] = f.members();
    let mut comps = Vec::new();
    for (v, vertex) in tree.vertices.iter().enumerate() {
        let b = vertex.legs.len() as u32;
        let mut odd = 0u32;
        let mut even = 0u32;
        for &(p, c) in &tree.edges {
            if p == v || c == v {
                // vertex c (c >= 1) belongs to member c - 1
                if members[c - 1].count_ones() % 2 == 1 {
                    odd += 1;
                } else {
                    even += 1;
                }
            }
        }
        let e = odd + even;
        let base_euler = 2 - i64::from(e);
        if b >= 1 || odd >= 1 {
            let chi = 2 * base_euler - i64::from(b);
            let boundary = odd + 2 * even;
            let twice_genus = 2 - chi - i64::from(boundary);
            if twice_genus < 0 || twice_genus % 2 != 0 {
                return Err(HypError::Inconsistent(format!("vertex {v} has non-integral genus")));
            }
            comps.push(CutComponent {
                genus: (twice_genus / 2) as u32,
                boundary,
                branch: b,
                action: Action::Invariant,
                fixed_boundary: odd,
                vertex: v,
                base_euler,
            });
        } else {
            for _ in 0..2 {
                comps.push(CutComponent {
                    genus: 0,
                    boundary: e,
                    branch: 0,
                    action: Action::Invariant,
                    fixed_boundary: 0,
                    vertex: v,
                    base_euler,
                });
            }
        }
    }
    let _ = g;
    Ok(comps)
}

fn index_pairs(mut comps: Vec<CutComponent>) -> Vec<CutComponent> {
    let mut i = 0;
    while i < comps.len() {
        if i + 1 < comps.len() && comps[i].vertex == comps[i + 1].vertex {
            comps[i].action = Action::SwappedWith(i + 1);
            comps[i + 1].action = Action::SwappedWith(i);
            i += 2;
        } else {
            i += 1;
        }
    }
    comps
}

/// Components of `S_g` cut along the lift of `f`. With `merge_annuli`, the two
/// isotopic lifts of an `|A| = 2` curve are cut as one curve, so the annulus
/// between them disappears.
pub fn cut_profile_with(f: &LaminarFamily, genus: i64, merge_annuli: bool) -> Result<HypCutProfile, HypError> {
    let g = check_family(f, genus)?;
    let lift = lift_multicurve(f, genus)?;
    let mut comps = build_components(f, g)?;
    if merge_annuli {
        let kept: Vec<CutComponent> = comps.iter().filter(|c| !c.is_annulus_over_leaf()).cloned().collect();
        // torus cut along one curve: both pieces are annuli, keep one
        comps = if kept.is_empty() { comps.into_iter().take(1).collect() } else { kept };
    }
    let profile = HypCutProfile {
        genus: g,
        classes: lift.classes,
        components: index_pairs(comps),
        upstairs_simplex_size: lift.upstairs_simplex_size,
    };
    debug_assert!(profile.euler_conserved());
    debug_assert!(profile.swapped_pairs_consistent());
    Ok(profile)
}

pub fn cut_profile(f: &LaminarFamily, genus: i64) -> Result<HypCutProfile, HypError> {
    cut_profile_with(f, genus, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Flavor {
    /// Stabilizer in the full hyperelliptic mapping class group.
    Full,
    /// Stabilizer of the ordered, oriented simplex in the pure hyperelliptic group.
    PureOriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lattice {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "2Z")]
    TwoZ,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Z => "Z",
            Lattice::TwoZ => "2Z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TwistKind {
    /// Twist about a single invariant curve.
    Twist,
    /// Product of the twists about both curves of a swapped pair.
    Bitwist,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistGenerator {
    /// Index into the profile's `classes`.
    pub curve: usize,
    pub kind: TwistKind,
    pub lattice: Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizerProfile {
    pub flavor: Flavor,
    pub classes: Vec<SymmetricCurveClass>,
    #[serde(rename = "twists")]
    pub twist_generators: Vec<TwistGenerator>,
    #[serde(rename = "components")]
    pub cut_factors: Vec<CutComponent>,
    /// Order of the symmetric group on the oriented curves of the simplex, as a decimal string.
    pub symmetry_part: String,
}

impl StabilizerProfile {
    pub fn symmetry_order(&self) -> BigUint {
        self.symmetry_part.parse().expect("decimal string")
    }
}

/// Structural data of the stabilizer of the lifted simplex: the twist subgroup
/// (kernel of the map to the cut surface's group), the cut factors, and the
/// ambient order of the permutation part.
pub fn stabilizer_profile(f: &LaminarFamily, genus: i64, flavor: Flavor) -> Result<StabilizerProfile, HypError> {
    let cut = cut_profile(f, genus)?;
    let twist_generators = cut
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (kind, lattice) = match (c.kind, flavor) {
                // a single lift of a swapped pair is not symmetric; the bitwist is, and
                // acts on H_1 as a squared transvection, so it is already pure
                (CurveKind::SwappedPair { .. }, _) => (TwistKind::Bitwist, Lattice::Z),
                (CurveKind::NonseparatingInvariant, Flavor::PureOriented) => (TwistKind::Twist, Lattice::TwoZ),
                _ => (TwistKind::Twist, Lattice::Z),
            };
            TwistGenerator { curve: i, kind, lattice }
        })
        .collect();
    let oriented = 2 * cut.upstairs_simplex_size as u64;
    let symmetry: BigUint = (1..=oriented).map(BigUint::from).product();
    Ok(StabilizerProfile {
        flavor,
        classes: cut.classes,
        twist_generators,
        cut_factors: cut.components,
        symmetry_part: symmetry.to_string(),
    })
}
