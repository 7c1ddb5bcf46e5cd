//! Exact combinatorics of hyperelliptic mapping class groups.
//!
//! - [`surface`]: topological types, fixed-locus bookkeeping, quotients.
//! - [`words`]: chain twist words and the permutation action on Weierstrass points.
//! - [`symplectic`]: action on `H_1` over `Z` and `Z/m`, finite closures.
//! - [`strata`]: laminar families, stable trees, orbit curve complexes and their homology.
//! - [`hyp`]: the branched double cover dictionary (curve lifts, cut surfaces, stabilizers).
//! - [`snf`]: sparse Smith normal form.

pub mod hyp;
pub mod snf;
pub mod strata;
pub mod surface;
pub mod symplectic;
pub mod words;

pub use hyp::{
    classify_curve, cut_profile, lift_multicurve, stabilizer_profile, CurveKind, Flavor, HypCutProfile, HypError,
    Lattice, StabilizerProfile, SymmetricCurveClass,
};
pub use strata::{
    complex_dimension, count_vertex_orbits, enumerate_simplices, family_to_tree, homology, Group, LaminarFamily,
    StableTree, StrataError, Variant,
};
pub use surface::{HyperellipticSurface, QuotientProfile, Surface, SurfaceError};
pub use symplectic::{
    evaluate, evaluate_mod, group_closure, level_membership, sp_order, ChainClasses, IntMatrix, ModMatrix,
    SympMatrix, SymplecticError,
};
pub use words::{perm_group_order, Permutation, TwistWord, WordError};
