//! Orbit-level curve complexes of the n-punctured sphere.
//!
//! A multicurve on `S_{0,n}` is determined up to pure mapping classes by the
//! puncture sets its curves cut off, so the quotient of the curve complex by the
//! pure mapping class group is the simplicial complex of laminar families (the
//! nerve of the boundary strata of `M_{0,n}`-bar). Quotients by the full group
//! are computed by canonical relabeling.
//!
//! The `b` variant keeps only curves bounding a twice-punctured disc.

mod enumerate;
mod family;
mod homology;
mod tree;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{
    canonical_form, complex_dimension, count_vertex_orbits, curve_vertices, enumerate_all, enumerate_simplices,
    f_vector, MAX_CANONICAL_N,
};
pub use family::{
    compatible, full_set, is_essential, lex_cmp, normalize_side, permute_subset, subset_elements, subset_from_elements,
    LaminarFamily, Subset, MAX_PUNCTURES,
};
pub use homology::{homology, simplicial_homology, HomologyReport, DEFAULT_SIMPLEX_CAP};
pub use tree::{family_to_tree, tree_to_family, StableTree, TreeVertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("S_{{0,{0}}} has no essential curves (need n >= 4)")]
    NoEssentialCurves(u32),
    #[error("invalid laminar family: {0}")]
    InvalidFamily(String),
    #[error("invalid family literal: {0}")]
    InvalidLiteral(String),
    #[error("invalid stable tree: {0}")]
    InvalidTree(String),
    #[error("complex has more than {cap} simplices")]
    ComplexTooLarge { cap: usize },
    #[error("canonical forms under relabeling are limited to n <= {max}, got {n}")]
    UnsupportedSize { n: u32, max: u32 },
}

/// Which curves are admitted as vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// All essential curves.
    Full,
    /// Curves bounding a twice-punctured disc.
    B,
}

impl Variant {
    pub fn admits(self, n: u32, side: Subset) -> bool {
        match self {
            Variant::Full => true,
            Variant::B => {
                let k = side.count_ones();
                k == 2 || k + 2 == n
            }
        }
    }
}

/// Which mapping class group the quotient is taken by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Pure,
    Full,
}
