use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::enumerate::{curve_vertices, enumerate_grouped};
use super::family::Subset;
use super::{StrataError, Variant};
use crate::snf::SparseMatrix;

/// Default cap on the number of simplices fed to the boundary matrices.
pub const DEFAULT_SIMPLEX_CAP: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HomologyReport {
    pub n: u32,
    pub variant: Variant,
    /// Simplex counts for dimensions `0..=maxDim + 1` (or the top dimension, if lower).
    pub f_vector: Vec<usize>,
    /// Rational Betti numbers for dimensions `0..=maxDim`.
    pub betti: Vec<usize>,
    /// Invariant factors above 1 of each `H_k`, from the Smith normal form.
    pub torsion: Vec<Vec<String>>,
    /// Whether every dimension of the complex was included.
    pub complete: bool,
}

impl HomologyReport {
    pub fn euler_from_f_vector(&self) -> i64 {
        alternating_sum(&self.f_vector)
    }

    pub fn euler_from_betti(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Betti numbers and torsion invariant factors in dimensions `0..=max_dim` of a
/// simplicial complex given by its simplices in each dimension (sorted vertex lists,
/// closed under faces).
pub fn simplicial_homology(simplices: &[Vec<Vec<u32>>], max_dim: usize) -> (Vec<usize>, Vec<Vec<String>>) {
    let top = simplices.iter().take_while(|s| !s.is_empty()).count();
    // invariant factors of the boundary maps d_k : C_k -> C_{k-1}, k >= 1
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    for k in 1..top.min(max_dim + 2) {
        let lookup: HashMap<&[u32], usize> = simplices[k - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut d = SparseMatrix::new(simplices[k].len(), simplices[k - 1].len());
        let mut face = Vec::with_capacity(k);
        for (r, s) in simplices[k].iter().enumerate() {
            for drop in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
                let c = lookup[face.as_slice()];
                d.set(r, c, if drop % 2 == 0 { 1 } else { -1 });
            }
        }
        // rows are k-simplices, so this is the transpose of d_k; invariant factors agree
        factors[k] = d.invariant_factors();
    }

    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..top.min(max_dim + 1) {
        let out = if k >= 1 { factors[k].len() } else { 0 };
        let inn = factors[k + 1].len();
        betti.push(simplices[k].len() - out - inn);
        torsion.push(factors[k + 1].iter().filter(|x| !x.is_one()).map(|x| x.to_string()).collect());
    }
    (betti, torsion)
}

/// Homology of the pure quotient complex (simplices = laminar families) in
/// dimensions `0..=max_dim`, via integer boundary matrices and their Smith normal forms.
pub fn homology(n: u32, variant: Variant, max_dim: usize, cap: usize) -> Result<HomologyReport, StrataError> {
    let verts = curve_vertices(n, variant)?;
    let index: HashMap<Subset, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let groups = enumerate_grouped(n, variant, max_dim + 2, cap)?;
    let top = groups.len(); // number of nonempty dimensions
    let complete = top <= max_dim + 1;

    // simplices as sorted vertex-index lists
    let simplices: Vec<Vec<Vec<u32>>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|f| {
                    let mut s: Vec<u32> = f.members().iter().map(|m| index[m]).collect();
                    s.sort_unstable();
                    s
                })
                .collect()
        })
        .collect();
    let f_vector: Vec<usize> = simplices.iter().map(Vec::len).collect();

    let (betti, torsion) = simplicial_homology(&simplices, max_dim);
    let shown = if complete { f_vector.clone() } else { f_vector[..=max_dim + 1].to_vec() };
    Ok(HomologyReport {
        n,
        variant,
        f_vector: shown,
        betti,
        torsion,
        complete,
    })
}
