//! Smith normal form of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse representation (a unit pivot
//! contributes an invariant factor 1 and can be split off without touching the
//! rest of its row). Whatever survives is handed to a dense Smith normal form
//! with arbitrary-precision entries.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by rows.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, r: usize, c: usize, value: impl Into<BigInt>) {
        assert!(r < self.nrows && c < self.ncols);
        let v = value.into();
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].get(&c).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                d[r][c] = v.clone();
            }
        }
        d
    }

    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut rows = self.rows.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.ncols];
        for (r, row) in rows.iter().enumerate() {
            for &c in row.keys() {
                col_rows[c].insert(r);
            }
        }
        let mut active: Vec<bool> = vec![true; self.nrows];
        let mut units = 0usize;

        loop {
            let mut order: Vec<usize> = (0..self.nrows).filter(|&r| active[r] && !rows[r].is_empty()).collect();
            order.sort_by_key(|&r| rows[r].len());
            let mut progressed = false;
            for r in order {
                if !active[r] {
                    continue;
                }
                let pivot = rows[r]
                    .iter()
                    .filter(|(_, v)| v.abs().is_one())
                    .min_by_key(|(&c, _)| col_rows[c].len())
                    .map(|(&c, v)| (c, v.clone()));
                let Some((pc, pv)) = pivot else { continue };
                progressed = true;
                units += 1;
                active[r] = false;
                let pivot_row = std::mem::take(&mut rows[r]);
                for &c in pivot_row.keys() {
                    col_rows[c].remove(&r);
                }
                let others: Vec<usize> = col_rows[pc].iter().copied().collect();
                for o in others {
                    // row_o -= (a / pv) * pivot_row, with pv = +-1
                    let factor = &rows[o][&pc] * &pv;
                    for (&c, v) in &pivot_row {
                        let entry = rows[o].entry(c).or_insert_with(BigInt::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            rows[o].remove(&c);
                            col_rows[c].remove(&o);
                        } else {
                            col_rows[c].insert(o);
                        }
                    }
                    debug_assert!(!rows[o].contains_key(&pc));
                }
                // the pivot column is now zero outside the pivot row; the rest of the
                // pivot row is cleared by column operations that touch nothing else
            }
            if !progressed {
                break;
            }
        }

        let rest_rows: Vec<usize> = (0..self.nrows).filter(|&r| active[r] && !rows[r].is_empty()).collect();
        let mut factors = vec![BigInt::one(); units];
        if !rest_rows.is_empty() {
            let cols: Vec<usize> = (0..self.ncols).filter(|&c| !col_rows[c].is_empty()).collect();
            let dense: Vec<Vec<BigInt>> = rest_rows
                .iter()
                .map(|&r| cols.iter().map(|c| rows[r].get(c).cloned().unwrap_or_default()).collect())
                .collect();
            factors.extend(dense_invariant_factors(dense));
        }
        factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Invariant factors of a dense integer matrix by the classical elimination
/// algorithm (minimal-pivot Euclidean reduction, then divisibility repair).
pub fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
