//! The symplectic representation of twist words on `H_1(S_g)`, over `Z` and `Z/m`.
//!
//! Basis convention: `a_1, b_1, ..., a_g, b_g` interleaved, with `<a_i, b_i> = 1`.
//! Matrices act on row vectors, `x -> x M`, so a word `u v` evaluates to
//! `M(u) M(v)`. A twist about a curve of class `v` is the transvection
//! `x -> x + <x, v> v`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{check_genus, TwistWord, WordError};

/// Default element cap for [`group_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("modulus must be at least 2 and below 2^31, got {0}")]
    InvalidModulus(i64),
    #[error("order formula needs a prime modulus, got {0}")]
    UnsupportedModulus(u64),
    #[error("closure exceeded the cap of {cap} elements ({partial} found so far)")]
    ClosureTooLarge { cap: usize, partial: usize },
    #[error("generators disagree on size or modulus")]
    MismatchedGenerators,
    #[error("generator {0} is not symplectic")]
    NotSymplectic(usize),
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn check_modulus(m: i64) -> Result<u32, SymplecticError> {
    if !(2..(1 << 31)).contains(&m) {
        return Err(SymplecticError::InvalidModulus(m));
    }
    Ok(m as u32)
}

/// The standard form `<x, y> = sum_i (x_{a_i} y_{b_i} - x_{b_i} y_{a_i})`.
pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    assert_eq!(x.len(), y.len());
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum()
}

/// Homology classes of a maximal chain `c_1, ..., c_{2g+1}` of nonseparating curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainClasses {
    pub genus: u32,
    pub vectors: Vec<Vec<i64>>,
}

impl ChainClasses {
    /// `v_1 = a_1`, `v_{2i} = b_i`, `v_{2i+1} = a_i + a_{i+1}`, `v_{2g+1} = a_g`.
    pub fn new(genus: i64) -> Result<Self, SymplecticError> {
        let g = check_genus(genus)? as usize;
        let dim = 2 * g;
        let a = |i: usize| {
            let mut v = vec![0i64; dim];
            v[2 * (i - 1)] = 1;
            v
        };
        let b = |i: usize| {
            let mut v = vec![0i64; dim];
            v[2 * (i - 1) + 1] = 1;
            v
        };
        let mut vectors = vec![a(1)];
        for i in 1..=g {
            vectors.push(b(i));
            if i < g {
                let v: Vec<i64> = a(i).iter().zip(a(i + 1)).map(|(x, y)| x + y).collect();
                vectors.push(v);
            }
        }
        vectors.push(a(g));
        let chain = ChainClasses {
            genus: g as u32,
            vectors,
        };
        if let Err(msg) = chain.check() {
            panic!("internal chain construction is inconsistent: {msg}");
        }
        Ok(chain)
    }

    /// Checks the intersection pattern of a chain, primitivity, and that the
    /// first `2g` classes form a unimodular basis.
    pub fn check(&self) -> Result<(), String> {
        let n = self.vectors.len();
        let dim = 2 * self.genus as usize;
        if n != dim + 1 {
            return Err(format!("expected {} classes, found {n}", dim + 1));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let p = pairing(&self.vectors[i], &self.vectors[j]);
                if j == i + 1 && p.abs() != 1 {
                    return Err(format!("|<v{}, v{}>| = {} != 1", i + 1, j + 1, p.abs()));
                }
                if j >= i + 2 && p != 0 {
                    return Err(format!("<v{}, v{}> = {p} != 0", i + 1, j + 1));
                }
            }
            let content = self.vectors[i].iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if content != 1 {
                return Err(format!("v{} is not primitive", i + 1));
            }
        }
        let minor: Vec<Vec<BigInt>> = self.vectors[..dim]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let det = determinant(minor);
        if det.abs() != BigInt::one() {
            return Err(format!("maximal minor has determinant {det}"));
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![BigInt::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = BigInt::one();
        }
        IntMatrix { size, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, SymplecticError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(SymplecticError::Malformed("matrix is not square".into()));
        }
        Ok(IntMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The form matrix `J` with `J[a_i][b_i] = 1`.
    pub fn form(genus: usize) -> Self {
        let size = 2 * genus;
        let mut m = IntMatrix {
            size,
            entries: vec![BigInt::zero(); size * size],
        };
        for i in 0..genus {
            m.entries[(2 * i) * size + 2 * i + 1] = BigInt::one();
            m.entries[(2 * i + 1) * size + 2 * i] = -BigInt::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.size + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        IntMatrix { size: n, entries }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.size;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        IntMatrix { size: n, entries }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            size: self.size,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.size)
    }

    pub fn is_minus_identity(&self) -> bool {
        *self == IntMatrix::identity(self.size).neg()
    }

    /// `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        if self.size % 2 != 0 {
            return false;
        }
        let j = IntMatrix::form(self.size / 2);
        self.transpose().mul(&j).mul(self) == j
    }

    pub fn reduce_mod(&self, modulus: u32) -> ModMatrix {
        let m = BigInt::from(modulus);
        ModMatrix {
            size: self.size,
            modulus,
            entries: self
                .entries
                .iter()
                .map(|x| x.mod_floor(&m).to_u32().expect("residue fits"))
                .collect(),
        }
    }
}

/// A square matrix over `Z/m`, row-major residues in `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    size: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl ModMatrix {
    pub fn identity(size: usize, modulus: u32) -> Self {
        let mut entries = vec![0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1 % modulus;
        }
        ModMatrix {
            size,
            modulus,
            entries,
        }
    }

    pub fn minus_identity(size: usize, modulus: u32) -> Self {
        let mut m = ModMatrix::identity(size, modulus);
        for x in m.entries.iter_mut() {
            *x = (modulus - *x) % modulus;
        }
        m
    }

    pub fn form(genus: usize, modulus: u32) -> Self {
        IntMatrix::form(genus).reduce_mod(modulus)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.size + c]
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.size, other.size);
        assert_eq!(self.modulus, other.modulus);
        let n = self.size;
        let m = u64::from(self.modulus);
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + u64::from(self.entries[i * n + k]) * u64::from(other.entries[k * n + j])) % m;
                }
                entries[i * n + j] = acc as u32;
            }
        }
        ModMatrix {
            size: n,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn transpose(&self) -> ModMatrix {
        let n = self.size;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        ModMatrix {
            size: n,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.size, self.modulus)
    }

    pub fn is_symplectic(&self) -> bool {
        if self.size % 2 != 0 {
            return false;
        }
        let j = ModMatrix::form(self.size / 2, self.modulus);
        self.transpose().mul(&j).mul(self) == j
    }

    /// Inverse of a symplectic matrix: `M^{-1} = -J M^T J`.
    pub fn symplectic_inverse(&self) -> ModMatrix {
        let j = ModMatrix::form(self.size / 2, self.modulus);
        let p = j.mul(&self.transpose()).mul(&j);
        let m = self.modulus;
        ModMatrix {
            size: self.size,
            modulus: m,
            entries: p.entries.iter().map(|&x| (m - x) % m).collect(),
        }
    }
}

/// The rank-one update `x -> x + e <x, v> v`, i.e. `I + e (J v^T) v`.
fn transvection_entries(v: &[i64], exponent: &BigInt) -> Vec<BigInt> {
    let n = v.len();
    let jv: Vec<i64> = (0..n)
        .map(|r| if r % 2 == 0 { v[r + 1] } else { -v[r - 1] })
        .collect();
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut x = exponent * BigInt::from(jv[r] * v[c]);
            if r == c {
                x += 1;
            }
            entries.push(x);
        }
    }
    entries
}

/// The `e`-th power of the transvection along `v`. Since `(J v^T v)^2 = 0`,
/// this is `I + e (J v^T) v` for every integer `e`.
pub fn transvection_power(v: &[i64], exponent: &BigInt) -> Result<IntMatrix, SymplecticError> {
    if v.len() % 2 != 0 {
        return Err(SymplecticError::DimensionMismatch {
            expected: v.len() + 1,
            found: v.len(),
        });
    }
    Ok(IntMatrix {
        size: v.len(),
        entries: transvection_entries(v, exponent),
    })
}

pub fn transvection(v: &[i64]) -> Result<IntMatrix, SymplecticError> {
    transvection_power(v, &BigInt::one())
}

pub fn transvection_mod(v: &[i64], modulus: i64) -> Result<ModMatrix, SymplecticError> {
    let m = check_modulus(modulus)?;
    Ok(transvection(v)?.reduce_mod(m))
}

/// Image of a word over `Z`.
pub fn evaluate(word: &TwistWord) -> IntMatrix {
    let chain = ChainClasses::new(i64::from(word.genus())).expect("word genus is valid");
    let mut acc = IntMatrix::identity(2 * word.genus() as usize);
    for l in word.letters() {
        let t = transvection_power(&chain.vectors[l.index as usize - 1], &l.exponent).expect("even dimension");
        acc = acc.mul(&t);
    }
    acc
}

/// Image of a word over `Z/m`; exponents are reduced mod `m` first.
pub fn evaluate_mod(word: &TwistWord, modulus: i64) -> Result<ModMatrix, SymplecticError> {
    let m = check_modulus(modulus)?;
    let chain = ChainClasses::new(i64::from(word.genus()))?;
    let mb = BigInt::from(m);
    let mut acc = ModMatrix::identity(2 * word.genus() as usize, m);
    for l in word.letters() {
        let e = l.exponent.mod_floor(&mb);
        if e.is_zero() {
            continue;
        }
        let t = transvection_power(&chain.vectors[l.index as usize - 1], &e)?.reduce_mod(m);
        acc = acc.mul(&t);
    }
    Ok(acc)
}

/// Whether the word lies in the abelian level of order `m`.
pub fn level_membership(word: &TwistWord, modulus: i64) -> Result<bool, SymplecticError> {
    Ok(evaluate_mod(word, modulus)?.is_identity())
}

/// One failed braid or commutation relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub lhs: String,
    pub rhs: String,
}

/// Checks `t_i t_{i+1} t_i = t_{i+1} t_i t_{i+1}` and `t_i t_j = t_j t_i` for
/// `|i - j| >= 2` over `Z`. Returns the failing relations.
pub fn braid_relation_failures(genus: i64) -> Result<Vec<RelationFailure>, SymplecticError> {
    let g = check_genus(genus)?;
    let chain = ChainClasses::new(genus)?;
    let t: Vec<IntMatrix> = chain
        .vectors
        .iter()
        .map(|v| transvection(v).expect("even dimension"))
        .collect();
    let mut failures = Vec::new();
    let top = 2 * g as usize + 1;
    for i in 0..top {
        for j in (i + 1)..top {
            let (lhs, rhs, ok) = if j == i + 1 {
                let l = t[i].mul(&t[j]).mul(&t[i]);
                let r = t[j].mul(&t[i]).mul(&t[j]);
                (
                    format!("t{} t{} t{}", i + 1, j + 1, i + 1),
                    format!("t{} t{} t{}", j + 1, i + 1, j + 1),
                    l == r,
                )
            } else {
                (
                    format!("t{} t{}", i + 1, j + 1),
                    format!("t{} t{}", j + 1, i + 1),
                    t[i].mul(&t[j]) == t[j].mul(&t[i]),
                )
            };
            if !ok {
                failures.push(RelationFailure { lhs, rhs });
            }
        }
    }
    Ok(failures)
}

/// Result of a breadth-first closure: the exact element set of a finite matrix group.
#[derive(Debug, Clone)]
pub struct Closure {
    size: usize,
    modulus: u32,
    elements: HashSet<Box<[u32]>>,
}

impl Closure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Exact membership test on the full residue tuple.
    pub fn contains(&self, m: &ModMatrix) -> bool {
        m.size == self.size && m.modulus == self.modulus && self.elements.contains(m.entries.as_slice())
    }
}

/// Closes `gens` under multiplication by generators and their inverses.
/// Fails once more than `cap` elements have been found.
pub fn group_closure(gens: &[ModMatrix], cap: usize) -> Result<Closure, SymplecticError> {
    let Some(first) = gens.first() else {
        return Err(SymplecticError::MismatchedGenerators);
    };
    let (size, modulus) = (first.size, first.modulus);
    if gens.iter().any(|g| g.size != size || g.modulus != modulus) {
        return Err(SymplecticError::MismatchedGenerators);
    }
    if let Some(i) = gens.iter().position(|g| !g.is_symplectic()) {
        return Err(SymplecticError::NotSymplectic(i));
    }
    let mut step: Vec<ModMatrix> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        step.push(g.clone());
        let inv = g.symplectic_inverse();
        if inv != *g {
            step.push(inv);
        }
    }

    let identity = ModMatrix::identity(size, modulus);
    let mut elements: HashSet<Box<[u32]>> = HashSet::new();
    elements.insert(identity.entries.clone().into_boxed_slice());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &step {
                let y = x.mul(s);
                if !elements.contains(y.entries.as_slice()) {
                    elements.insert(y.entries.clone().into_boxed_slice());
                    if elements.len() > cap {
                        return Err(SymplecticError::ClosureTooLarge {
                            cap,
                            partial: elements.len(),
                        });
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(Closure {
        size,
        modulus,
        elements,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `|Sp(2g, F_p)| = p^{g^2} prod_{i=1}^{g} (p^{2i} - 1)`.
pub fn sp_order(genus: i64, p: u64) -> Result<BigUint, SymplecticError> {
    let g = check_genus(genus)?;
    if !is_prime(p) {
        return Err(SymplecticError::UnsupportedModulus(p));
    }
    let pb = BigUint::from(p);
    let mut order = num_traits::pow(pb.clone(), (g * g) as usize);
    for i in 1..=g {
        order *= num_traits::pow(pb.clone(), (2 * i) as usize) - BigUint::one();
    }
    Ok(order)
}

/// Transvections along the chain classes, mod `m`.
pub fn chain_transvections_mod(genus: i64, modulus: i64) -> Result<Vec<ModMatrix>, SymplecticError> {
    let chain = ChainClasses::new(genus)?;
    chain.vectors.iter().map(|v| transvection_mod(v, modulus)).collect()
}

/// A matrix entry as it appears in JSON: a number when it fits in `i64`, a string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Entry {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => Entry::Small(v),
            None => Entry::Big(x.to_string()),
        }
    }
}

impl Entry {
    fn to_bigint(&self) -> Result<BigInt, SymplecticError> {
        match self {
            Entry::Small(v) => Ok(BigInt::from(*v)),
            Entry::Big(s) => s
                .parse()
                .map_err(|_| SymplecticError::Malformed(format!("bad entry `{s}`"))),
        }
    }
}

/// Serialized form `{size, modulus?, rows}` of a matrix over `Z` or `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SympMatrix {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    pub rows: Vec<Vec<Entry>>,
}

impl From<&IntMatrix> for SympMatrix {
    fn from(m: &IntMatrix) -> Self {
        SympMatrix {
            size: m.size,
            modulus: None,
            rows: m
                .entries
                .chunks(m.size)
                .map(|r| r.iter().map(Entry::from).collect())
                .collect(),
        }
    }
}

impl From<&ModMatrix> for SympMatrix {
    fn from(m: &ModMatrix) -> Self {
        SympMatrix {
            size: m.size,
            modulus: Some(m.modulus),
            rows: m
                .entries
                .chunks(m.size)
                .map(|r| r.iter().map(|&x| Entry::Small(i64::from(x))).collect())
                .collect(),
        }
    }
}

impl SympMatrix {
    fn check_shape(&self) -> Result<(), SymplecticError> {
        if self.rows.len() != self.size || self.rows.iter().any(|r| r.len() != self.size) {
            return Err(SymplecticError::Malformed(format!("rows do not form a {0}x{0} matrix", self.size)));
        }
        Ok(())
    }

    pub fn to_int(&self) -> Result<IntMatrix, SymplecticError> {
        self.check_shape()?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(Entry::to_bigint).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(rows)
    }

    pub fn to_mod(&self) -> Result<ModMatrix, SymplecticError> {
        let m = self
            .modulus
            .ok_or_else(|| SymplecticError::Malformed("missing modulus".into()))?;
        check_modulus(i64::from(m))?;
        Ok(self.to_int()?.reduce_mod(m))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.size) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        write!(f, "(mod {})", self.modulus)
    }
}
