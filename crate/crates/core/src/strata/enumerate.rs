use std::collections::HashSet;

use super::family::{check_n, compatible, full_set, lex_cmp, normalize_side, permute_subset, LaminarFamily, Subset};
use super::{Group, StrataError, Variant};

/// Canonical forms try all `n!` relabelings, so they are refused above this size.
pub const MAX_CANONICAL_N: u32 = 8;

/// Admissible curves (normalized sides), in lexicographic order.
pub fn curve_vertices(n: u32, variant: Variant) -> Result<Vec<Subset>, StrataError> {
    check_n(n)?;
    if n > 30 {
        return Err(StrataError::ComplexTooLarge { cap: 1 << 29 });
    }
    let mut out: Vec<Subset> = (0..(1u64 << (n - 1)))
        .map(|s| s << 1)
        .filter(|&s| {
            let k = s.count_ones();
            k >= 2 && k + 2 <= n && variant.admits(n, s)
        })
        .collect();
    out.sort_by(|a, b| lex_cmp(*a, *b));
    Ok(out)
}

/// All families, grouped by size: entry `k` holds the families with `k + 1` members.
/// Stops growing past `max_size` members; fails once more than `cap` families are produced.
pub(crate) fn enumerate_grouped(
    n: u32,
    variant: Variant,
    max_size: usize,
    cap: usize,
) -> Result<Vec<Vec<LaminarFamily>>, StrataError> {
    let verts = curve_vertices(n, variant)?;
    let nv = verts.len();
    let adj: Vec<Vec<bool>> = (0..nv)
        .map(|i| (0..nv).map(|j| i != j && compatible(verts[i], verts[j])).collect())
        .collect();
    let mut groups: Vec<Vec<LaminarFamily>> = Vec::new();
    let mut count = 0usize;
    let mut stack: Vec<usize> = Vec::new();

    fn extend(
        start: usize,
        stack: &mut Vec<usize>,
        verts: &[Subset],
        adj: &[Vec<bool>],
        n: u32,
        max_size: usize,
        cap: usize,
        count: &mut usize,
        groups: &mut Vec<Vec<LaminarFamily>>,
    ) -> Result<(), StrataError> {
        for v in start..verts.len() {
            if !stack.iter().all(|&u| adj[u][v]) {
                continue;
            }
            stack.push(v);
            *count += 1;
            if *count > cap {
                return Err(StrataError::ComplexTooLarge { cap });
            }
            if groups.len() < stack.len() {
                groups.push(Vec::new());
            }
            // vertices are in lex order and so is the stack
            let members = stack.iter().map(|&i| verts[i]).collect();
            groups[stack.len() - 1].push(LaminarFamily::from_sorted_unchecked(n, members));
            if stack.len() < max_size {
                extend(v + 1, stack, verts, adj, n, max_size, cap, count, groups)?;
            }
            stack.pop();
        }
        Ok(())
    }

    if max_size > 0 {
        extend(0, &mut stack, &verts, &adj, n, max_size, cap, &mut count, &mut groups)?;
    }
    for g in groups.iter_mut() {
        g.sort();
    }
    Ok(groups)
}

/// Every nonempty family admitted by `variant` with at most `max_size` members,
/// grouped by size and sorted.
pub fn enumerate_all(n: u32, variant: Variant, max_size: usize) -> Result<Vec<Vec<LaminarFamily>>, StrataError> {
    enumerate_grouped(n, variant, max_size, usize::MAX)
}

/// Numbers of simplices in each dimension of the pure quotient complex.
pub fn f_vector(n: u32, variant: Variant) -> Result<Vec<usize>, StrataError> {
    Ok(enumerate_all(n, variant, usize::MAX)?.iter().map(Vec::len).collect())
}

fn factorial_perms(n: usize) -> Vec<Vec<u32>> {
    // Heap's algorithm
    let mut p: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn relabeled(n: u32, members: &[Subset], perm: &[u32]) -> Vec<Subset> {
    let mut out: Vec<Subset> = members
        .iter()
        .map(|&m| normalize_side(n, permute_subset(m, perm)))
        .collect();
    out.sort_by(|a, b| lex_cmp(*a, *b));
    out
}

fn family_key_cmp(a: &[Subset], b: &[Subset]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match lex_cmp(*x, *y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Lexicographically least relabeling of `f` over all of `Sigma_n`.
pub fn canonical_form(f: &LaminarFamily) -> Result<LaminarFamily, StrataError> {
    let n = f.n();
    if n > MAX_CANONICAL_N {
        return Err(StrataError::UnsupportedSize { n, max: MAX_CANONICAL_N });
    }
    let mut best: Vec<Subset> = f.members().to_vec();
    for perm in factorial_perms(n as usize) {
        let cand = relabeled(n, f.members(), &perm);
        if family_key_cmp(&cand, &best) == std::cmp::Ordering::Less {
            best = cand;
        }
    }
    Ok(LaminarFamily::from_sorted_unchecked(n, best))
}

/// Orbit representatives: the whole orbit of each new family is marked as seen,
/// so each orbit costs one pass over `Sigma_n`.
fn orbit_representatives(n: u32, families: Vec<LaminarFamily>) -> Result<Vec<LaminarFamily>, StrataError> {
    if n > MAX_CANONICAL_N {
        return Err(StrataError::UnsupportedSize { n, max: MAX_CANONICAL_N });
    }
    let perms = factorial_perms(n as usize);
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    let mut reps = Vec::new();
    for f in families {
        if seen.contains(f.members()) {
            continue;
        }
        let mut best: Vec<Subset> = f.members().to_vec();
        for perm in &perms {
            let cand = relabeled(n, f.members(), perm);
            if family_key_cmp(&cand, &best) == std::cmp::Ordering::Less {
                best = cand.clone();
            }
            seen.insert(cand);
        }
        reps.push(LaminarFamily::from_sorted_unchecked(n, best));
    }
    reps.sort();
    Ok(reps)
}

/// Simplices of dimension `dim` (families with `dim + 1` members). For
/// `Group::Full` one canonical representative per orbit is returned.
pub fn enumerate_simplices(n: u32, dim: usize, variant: Variant, group: Group) -> Result<Vec<LaminarFamily>, StrataError> {
    check_n(n)?;
    if group == Group::Full && n > MAX_CANONICAL_N {
        return Err(StrataError::UnsupportedSize { n, max: MAX_CANONICAL_N });
    }
    let size = dim + 1;
    let mut groups = enumerate_all(n, variant, size)?;
    let families = if groups.len() >= size {
        std::mem::take(&mut groups[size - 1])
    } else {
        Vec::new()
    };
    match group {
        Group::Pure => Ok(families),
        Group::Full => orbit_representatives(n, families),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of vertex orbits. Pure orbits are curves, counted by the sizes of their
/// normalized sides; full orbits are determined by the smaller side size.
pub fn count_vertex_orbits(n: u32, variant: Variant, group: Group) -> Result<u64, StrataError> {
    check_n(n)?;
    let m = u64::from(n - 1);
    let sizes: Vec<u64> = (2..=u64::from(n) - 2).filter(|&k| variant.admits(n, full_set(k as u32) << 1)).collect();
    Ok(match group {
        Group::Pure => sizes.iter().map(|&k| binomial(m, k)).sum(),
        Group::Full => {
            let mut split: Vec<u64> = sizes.iter().map(|&k| k.min(u64::from(n) - k)).collect();
            split.sort_unstable();
            split.dedup();
            split.len() as u64
        }
    })
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Maximum clique by branch and bound, with greedy colouring as the upper bound.
fn max_clique(adj: &[Bitset], nv: usize) -> usize {
    fn colour_sort(cands: &Bitset, adj: &[Bitset]) -> Vec<(usize, usize)> {
        // returns (vertex, colour) with colours non-decreasing
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in cands.iter() {
            match classes.iter_mut().find(|c| c.iter().all(|&u| !adj[u].has(v))) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
            .into_iter()
            .enumerate()
            .flat_map(|(k, c)| c.into_iter().map(move |v| (v, k + 1)))
            .collect()
    }

    fn expand(size: usize, mut cands: Bitset, adj: &[Bitset], best: &mut usize) {
        let order = colour_sort(&cands, adj);
        for &(v, colour) in order.iter().rev() {
            if size + colour <= *best {
                return;
            }
            let next = cands.and(&adj[v]);
            if next.is_empty() {
                *best = (*best).max(size + 1);
            } else {
                expand(size + 1, next, adj, best);
            }
            cands.clear(v);
        }
    }

    let mut all = Bitset::new(nv);
    for i in 0..nv {
        all.set(i);
    }
    let mut best = 0;
    expand(0, all, adj, &mut best);
    best
}

/// Dimension of the complex: the largest admissible laminar family, minus one,
/// found by exact search.
pub fn complex_dimension(n: u32, variant: Variant) -> Result<usize, StrataError> {
    let verts = curve_vertices(n, variant)?;
    let nv = verts.len();
    let adj: Vec<Bitset> = (0..nv)
        .map(|i| {
            let mut b = Bitset::new(nv);
            for j in 0..nv {
                if i != j && compatible(verts[i], verts[j]) {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    Ok(max_clique(&adj, nv) - 1)
}
