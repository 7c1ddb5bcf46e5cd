use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::family::{full_set, lex_cmp, subset_elements, subset_from_elements, LaminarFamily, Subset};
use super::StrataError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub legs: Vec<u32>,
}

/// Dual tree of a stable genus-0 curve: vertices carry leg labels, edges are nodes.
/// Vertex 0 is the one carrying leg 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableTree {
    pub n: u32,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl StableTree {
    pub fn valence(&self, v: usize) -> usize {
        let edges = self.edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        self.vertices[v].legs.len() + edges
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.valence(v) >= 3)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph stable_tree {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let legs: Vec<String> = v.legs.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "  v{i} [label=\"{{{}}}\"];", legs.join(","));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// One vertex per nesting gap: the root carries the punctures outside every
/// member, and the vertex of member `A` carries `A` minus its maximal sub-members.
pub fn family_to_tree(f: &LaminarFamily) -> StableTree {
    let n = f.n();
    let members = f.members();
    // parent of member i: the smallest member strictly containing it
    let parent: Vec<Option<usize>> = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b != a && b & a == a)
                .min_by_key(|&(_, &b)| b.count_ones())
                .map(|(j, _)| j)
        })
        .collect();
    let mut legs: Vec<Subset> = Vec::with_capacity(members.len() + 1);
    legs.push(full_set(n));
    legs.extend(members.iter().copied());
    for (i, &a) in members.iter().enumerate() {
        let vp = parent[i].map_or(0, |j| j + 1);
        legs[vp] &= !a;
    }
    let vertices = legs
        .into_iter()
        .map(|s| TreeVertex {
            legs: subset_elements(s),
        })
        .collect();
    let edges = parent
        .iter()
        .enumerate()
        .map(|(i, p)| (p.map_or(0, |j| j + 1), i + 1))
        .collect();
    let tree = StableTree { n, vertices, edges };
    debug_assert!(tree.is_stable());
    tree
}

/// Inverse of [`family_to_tree`]: each edge contributes the legs on its side away from leg 1.
pub fn tree_to_family(t: &StableTree) -> Result<LaminarFamily, StrataError> {
    let bad = |msg: &str| StrataError::InvalidTree(msg.to_string());
    let nv = t.vertices.len();
    if nv == 0 || t.edges.len() + 1 != nv {
        return Err(bad("a tree needs exactly one edge fewer than vertices"));
    }
    let mut seen_legs: Subset = 0;
    for v in &t.vertices {
        let s = subset_from_elements(&v.legs);
        if v.legs.iter().any(|&x| x < 1 || x > t.n) || s & seen_legs != 0 || s.count_ones() as usize != v.legs.len() {
            return Err(bad("leg labels do not partition 1..=n"));
        }
        seen_legs |= s;
    }
    if seen_legs != full_set(t.n) {
        return Err(bad("leg labels do not partition 1..=n"));
    }
    if !t.is_stable() {
        return Err(bad("a vertex has valence below 3"));
    }
    let mut adj = vec![Vec::new(); nv];
    for &(a, b) in &t.edges {
        if a >= nv || b >= nv || a == b {
            return Err(bad("edge endpoint out of range"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let root = t
        .vertices
        .iter()
        .position(|v| v.legs.contains(&1))
        .ok_or_else(|| bad("no vertex carries leg 1"))?;

    // iterative DFS, then accumulate subtree leg sets in reverse discovery order
    let mut parent = vec![usize::MAX; nv];
    let mut order = Vec::with_capacity(nv);
    let mut visited = vec![false; nv];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    if order.len() != nv {
        return Err(bad("tree is disconnected"));
    }
    let mut below: Vec<Subset> = t.vertices.iter().map(|v| subset_from_elements(&v.legs)).collect();
    let mut members = Vec::with_capacity(nv - 1);
    for &v in order.iter().rev() {
        if v != root {
            members.push(below[v]);
            below[parent[v]] |= below[v];
        }
    }
    members.sort_by(|a, b| lex_cmp(*a, *b));
    LaminarFamily::from_masks(t.n, members)
}
