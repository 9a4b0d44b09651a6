//! Green's relations from strongly connected components of Cayley graphs.
//!
//! `x R y` iff `xS = yS`, i.e. `x` and `y` lie in the same strongly connected
//! component of the right Cayley graph; dually for `L` with the left graph
//! and for `J` with their union.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::Monoid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreensReport {
    pub l: Vec<usize>,
    pub r: Vec<usize>,
    pub j: Vec<usize>,
    pub h: Vec<usize>,
    pub regular: Vec<bool>,
    pub idempotents: Vec<usize>,
}

impl GreensReport {
    pub fn class_count(partition: &[usize]) -> usize {
        partition.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn members(partition: &[usize], class: usize) -> Vec<usize> {
        (0..partition.len()).filter(|&x| partition[x] == class).collect()
    }

    pub fn h_class(&self, x: usize) -> Vec<usize> {
        Self::members(&self.h, self.h[x])
    }

    pub fn regular_j_classes(&self) -> usize {
        let mut seen = vec![false; Self::class_count(&self.j)];
        for (x, &c) in self.j.iter().enumerate() {
            if self.regular[x] {
                seen[c] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// Class ids numbered by first occurrence in element order.
fn canonical(components: Vec<Vec<NodeIndex>>, n: usize) -> Vec<usize> {
    let mut raw = vec![0usize; n];
    for (c, comp) in components.iter().enumerate() {
        for v in comp {
            raw[v.index()] = c;
        }
    }
    renumber(&raw)
}

pub(crate) fn renumber(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
    }
    canonical(tarjan_scc(&g), n)
}

type Edges = Vec<(usize, usize)>;

/// Right and left Cayley graph edges with respect to the generators.
pub(crate) fn cayley_edges(m: &Monoid) -> (Edges, Edges) {
    let gens = m.generators();
    let n = m.len();
    let right = (0..n).flat_map(|x| (0..gens.len()).map(move |g| (x, g))).map(|(x, g)| (x, m.right_mul(x, g))).collect();
    let left = (0..n).flat_map(|x| gens.iter().map(move |&g| (x, g))).map(|(x, g)| (x, m.mul_idx(g, x))).collect();
    (right, left)
}

pub fn greens(m: &Monoid) -> GreensReport {
    let n = m.len();
    let (right_edges, left_edges) = cayley_edges(m);
    let r = components(n, right_edges.iter().copied());
    let l = components(n, left_edges.iter().copied());
    let j = components(n, right_edges.iter().chain(&left_edges).copied());
    let h = renumber(&l.iter().zip(&r).map(|(&a, &b)| a * n + b).collect::<Vec<_>>());
    let idempotents = m.idempotents();
    let mut r_regular = vec![false; GreensReport::class_count(&r)];
    for &e in &idempotents {
        r_regular[r[e]] = true;
    }
    let regular = (0..n).map(|x| r_regular[r[x]]).collect();
    GreensReport { l, r, j, h, regular, idempotents }
}

/// Regularity straight from the definition: some `y` has `xyx = x`.
pub fn regular_by_definition(m: &Monoid) -> Vec<bool> {
    (0..m.len()).map(|x| (0..m.len()).any(|y| m.mul_idx(m.mul_idx(x, y), x) == x)).collect()
}
