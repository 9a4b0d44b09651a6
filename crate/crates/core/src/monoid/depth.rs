//! The J-order, essential J-classes and depth.

use serde::Serialize;

use super::greens::{cayley_edges, greens, GreensReport};
use super::Monoid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JClass {
    pub id: usize,
    pub members: Vec<usize>,
    pub regular: bool,
    /// Least idempotent of the class, if regular.
    pub idempotent: Option<usize>,
    /// Order of the maximal subgroup at `idempotent`.
    pub subgroup_order: Option<usize>,
    pub essential: bool,
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub classes: Vec<JClass>,
    /// `above[c]`: classes strictly above `c` in the J-order.
    pub above: Vec<Vec<usize>>,
    /// Covering pairs `(upper, lower)` of the J-order.
    pub edges: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
    /// One more than the largest essential depth, 0 without essential classes.
    pub depth: usize,
    /// Number of essential classes at each depth.
    pub census: Vec<usize>,
    /// Maximal subgroup orders of the essential classes at each depth; their
    /// product is the group term at that depth.
    pub k_terms: Vec<Vec<usize>>,
}

impl DepthReport {
    pub fn is_above(&self, upper: usize, lower: usize) -> bool {
        self.above[lower].binary_search(&upper).is_ok()
    }

    pub fn k_orders(&self) -> Vec<usize> {
        self.k_terms.iter().map(|t| t.iter().product()).collect()
    }
}

pub fn depth_report(m: &Monoid) -> DepthReport {
    let g = greens(m);
    depth_from_greens(m, &g)
}

pub(crate) fn depth_from_greens(m: &Monoid, g: &GreensReport) -> DepthReport {
    let count = GreensReport::class_count(&g.j);
    let (right, left) = cayley_edges(m);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (a, b) in right.into_iter().chain(left) {
        let (ca, cb) = (g.j[a], g.j[b]);
        if ca != cb {
            succ[ca].push(cb);
        }
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
    }
    // below[c]: everything reachable from c, as a bitset
    let words = count.div_ceil(64);
    let mut below = vec![vec![0u64; words]; count];
    for (c, row) in below.iter_mut().enumerate() {
        let mut stack = succ[c].clone();
        while let Some(d) = stack.pop() {
            if row[d / 64] & (1 << (d % 64)) == 0 {
                row[d / 64] |= 1 << (d % 64);
                stack.extend(&succ[d]);
            }
        }
    }
    let bit = |c: usize, d: usize| below[c][d / 64] & (1 << (d % 64)) != 0;
    let above: Vec<Vec<usize>> = (0..count).map(|c| (0..count).filter(|&d| bit(d, c)).collect()).collect();
    let mut edges = Vec::new();
    for c in 0..count {
        for &d in &above[c] {
            if !above[c].iter().any(|&e| e != d && bit(d, e)) {
                edges.push((d, c));
            }
        }
    }
    let mut classes: Vec<JClass> = (0..count)
        .map(|id| {
            let members = GreensReport::members(&g.j, id);
            let idempotent = members.iter().copied().find(|&x| g.idempotents.binary_search(&x).is_ok());
            let subgroup_order = idempotent.map(|e| g.h_class(e).len());
            JClass {
                id,
                regular: idempotent.is_some(),
                essential: subgroup_order.is_some_and(|o| o > 1),
                members,
                idempotent,
                subgroup_order,
                depth: None,
            }
        })
        .collect();
    let mut by_height: Vec<usize> = (0..count).collect();
    by_height.sort_by_key(|&c| above[c].len());
    for &c in &by_height {
        if classes[c].essential {
            let d = above[c].iter().filter_map(|&u| classes[u].depth).map(|d| d + 1).max().unwrap_or(0);
            classes[c].depth = Some(d);
        }
    }
    let essential: Vec<usize> = (0..count).filter(|&c| classes[c].essential).collect();
    let depth = essential.iter().filter_map(|&c| classes[c].depth).max().map_or(0, |d| d + 1);
    let mut census = vec![0; depth];
    let mut k_terms = vec![Vec::new(); depth];
    for &c in &essential {
        let d = classes[c].depth.expect("essential classes have a depth");
        census[d] += 1;
        k_terms[d].push(classes[c].subgroup_order.expect("essential classes are regular"));
    }
    DepthReport { classes, above, edges, essential, depth, census, k_terms }
}
