//! Exhaustive division search for very small targets.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{DivisionWitness, Step};
use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Default bound on the order of the target.
pub const DEFAULT_SEARCH_LIMIT: usize = 12;

/// Submonoids of `t` containing its identity, as bitmasks, ordered by
/// order and then mask.
fn submonoids(t: &Monoid) -> Vec<u64> {
    let close = |mut mask: u64| loop {
        let mut next = mask;
        for x in 0..t.len() {
            if mask >> x & 1 == 0 {
                continue;
            }
            for y in 0..t.len() {
                if mask >> y & 1 == 1 {
                    next |= 1 << t.mul_idx(x, y);
                }
            }
        }
        if next == mask {
            return mask;
        }
        mask = next;
    };
    let mut found = BTreeSet::new();
    let mut frontier = vec![close(1 << t.identity_index())];
    found.insert(frontier[0]);
    while let Some(mask) = frontier.pop() {
        for x in 0..t.len() {
            if mask >> x & 1 == 0 {
                let bigger = close(mask | 1 << x);
                if found.insert(bigger) {
                    frontier.push(bigger);
                }
            }
        }
    }
    let mut all: Vec<u64> = found.into_iter().collect();
    all.sort_by_key(|&m| (m.count_ones(), m));
    all
}

/// Generators of a submonoid, greedily in index order.
fn generators(t: &Monoid, mask: u64) -> Vec<usize> {
    let e = t.identity_index();
    let mut gens = Vec::new();
    let mut reached: u64 = 1 << e;
    for x in 0..t.len() {
        if mask >> x & 1 == 1 && reached >> x & 1 == 0 {
            gens.push(x);
            let mut frontier = vec![e];
            reached = 1 << e;
            while let Some(y) = frontier.pop() {
                for &g in &gens {
                    let z = t.mul_idx(y, g);
                    if reached >> z & 1 == 0 {
                        reached |= 1 << z;
                        frontier.push(z);
                    }
                }
            }
        }
    }
    gens
}

/// Closes a partial assignment of generator images. Returns the induced
/// map, or `None` if it is not well defined.
fn extend(t: &Monoid, s: &Monoid, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; t.len()];
    map[t.identity_index()] = s.identity_index();
    let mut queue = vec![t.identity_index()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = t.mul_idx(x, g);
            let image = s.mul_idx(map[x], h);
            if map[y] == usize::MAX {
                map[y] = image;
                queue.push(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    Some(map)
}

fn assign(t: &Monoid, s: &Monoid, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        let map = extend(t, s, gens, images)?;
        let mut covered = vec![false; s.len()];
        for &y in map.iter().filter(|&&y| y != usize::MAX) {
            covered[y] = true;
        }
        return covered.iter().all(|&c| c).then(|| images.clone());
    }
    for h in 0..s.len() {
        images.push(h);
        if extend(t, s, &gens[..images.len()], images).is_some() {
            if let Some(found) = assign(t, s, gens, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Searches all submonoids of `t` and all homomorphisms from them onto `s`.
/// Submonoids are tried by increasing order, generator images in index
/// order; the first success is verified and returned.
///
/// Only submonoids containing the identity of `t`, mapped to the identity
/// of `s`, are considered. For finite monoids this loses nothing: if a
/// subsemigroup maps onto `s`, some idempotent `e` maps to the identity,
/// and `eT′e` together with the identity of `t` also maps onto `s`.
pub fn search_division(s: &Arc<Monoid>, t: &Arc<Monoid>, limit: usize) -> Result<Option<DivisionWitness>> {
    if t.len() > limit || t.len() > 64 {
        return Err(Error::SizeLimitExceeded { limit: limit.min(64) as u64 });
    }
    if s.len() > t.len() {
        return Ok(None);
    }
    for mask in submonoids(t) {
        if (mask.count_ones() as usize) < s.len() {
            continue;
        }
        let gens = generators(t, mask);
        if let Some(images) = assign(t, s, &gens, &mut Vec::new()) {
            let pairs = gens.iter().zip(&images).map(|(&g, &h)| (t.key(g).to_vec(), s.key(h).to_vec())).collect();
            let step = Step::construction("search", format!("submonoid of order {}", mask.count_ones()));
            return DivisionWitness::new(s.clone(), t.carrier(), pairs, vec![step]).verify(t.len() + 1).map(Some);
        }
    }
    Ok(None)
}
