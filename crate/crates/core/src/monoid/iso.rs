//! Isomorphism testing by backtracking over generator images.

use std::collections::HashMap;

use super::{greedy_generators, Monoid};
use crate::error::{Error, Result};

pub const DEFAULT_ISO_LIMIT: usize = 64;

fn profile(m: &Monoid) -> Vec<(usize, usize, bool)> {
    (0..m.len()).map(|x| {
        let (i, p) = m.index_period(x);
        (i, p, m.is_idempotent(x))
    }).collect()
}

/// Extends a partial assignment of generator images to the submonoid the
/// assigned generators generate. Fails if the induced map is not well
/// defined or not injective.
fn extend(a: &Monoid, b: &Monoid, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; a.len()];
    let mut used = vec![false; b.len()];
    let (ea, eb) = (a.identity_index(), b.identity_index());
    map[ea] = eb;
    used[eb] = true;
    let mut queue = vec![ea];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul_idx(x, g);
            let image = b.mul_idx(map[x], h);
            if map[y] == UNSET {
                if used[image] {
                    return None;
                }
                map[y] = image;
                used[image] = true;
                queue.push(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    Some(map)
}

/// An isomorphism `a → b` as an index map, if one exists.
pub fn find_isomorphism(a: &Monoid, b: &Monoid, limit: usize) -> Result<Option<Vec<usize>>> {
    if a.len() > limit || b.len() > limit {
        return Err(Error::SizeLimitExceeded { limit: limit as u64 });
    }
    if a.len() != b.len()
        || a.idempotents().len() != b.idempotents().len()
        || a.is_commutative() != b.is_commutative()
        || a.is_group() != b.is_group()
    {
        return Ok(None);
    }
    let (pa, pb) = (profile(a), profile(b));
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let (gens, _) = greedy_generators(a.len(), a.identity_index(), |x, y| Ok(a.mul_idx(x, y)))?;
    let gens: Vec<usize> = gens.into_iter().map(|g| g as usize).collect();
    let mut by_profile: HashMap<(usize, usize, bool), Vec<usize>> = HashMap::new();
    for (y, p) in pb.iter().enumerate() {
        by_profile.entry(*p).or_default().push(y);
    }
    let candidates: Vec<Vec<usize>> = gens.iter().map(|&g| by_profile[&pa[g]].clone()).collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(a, b, &gens, &candidates, &mut images))
}

fn search(a: &Monoid, b: &Monoid, gens: &[usize], candidates: &[Vec<usize>], images: &mut Vec<usize>) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return extend(a, b, gens, images).filter(|map| map.iter().all(|&y| y != usize::MAX));
    }
    for &c in &candidates[depth] {
        images.push(c);
        if extend(a, b, &gens[..=depth], images).is_some() {
            if let Some(found) = search(a, b, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

pub fn isomorphic(a: &Monoid, b: &Monoid, limit: usize) -> Result<bool> {
    Ok(find_isomorphism(a, b, limit)?.is_some())
}
