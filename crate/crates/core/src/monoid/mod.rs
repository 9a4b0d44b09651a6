//! Finite monoids with canonical element orders.
//!
//! A [`Monoid`] stores its elements as keys together with a generating set
//! and the right Cayley graph of that set. Products are read from a table
//! when the monoid is small and otherwise computed by walking the Cayley
//! graph along a word for the right factor, so no product ever has to be
//! recomputed in the ambient carrier once the monoid exists.

mod depth;
mod greens;
mod iso;

pub use depth::{depth_report, DepthReport, JClass};
pub use greens::{greens, regular_by_definition, GreensReport};
pub use iso::{find_isomorphism, isomorphic, DEFAULT_ISO_LIMIT};

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::carrier::{encode_tuple, encode_u32s, Carrier, CarrierSpec, Key, ProductCarrier};
use crate::error::{Error, Result};

/// Monoids up to this order keep a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;
/// Default bound on the order of any monoid built by closure.
pub const DEFAULT_LIMIT: usize = 100_000;
/// Above this order associativity is only spot-checked.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;
const SPOT_CHECKS: usize = 10_000;
const NO_PARENT: u32 = u32::MAX;

pub struct Monoid {
    label: String,
    provenance: String,
    elements: Vec<Key>,
    index: HashMap<Key, u32>,
    identity: u32,
    generators: Vec<u32>,
    /// `right[x * generators.len() + g] = x * generators[g]`.
    right: Vec<u32>,
    /// Spanning tree of the right Cayley graph rooted at the identity.
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u32>>,
    universe: Option<Arc<dyn Carrier>>,
}

impl std::fmt::Debug for Monoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Monoid({}, order {})", self.label, self.len())
    }
}

/// Serialized monoid: keys, generators and either the ambient carrier
/// (products are recomputed there) or the right Cayley graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub label: String,
    pub provenance: String,
    pub order: usize,
    pub identity: usize,
    pub elements: Vec<String>,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Box<CarrierSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_cayley: Option<Vec<Vec<u32>>>,
}

impl MonoidSpec {
    pub fn build(&self) -> Result<Arc<Monoid>> {
        if self.elements.len() != self.order {
            return Err(Error::InvalidMonoid(format!(
                "order {} but {} element keys",
                self.order,
                self.elements.len()
            )));
        }
        let keys = self.elements.iter().map(hex::decode).collect::<Result<Vec<_>, _>>()?;
        if self.identity >= keys.len() {
            return Err(Error::InvalidMonoid("identity index out of range".into()));
        }
        let monoid = match (&self.universe, &self.right_cayley) {
            (Some(universe), _) => {
                let identity = keys[self.identity].clone();
                Monoid::from_elements(universe.build()?, keys, &identity, Some(&self.generators), &self.label)?
            }
            (None, Some(right)) => {
                let ng = self.generators.len();
                if right.len() != keys.len() || right.iter().any(|r| r.len() != ng) {
                    return Err(Error::InvalidMonoid("right Cayley graph has the wrong shape".into()));
                }
                let m = Monoid::finish(Draft {
                    label: self.label.clone(),
                    provenance: String::new(),
                    index: index_keys(&keys)?,
                    elements: keys,
                    identity: self.identity as u32,
                    generators: self.generators.iter().map(|&g| g as u32).collect(),
                    right: right.iter().flatten().copied().collect(),
                    universe: None,
                })?;
                m.check_identity()?;
                m.check_associativity()?;
                m
            }
            (None, None) => return Err(Error::InvalidMonoid("neither a universe nor a Cayley graph".into())),
        };
        Ok(Arc::new(monoid.with_provenance(&self.provenance)))
    }
}

struct Draft {
    label: String,
    provenance: String,
    elements: Vec<Key>,
    index: HashMap<Key, u32>,
    identity: u32,
    generators: Vec<u32>,
    right: Vec<u32>,
    universe: Option<Arc<dyn Carrier>>,
}

fn index_keys(keys: &[Key]) -> Result<HashMap<Key, u32>> {
    let mut index = HashMap::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        if index.insert(k.clone(), i as u32).is_some() {
            return Err(Error::InvalidMonoid(format!("duplicate element key {}", hex::encode(k))));
        }
    }
    Ok(index)
}

/// Chooses generators greedily in element order: an element becomes a
/// generator when it is not yet a product of earlier ones. Returns the
/// generators and the right Cayley graph, row by row.
pub(crate) fn greedy_generators(
    n: usize,
    identity: usize,
    mut mul: impl FnMut(usize, usize) -> Result<usize>,
) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
    let mut gens: Vec<u32> = Vec::new();
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut members = vec![identity];
    seen[identity] = true;
    for candidate in 0..n {
        if seen[candidate] {
            continue;
        }
        gens.push(candidate as u32);
        let g = candidate;
        let mut queue = Vec::new();
        let visit = |p: usize, seen: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut Vec<usize>| {
            if !seen[p] {
                seen[p] = true;
                members.push(p);
                queue.push(p);
            }
        };
        for i in 0..members.len() {
            let x = members[i];
            let p = mul(x, g)?;
            right[x].push(p as u32);
            visit(p, &mut seen, &mut members, &mut queue);
        }
        while let Some(y) = queue.pop() {
            // rows of elements found during this round are filled for every generator
            let have = right[y].len();
            for h in have..gens.len() {
                let p = mul(y, gens[h] as usize)?;
                right[y].push(p as u32);
                visit(p, &mut seen, &mut members, &mut queue);
            }
        }
    }
    Ok((gens, right))
}

impl Monoid {
    fn finish(d: Draft) -> Result<Monoid> {
        let n = d.elements.len();
        let ng = d.generators.len();
        debug_assert_eq!(d.right.len(), n * ng);
        let mut parent = vec![(NO_PARENT, NO_PARENT); n];
        let mut order = vec![d.identity as usize];
        let mut seen = vec![false; n];
        seen[d.identity as usize] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for g in 0..ng {
                let y = d.right[x * ng + g] as usize;
                if y >= n {
                    return Err(Error::InvalidMonoid(format!("product index {y} out of range")));
                }
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x as u32, g as u32);
                    order.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidMonoid(format!(
                "generators reach {} of {} elements",
                order.len(),
                n
            )));
        }
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; n * n];
            for x in 0..n {
                table[x * n + d.identity as usize] = x as u32;
                for &y in &order[1..] {
                    let (p, g) = parent[y];
                    let xp = table[x * n + p as usize] as usize;
                    table[x * n + y] = d.right[xp * ng + g as usize];
                }
            }
            table
        });
        Ok(Monoid {
            label: d.label,
            provenance: d.provenance,
            elements: d.elements,
            index: d.index,
            identity: d.identity,
            generators: d.generators,
            right: d.right,
            parent,
            table,
            universe: d.universe,
        })
    }

    /// A monoid from a right Cayley graph over keys of `universe`, as traced
    /// by a closure computation elsewhere.
    pub(crate) fn from_cayley(
        universe: Arc<dyn Carrier>,
        elements: Vec<Key>,
        identity: usize,
        generators: Vec<u32>,
        right: Vec<u32>,
        label: &str,
    ) -> Result<Monoid> {
        Monoid::finish(Draft {
            label: label.to_string(),
            provenance: "traced closure".into(),
            index: index_keys(&elements)?,
            elements,
            identity: identity as u32,
            generators,
            right,
            universe: Some(universe),
        })
    }

    /// Closure of `gens` inside `universe`: generators first (in input order,
    /// duplicates dropped), the identity next if it is not a generator, then
    /// products in breadth-first order, left factor ascending, generator
    /// ascending.
    pub fn close(universe: Arc<dyn Carrier>, gens: &[Key], limit: usize, label: &str) -> Result<Monoid> {
        let mut elements: Vec<Key> = Vec::new();
        let mut index: HashMap<Key, u32> = HashMap::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len() as u32);
                elements.push(g.clone());
            }
        }
        let ng = elements.len();
        let id = universe.identity();
        let identity = match index.get(&id) {
            Some(&i) => i,
            None => {
                index.insert(id.clone(), elements.len() as u32);
                elements.push(id);
                (elements.len() - 1) as u32
            }
        };
        if elements.len() > limit {
            return Err(Error::SizeLimitExceeded { limit: limit as u64 });
        }
        let mut right = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for g in 0..ng {
                let p = universe.mul(&elements[i], &elements[g])?;
                let idx = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= limit {
                            return Err(Error::SizeLimitExceeded { limit: limit as u64 });
                        }
                        index.insert(p.clone(), elements.len() as u32);
                        elements.push(p);
                        (elements.len() - 1) as u32
                    }
                };
                right.push(idx);
            }
            i += 1;
        }
        Monoid::finish(Draft {
            label: label.to_string(),
            provenance: "closure".into(),
            elements,
            index,
            identity,
            generators: (0..ng as u32).collect(),
            right,
            universe: Some(universe),
        })
    }

    /// A monoid on a given list of keys of `universe`, kept in the given
    /// order. With `generators` the list must be exactly the closure of those
    /// generators; without, generators are chosen greedily and the list
    /// must be closed under multiplication.
    pub fn from_elements(
        universe: Arc<dyn Carrier>,
        elements: Vec<Key>,
        identity: &[u8],
        generators: Option<&[usize]>,
        label: &str,
    ) -> Result<Monoid> {
        let index = index_keys(&elements)?;
        let identity = *index
            .get(identity)
            .ok_or_else(|| Error::InvalidMonoid(format!("identity {} is not listed", hex::encode(identity))))?;
        let lookup = |key: Key| -> Result<usize> {
            index
                .get(&key)
                .map(|&i| i as usize)
                .ok_or_else(|| Error::NotClosed(format!("product {} leaves the set", hex::encode(&key))))
        };
        let (gens, right) = match generators {
            Some(gens) => {
                if gens.iter().any(|&g| g >= elements.len()) {
                    return Err(Error::InvalidMonoid("generator index out of range".into()));
                }
                let mut right = Vec::with_capacity(elements.len() * gens.len());
                for x in &elements {
                    for &g in gens {
                        right.push(lookup(universe.mul(x, &elements[g])?)? as u32);
                    }
                }
                (gens.iter().map(|&g| g as u32).collect(), right)
            }
            None => {
                let (gens, rows) =
                    greedy_generators(elements.len(), identity as usize, |i, j| {
                        lookup(universe.mul(&elements[i], &elements[j])?)
                    })?;
                (gens, rows.into_iter().flatten().collect())
            }
        };
        let m = Monoid::finish(Draft {
            label: label.to_string(),
            provenance: "enumeration".into(),
            elements,
            index,
            identity,
            generators: gens,
            right,
            universe: Some(universe.clone()),
        })?;
        // the identity must act trivially on generators for the word oracle to be sound
        let e = m.key(m.identity_index());
        let check = |a: &[u8], b: &[u8], expect: &[u8]| -> Result<()> {
            if universe.mul(a, b)? != expect {
                return Err(Error::InvalidMonoid(format!("{} is not a two-sided identity", hex::encode(e))));
            }
            Ok(())
        };
        check(e, e, e)?;
        for &g in &m.generators {
            let g = m.key(g as usize);
            check(e, g, g)?;
            check(g, e, g)?;
        }
        Ok(m)
    }

    /// An abstract monoid given by its multiplication table; element `i`
    /// gets the key `encode_u32s(&[i])`.
    pub fn from_table(label: &str, table: &[Vec<u32>], identity: usize) -> Result<Monoid> {
        let n = table.len();
        if n == 0 || identity >= n {
            return Err(Error::InvalidMonoid("empty table or identity out of range".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return Err(Error::InvalidMonoid("table is not square over its index range".into()));
        }
        let elements: Vec<Key> = (0..n as u32).map(|i| encode_u32s(&[i])).collect();
        let (gens, rows) = greedy_generators(n, identity, |i, j| Ok(table[i][j] as usize))?;
        let m = Monoid::finish(Draft {
            label: label.to_string(),
            provenance: "table".into(),
            index: index_keys(&elements)?,
            elements,
            identity: identity as u32,
            generators: gens,
            right: rows.into_iter().flatten().collect(),
            universe: None,
        })?;
        for x in 0..n {
            if table[identity][x] as usize != x || table[x][identity] as usize != x {
                return Err(Error::InvalidMonoid(format!("{identity} is not a two-sided identity")));
            }
        }
        // the walk oracle agrees with the table only if the table is associative
        for x in 0..n {
            for y in 0..n {
                if m.mul_idx(x, y) != table[x][y] as usize {
                    return Err(Error::InvalidMonoid(format!("table is not associative near ({x}, {y})")));
                }
            }
        }
        m.check_associativity()?;
        Ok(m)
    }

    fn check_identity(&self) -> Result<()> {
        let e = self.identity_index();
        for &g in &self.generators {
            let g = g as usize;
            if self.mul_idx(e, g) != g || self.mul_idx(g, e) != g {
                return Err(Error::InvalidMonoid("identity is not two-sided".into()));
            }
        }
        Ok(())
    }

    /// Full associativity check up to [`FULL_ASSOCIATIVITY_LIMIT`] elements,
    /// otherwise [`SPOT_CHECKS`] seeded random triples.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.len();
        let fail = |a, b, c| Err(Error::InvalidMonoid(format!("associativity fails on ({a}, {b}, {c})")));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul_idx(a, b);
                    for c in 0..n {
                        if self.mul_idx(ab, c) != self.mul_idx(a, self.mul_idx(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul_idx(self.mul_idx(a, b), c) != self.mul_idx(a, self.mul_idx(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn with_provenance(mut self, provenance: &str) -> Self {
        self.provenance = provenance.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity_index(&self) -> usize {
        self.identity as usize
    }

    pub fn key(&self, i: usize) -> &[u8] {
        &self.elements[i]
    }

    pub fn keys(&self) -> &[Key] {
        &self.elements
    }

    pub fn index_of(&self, key: &[u8]) -> Option<usize> {
        self.index.get(key).map(|&i| i as usize)
    }

    pub fn require(&self, key: &[u8]) -> Result<usize> {
        self.index_of(key).ok_or_else(|| Error::UnknownElement(hex::encode(key)))
    }

    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().map(|&g| g as usize).collect()
    }

    pub fn universe(&self) -> Option<&Arc<dyn Carrier>> {
        self.universe.as_ref()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// `x * generators[g]`.
    #[inline]
    pub fn right_mul(&self, x: usize, g: usize) -> usize {
        self.right[x * self.generators.len() + g] as usize
    }

    #[inline]
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        if let Some(t) = &self.table {
            return t[x * self.len() + y] as usize;
        }
        let mut word = Vec::new();
        let mut z = y;
        while z != self.identity as usize {
            let (p, g) = self.parent[z];
            word.push(g);
            z = p as usize;
        }
        word.iter().rev().fold(x, |acc, &g| self.right_mul(acc, g as usize))
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.identity_index(), |acc, _| self.mul_idx(acc, x))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul_idx(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `(index, period)`: least `i ≥ 1, p ≥ 1` with `x^(i+p) = x^i`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut p = x;
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&p) {
                return (first, k - first);
            }
            seen.insert(p, k);
            p = self.mul_idx(p, x);
            k += 1;
        }
    }

    pub fn units(&self) -> Vec<usize> {
        let e = self.identity_index();
        (0..self.len())
            .filter(|&x| (0..self.len()).any(|y| self.mul_idx(x, y) == e && self.mul_idx(y, x) == e))
            .collect()
    }

    pub fn is_group(&self) -> bool {
        let e = self.identity_index();
        // in a finite monoid a one-sided inverse is two-sided
        (0..self.len()).all(|x| (0..self.len()).any(|y| self.mul_idx(x, y) == e))
    }

    pub fn is_commutative(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul_idx(a, b) == self.mul_idx(b, a)))
    }

    /// No non-trivial subgroups. Computed both from periods (`x^m = x^(m+1)`)
    /// and from the maximal subgroups at idempotents; the two must agree.
    pub fn is_aperiodic(&self) -> bool {
        let by_period = (0..self.len()).all(|x| self.index_period(x).1 == 1);
        let report = greens(self);
        let by_subgroups = report.idempotents.iter().all(|&e| report.h_class(e).len() == 1);
        assert_eq!(by_period, by_subgroups, "aperiodicity tests disagree on {}", self.label);
        by_period
    }

    /// The carrier in which this monoid's keys multiply.
    pub fn carrier(self: &Arc<Self>) -> Arc<dyn Carrier> {
        match &self.universe {
            Some(u) => u.clone(),
            None => self.clone(),
        }
    }

    /// Closure of some of this monoid's elements.
    pub fn submonoid(self: &Arc<Self>, gens: &[usize], label: &str) -> Result<Monoid> {
        let keys: Vec<Key> = gens.iter().map(|&g| self.key(g).to_vec()).collect();
        Monoid::close(self.carrier(), &keys, self.len(), label)
    }

    /// A closed subset with its own identity, such as a maximal subgroup.
    pub fn subset(self: &Arc<Self>, members: &[usize], identity: usize, label: &str) -> Result<Monoid> {
        let keys = members.iter().map(|&x| self.key(x).to_vec()).collect();
        Monoid::from_elements(self.carrier(), keys, self.key(identity), None, label)
    }

    /// The H-class of an idempotent, as a group with identity `e`.
    pub fn maximal_subgroup(self: &Arc<Self>, e: usize) -> Result<Monoid> {
        if e >= self.len() || !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(e));
        }
        let members = greens(self).h_class(e);
        self.subset(&members, e, &format!("G({})", e))
    }

    pub fn spec(&self) -> MonoidSpec {
        let elements = self.elements.iter().map(hex::encode).collect();
        let (universe, right_cayley) = match &self.universe {
            Some(u) => (Some(Box::new(u.spec())), None),
            None => {
                let ng = self.generators.len();
                let rows = (0..self.len()).map(|x| self.right[x * ng..(x + 1) * ng].to_vec()).collect();
                (None, Some(rows))
            }
        };
        MonoidSpec {
            label: self.label.clone(),
            provenance: self.provenance.clone(),
            order: self.len(),
            identity: self.identity_index(),
            elements,
            generators: self.generators(),
            universe,
            right_cayley,
        }
    }
}

/// Componentwise product, elements ordered lexicographically by
/// `(index in a, index in b)`.
pub fn direct_product(a: &Arc<Monoid>, b: &Arc<Monoid>) -> Monoid {
    let (na, nb) = (a.len(), b.len());
    let elements: Vec<Key> =
        (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| encode_tuple(&[a.key(i), b.key(j)])).collect();
    let index = index_keys(&elements).expect("product keys are distinct");
    let pair = |i: usize, j: usize| (i * nb + j) as u32;
    let (ea, eb) = (a.identity_index(), b.identity_index());
    let ga = a.generators();
    let gb = b.generators();
    let mut generators: Vec<u32> = ga.iter().map(|&g| pair(g, eb)).collect();
    generators.extend(gb.iter().map(|&h| pair(ea, h)));
    let mut right = Vec::with_capacity(na * nb * generators.len());
    for i in 0..na {
        for j in 0..nb {
            right.extend((0..ga.len()).map(|g| pair(a.right_mul(i, g), j)));
            right.extend((0..gb.len()).map(|h| pair(i, b.right_mul(j, h))));
        }
    }
    let universe: Arc<dyn Carrier> = Arc::new(ProductCarrier::new(vec![a.clone(), b.clone()]));
    Monoid::finish(Draft {
        label: format!("{} × {}", a.label(), b.label()),
        provenance: "direct product".into(),
        elements,
        index,
        identity: pair(ea, eb),
        generators,
        right,
        universe: Some(universe),
    })
    .expect("generators of the factors generate the product")
}

/// Quotient by a central subgroup `z` of the units. Each class `xZ` is keyed
/// by its bytewise least member; classes are ordered by first occurrence.
/// Returns the quotient and the projection as an index map.
pub fn quotient_by_central_units(m: &Arc<Monoid>, z: &[usize], label: &str) -> Result<(Monoid, Vec<usize>)> {
    let e = m.identity_index();
    if !z.contains(&e) {
        return Err(Error::InvalidMonoid("subgroup must contain the identity".into()));
    }
    for &a in z {
        for &b in z {
            if !z.contains(&m.mul_idx(a, b)) {
                return Err(Error::NotClosed(format!("{a} * {b} leaves the subgroup")));
            }
        }
        if !z.iter().any(|&b| m.mul_idx(a, b) == e) {
            return Err(Error::InvalidMonoid(format!("{a} has no inverse in the subgroup")));
        }
        for x in 0..m.len() {
            if m.mul_idx(a, x) != m.mul_idx(x, a) {
                return Err(Error::NotCentral(a, x));
            }
        }
    }
    let mut projection = vec![usize::MAX; m.len()];
    let mut elements: Vec<Key> = Vec::new();
    for x in 0..m.len() {
        if projection[x] != usize::MAX {
            continue;
        }
        let orbit: Vec<usize> = z.iter().map(|&a| m.mul_idx(x, a)).collect();
        let least = orbit.iter().map(|&y| m.key(y)).min().expect("non-empty orbit").to_vec();
        for &y in &orbit {
            projection[y] = elements.len();
        }
        elements.push(least);
    }
    let generators: Vec<u32> = {
        let mut seen = Vec::new();
        for g in m.generators() {
            let p = projection[g] as u32;
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        seen
    };
    // a representative of each class, to read products from the parent
    let mut rep = vec![0usize; elements.len()];
    for x in (0..m.len()).rev() {
        rep[projection[x]] = x;
    }
    let right = (0..elements.len())
        .flat_map(|c| generators.iter().map(move |&g| (c, g)))
        .map(|(c, g)| projection[m.mul_idx(rep[c], rep[g as usize])] as u32)
        .collect();
    let q = Monoid::finish(Draft {
        label: label.to_string(),
        provenance: format!("quotient of {} by {} central units", m.label(), z.len()),
        index: index_keys(&elements)?,
        elements,
        identity: projection[e] as u32,
        generators,
        right,
        universe: None,
    })?;
    // the projection is a homomorphism onto q
    for x in 0..m.len() {
        for &g in &m.generators() {
            if projection[m.mul_idx(x, g)] != q.mul_idx(projection[x], projection[g]) {
                return Err(Error::InvalidMonoid("projection is not a homomorphism".into()));
            }
        }
    }
    Ok((q, projection))
}
