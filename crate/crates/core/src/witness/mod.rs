//! Division witnesses.
//!
//! A witness for `S ≺ T` is a list of pairs `(t, s)`. Verification closes
//! the pairs (plus the pair of identities) under componentwise products and
//! checks that the result is the graph of a function onto `S`. A closed,
//! functional relation is exactly a homomorphism from the traced
//! subsemigroup of `T`, so nothing else needs checking.

mod combinators;
mod search;

pub use combinators::*;
pub use search::{search_division, DEFAULT_SEARCH_LIMIT};

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, CarrierSpec, Key};
use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidSpec};
use crate::wreath::RestrictionStep;

/// Default bound on the size of a traced closure.
pub const DEFAULT_CLOSURE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    Construction { name: String, detail: String },
    Restriction(RestrictionStep),
    Compose { first: String, second: String },
}

impl Step {
    pub fn construction(name: &str, detail: impl Into<String>) -> Step {
        Step::Construction { name: name.to_string(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Unverified,
    Verified { closure_size: usize },
    Failed { reason: String },
}

/// The traced relation, in breadth-first order with the identity first.
#[derive(Debug)]
pub struct Closure {
    targets: Vec<Key>,
    images: Vec<usize>,
    index: HashMap<Key, usize>,
    /// Closure position of the least key mapping to each source element.
    first_preimage: Vec<usize>,
    image: Arc<Monoid>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn targets(&self) -> &[Key] {
        &self.targets
    }

    /// Source index of each traced target element, in closure order.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The source element a target element maps to.
    pub fn image_of(&self, target: &[u8]) -> Option<usize> {
        self.index.get(target).map(|&i| self.images[i])
    }

    /// The bytewise least target element mapping to `source`.
    pub fn least_preimage(&self, source: usize) -> &[u8] {
        &self.targets[self.first_preimage[source]]
    }

    /// Position of [`Closure::least_preimage`] in the closure, which is
    /// also its index in [`Closure::image`].
    pub fn preimage_position(&self, source: usize) -> usize {
        self.first_preimage[source]
    }

    /// The traced subsemigroup of the target, as a monoid in closure order.
    pub fn image(&self) -> &Arc<Monoid> {
        &self.image
    }
}

#[derive(Clone)]
pub struct DivisionWitness {
    source: Arc<Monoid>,
    target: Arc<dyn Carrier>,
    pairs: Vec<(Key, Key)>,
    steps: Vec<Step>,
    verdict: Verdict,
    closure: Option<Arc<Closure>>,
}

impl std::fmt::Debug for DivisionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DivisionWitness({} ≺ {}, {:?})", self.source.label(), self.target.label(), self.verdict)
    }
}

impl DivisionWitness {
    pub fn new(source: Arc<Monoid>, target: Arc<dyn Carrier>, pairs: Vec<(Key, Key)>, steps: Vec<Step>) -> Self {
        DivisionWitness { source, target, pairs, steps, verdict: Verdict::Unverified, closure: None }
    }

    pub fn source(&self) -> &Arc<Monoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn Carrier> {
        &self.target
    }

    pub fn pairs(&self) -> &[(Key, Key)] {
        &self.pairs
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified { .. })
    }

    pub fn closure(&self) -> Result<&Arc<Closure>> {
        self.closure.as_ref().ok_or(Error::Unverified)
    }

    pub fn closure_size(&self) -> Result<usize> {
        Ok(self.closure()?.len())
    }

    pub fn image_monoid(&self) -> Result<Arc<Monoid>> {
        Ok(self.closure()?.image.clone())
    }

    pub fn describe(&self) -> String {
        format!("{} ≺ {}", self.source.label(), self.target.label())
    }

    /// Traces the closure of the pairs without changing the witness.
    pub fn trace(&self, limit: usize) -> Result<Closure> {
        let s = &self.source;
        let mut targets: Vec<Key> = vec![self.target.identity()];
        let mut images = vec![s.identity_index()];
        let mut index: HashMap<Key, usize> = HashMap::new();
        index.insert(targets[0].clone(), 0);
        let conflict = |t: &[u8], a: usize, b: usize| Error::NotFunctional {
            target: hex::encode(t),
            first: hex::encode(s.key(a)),
            second: hex::encode(s.key(b)),
        };
        let mut gens: Vec<usize> = Vec::new();
        for (t, sk) in &self.pairs {
            let si = s.require(sk)?;
            match index.get(t) {
                Some(&i) if images[i] != si => return Err(conflict(t, images[i], si)),
                Some(_) => {}
                None => {
                    index.insert(t.clone(), targets.len());
                    gens.push(targets.len());
                    targets.push(t.clone());
                    images.push(si);
                }
            }
        }
        if targets.len() > limit {
            return Err(Error::SizeLimitExceeded { limit: limit as u64 });
        }
        let mut right: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < targets.len() {
            for &g in &gens {
                let t = self.target.mul(&targets[i], &targets[g])?;
                let si = s.mul_idx(images[i], images[g]);
                let j = match index.get(&t) {
                    Some(&j) => {
                        if images[j] != si {
                            return Err(conflict(&t, images[j], si));
                        }
                        j
                    }
                    None => {
                        if targets.len() >= limit {
                            return Err(Error::SizeLimitExceeded { limit: limit as u64 });
                        }
                        index.insert(t.clone(), targets.len());
                        targets.push(t);
                        images.push(si);
                        targets.len() - 1
                    }
                };
                right.push(j as u32);
            }
            i += 1;
        }
        let mut first_preimage = vec![usize::MAX; s.len()];
        for (pos, &si) in images.iter().enumerate() {
            let best = first_preimage[si];
            if best == usize::MAX || targets[pos] < targets[best] {
                first_preimage[si] = pos;
            }
        }
        let missing: Vec<usize> = (0..s.len()).filter(|&x| first_preimage[x] == usize::MAX).collect();
        if let Some(&first) = missing.first() {
            return Err(Error::NotSurjective { missing: missing.len(), first: hex::encode(s.key(first)) });
        }
        let image = Monoid::from_cayley(
            self.target.clone(),
            targets.clone(),
            0,
            gens.iter().map(|&g| g as u32).collect(),
            right,
            &format!("im[{}]", self.source.label()),
        )?;
        Ok(Closure { targets, images, index, first_preimage, image: Arc::new(image) })
    }

    /// Verifies the witness, recording the verdict. On failure the error
    /// is returned; use [`DivisionWitness::check`] to keep the witness.
    pub fn verify(mut self, limit: usize) -> Result<Self> {
        match self.trace(limit) {
            Ok(c) => {
                self.verdict = Verdict::Verified { closure_size: c.len() };
                self.closure = Some(Arc::new(c));
                Ok(self)
            }
            Err(e) => Err(e),
        }
    }

    /// Verifies in place, recording a failure as a verdict.
    pub fn check(&mut self, limit: usize) -> &Verdict {
        match self.trace(limit) {
            Ok(c) => {
                self.verdict = Verdict::Verified { closure_size: c.len() };
                self.closure = Some(Arc::new(c));
            }
            Err(e) => {
                self.verdict = Verdict::Failed { reason: e.to_string() };
                self.closure = None;
            }
        }
        &self.verdict
    }

    /// Requires the traced closure to be as large as the source, i.e. the
    /// witness to be an embedding.
    pub fn require_injective(self) -> Result<Self> {
        let closure = self.closure_size()?;
        if closure != self.source.len() {
            return Err(Error::NotInjective { closure, source_size: self.source.len() });
        }
        Ok(self)
    }

    pub fn with_steps(mut self, steps: Vec<Step>) -> Self {
        self.steps = steps;
        self
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            source: self.source.spec(),
            target: self.target.spec(),
            pairs: self.pairs.iter().map(|(t, s)| [hex::encode(t), hex::encode(s)]).collect(),
            steps: self.steps.clone(),
            verdict: self.verdict.clone(),
        }
    }
}

/// Pairs `(map(g), g)` for the generators of `source`, verified.
pub(crate) fn embedding(
    source: Arc<Monoid>,
    target: Arc<dyn Carrier>,
    map: impl Fn(&[u8]) -> Result<Key>,
    steps: Vec<Step>,
    limit: usize,
) -> Result<DivisionWitness> {
    let pairs = source
        .generators()
        .into_iter()
        .map(|g| Ok((map(source.key(g))?, source.key(g).to_vec())))
        .collect::<Result<Vec<_>>>()?;
    DivisionWitness::new(source, target, pairs, steps).verify(limit)
}

/// `S ≺ U` from `S ≺ T` and a verified `T ≺ U`: each pair `(t, s)` becomes
/// `(u, s)` with `u` the least preimage of `t`.
pub fn compose(first: &DivisionWitness, second: &DivisionWitness, limit: usize) -> Result<DivisionWitness> {
    let closure = second
        .closure
        .as_ref()
        .ok_or_else(|| Error::Precondition("the second witness of a composition must be verified".into()))?;
    let pairs = first
        .pairs
        .iter()
        .map(|(t, s)| {
            let ti = second.source.index_of(t).ok_or_else(|| Error::PreimageMissing(hex::encode(t)))?;
            Ok((closure.least_preimage(ti).to_vec(), s.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut steps = first.steps.clone();
    steps.extend(second.steps.iter().cloned());
    steps.push(Step::Compose { first: first.describe(), second: second.describe() });
    DivisionWitness::new(first.source.clone(), second.target.clone(), pairs, steps).verify(limit)
}

/// Serialized witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub source: MonoidSpec,
    pub target: CarrierSpec,
    pub pairs: Vec<[String; 2]>,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl Certificate {
    /// Rebuilds the witness, unverified.
    pub fn witness(&self) -> Result<DivisionWitness> {
        let pairs = self
            .pairs
            .iter()
            .map(|[t, s]| Ok((hex::decode(t)?, hex::decode(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisionWitness::new(self.source.build()?, self.target.build()?, pairs, self.steps.clone()))
    }

    /// Re-verifies from scratch and checks the recorded verdict.
    pub fn verify(&self, limit: usize) -> Result<DivisionWitness> {
        let w = self.witness()?.verify(limit)?;
        if let Verdict::Verified { closure_size } = self.verdict {
            let found = w.closure_size()?;
            if found != closure_size {
                return Err(Error::Precondition(format!(
                    "recorded closure size {closure_size}, recomputed {found}"
                )));
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_group, u1};

    #[test]
    fn identity_witness_traces_the_source() {
        let s = Arc::new(cyclic_group(4));
        let w = identity_witness(&s, DEFAULT_CLOSURE_LIMIT).unwrap();
        assert_eq!(w.closure_size().unwrap(), 4);
        let w2 = compose(&w, &w, DEFAULT_CLOSURE_LIMIT).unwrap();
        assert_eq!(w2.closure_size().unwrap(), 4);
    }

    #[test]
    fn group_into_trivial_monoid_is_not_functional() {
        let c2 = Arc::new(cyclic_group(2));
        let trivial: Arc<dyn Carrier> = Arc::new(cyclic_group(1));
        let w = DivisionWitness::new(c2.clone(), trivial.clone(), vec![(trivial.identity(), c2.key(1).to_vec())], vec![]);
        assert!(matches!(w.verify(100), Err(Error::NotFunctional { .. })));
    }

    #[test]
    fn missing_sources_are_reported() {
        let c2 = Arc::new(cyclic_group(2));
        let target: Arc<dyn Carrier> = c2.clone();
        let w = DivisionWitness::new(c2, target, vec![], vec![]);
        assert!(matches!(w.verify(100), Err(Error::NotSurjective { missing: 1, .. })));
    }

    #[test]
    fn compose_requires_a_verified_second_witness() {
        let u = Arc::new(u1());
        let w = identity_witness(&u, 100).unwrap();
        let raw = DivisionWitness::new(u.clone(), u.clone(), vec![], vec![]);
        assert!(matches!(compose(&w, &raw, 100), Err(Error::Precondition(_))));
    }

    #[test]
    fn certificates_roundtrip() {
        let u = Arc::new(u1());
        let w = identity_witness(&u, 100).unwrap();
        let cert = w.certificate();
        let back = Certificate::from_json(&cert.to_json().unwrap()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.verify(100).unwrap().closure_size().unwrap(), 2);
    }
}
