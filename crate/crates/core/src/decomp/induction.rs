//! The induction homomorphism `T_n(R) ≺ [AS_{n-1}(R) ≀ T_{n-1}(R)] × T_1(R)`.
//!
//! Writing `s = (M v; 0 c)` with `M` of size `n-1`, `s` goes to
//! `((f_s, M), c)` where `f_s` sends `X ∈ T_{n-1}(R)` to the scaling map
//! `w ↦ wc + (Xv)ᵀ` of `R^{n-1}`.

use std::sync::Arc;

use crate::carrier::{encode_tuple, encode_u32s, Carrier, Key, ProductCarrier};
use crate::error::{Error, Result};
use crate::families::{build_family, FamilyKind, FamilySpec};
use crate::monoid::Monoid;
use crate::semiring::SemiringTable;
use crate::trimat::{AffineMap, TriMatrix};
use crate::witness::{DivisionWitness, Step};
use crate::wreath::{WreathContext, WreathElement};

/// The monoids involved in one induction step.
pub struct InductionMap {
    pub n: usize,
    pub ring: Arc<SemiringTable>,
    pub source: Arc<Monoid>,
    pub scaling: Arc<Monoid>,
    pub lower: Arc<Monoid>,
    pub corner: Arc<Monoid>,
    pub context: Arc<WreathContext>,
    lower_matrices: Vec<TriMatrix>,
}

/// `ψ(s)` before encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionImage {
    /// `f_s(X)` for `X` in the canonical order of `T_{n-1}(R)`.
    pub table: Vec<AffineMap>,
    pub m: TriMatrix,
    pub c: usize,
}

impl InductionMap {
    pub fn new(n: usize, ring: &Arc<SemiringTable>, limit: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let family = |kind, k| build_family(&FamilySpec::new(kind, k, ring), limit).map(Arc::new);
        let source = family(FamilyKind::T, n)?;
        let scaling = family(FamilyKind::AS, n - 1)?;
        let lower = family(FamilyKind::T, n - 1)?;
        let corner = family(FamilyKind::T, 1)?;
        let lower_matrices = lower
            .keys()
            .iter()
            .map(|k| TriMatrix::from_key(ring, n - 1, k))
            .collect::<Result<Vec<_>>>()?;
        let context = Arc::new(WreathContext::new(scaling.clone(), lower.clone()));
        Ok(InductionMap { n, ring: ring.clone(), source, scaling, lower, corner, context, lower_matrices })
    }

    pub fn image(&self, s: &TriMatrix) -> Result<InductionImage> {
        let parts = s.block_decompose()?;
        let r = &self.ring;
        let table = self
            .lower_matrices
            .iter()
            .map(|x| {
                let offset = (0..self.n - 1)
                    .map(|i| (0..self.n - 1).fold(r.zero(), |acc, j| r.add(acc, r.mul(x.get(i, j), parts.v[j]))))
                    .collect();
                AffineMap::scaling(r, parts.c, offset)
            })
            .collect();
        Ok(InductionImage { table, m: parts.m, c: parts.c })
    }

    /// The key of `ψ(s)` in `(AS_{n-1} ≀ T_{n-1}) × T_1`.
    pub fn encode(&self, image: &InductionImage) -> Result<Key> {
        let table = image
            .table
            .iter()
            .map(|f| self.scaling.require(&encode_u32s(&f.transformation())).map(|i| i as u32))
            .collect::<Result<Vec<_>>>()?;
        let base = self.lower.require(&image.m.key())? as u32;
        let wreath = self.context.encode(&WreathElement { table, base });
        Ok(encode_tuple(&[wreath, vec![image.c as u8]]))
    }

    pub fn target(&self) -> Arc<dyn Carrier> {
        Arc::new(ProductCarrier::new(vec![self.context.clone(), self.corner.clone()]))
    }
}

/// The verified induction witness, with pairs `(ψ(s), s)` for every `s`.
/// It must trace exactly `|T_n(R)|` elements, i.e. `ψ` is injective.
pub fn induction_step(n: usize, ring: &Arc<SemiringTable>, limit: usize) -> Result<DivisionWitness> {
    let psi = InductionMap::new(n, ring, limit)?;
    let pairs = psi
        .source
        .keys()
        .iter()
        .map(|k| {
            let s = TriMatrix::from_key(ring, n, k)?;
            Ok((psi.encode(&psi.image(&s)?)?, k.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let step = Step::construction("induction", format!("T_{n}({})", ring.label()));
    DivisionWitness::new(psi.source.clone(), psi.target(), pairs, vec![step]).verify(limit)?.require_injective()
}
