//! The ring and field decomposition chains for `T_n`.

use std::sync::Arc;

use serde::Serialize;

use super::induction::induction_step;
use crate::error::{Error, Result};
use crate::families::{build_family, constants_monoid, u1, Action, FamilyKind, FamilySpec};
use crate::monoid::{direct_product, Monoid};
use crate::semiring::SemiringTable;
use crate::witness::{
    absorb_on, affine_embedding, augmentation_for, compose, group_with_zero, lift_left_on, lift_left_times,
    lift_right_on, product_witness, times_to_wreath, Certificate, DivisionWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Group,
    Aperiodic,
    Mixed,
}

impl Tag {
    /// The trivial monoid counts as aperiodic.
    pub fn of(m: &Monoid) -> Tag {
        if m.is_aperiodic() {
            Tag::Aperiodic
        } else if m.is_group() {
            Tag::Group
        } else {
            Tag::Mixed
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tag::Group => "group",
            Tag::Aperiodic => "aperiodic",
            Tag::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Term {
    pub monoid: Arc<Monoid>,
    pub tag: Tag,
}

impl Term {
    fn new(monoid: Arc<Monoid>) -> Term {
        Term { tag: Tag::of(&monoid), monoid }
    }
}

#[derive(Debug, Clone)]
pub struct NamedWitness {
    pub name: String,
    pub witness: DivisionWitness,
}

#[derive(Debug, Clone)]
pub struct DecompositionPlan {
    pub pipeline: String,
    pub n: usize,
    pub ring: String,
    /// Outermost first.
    pub terms: Vec<Term>,
    /// Group terms after merging adjacent terms with the same tag; `None`
    /// when some term is neither a group nor aperiodic.
    pub group_length: Option<usize>,
    pub witnesses: Vec<NamedWitness>,
    pub composite: Option<DivisionWitness>,
}

#[derive(Debug, Serialize)]
pub struct TermRecord {
    pub label: String,
    pub tag: Tag,
    pub order: usize,
}

#[derive(Debug, Serialize)]
pub struct PlanSummary {
    pub group_length: Option<usize>,
    pub composite_verified: bool,
    pub composite_closure: Option<usize>,
    pub witnesses_verified: usize,
}

#[derive(Debug, Serialize)]
pub struct PlanRecord {
    pub pipeline: String,
    pub n: usize,
    pub ring: String,
    pub terms: Vec<TermRecord>,
    pub witnesses: Vec<(String, Certificate)>,
    pub composite: Option<Certificate>,
    pub summary: PlanSummary,
}

/// Number of maximal runs of group terms, or `None` if a term is mixed.
pub fn group_length(terms: &[Term]) -> Option<usize> {
    if terms.iter().any(|t| t.tag == Tag::Mixed) {
        return None;
    }
    let mut runs = 0;
    let mut previous = None;
    for t in terms {
        if t.tag == Tag::Group && previous != Some(Tag::Group) {
            runs += 1;
        }
        previous = Some(t.tag);
    }
    Some(runs)
}

impl DecompositionPlan {
    fn push(&mut self, name: String, witness: &DivisionWitness) {
        self.witnesses.push(NamedWitness { name, witness: witness.clone() });
    }

    pub fn all_verified(&self) -> bool {
        self.witnesses.iter().all(|w| w.witness.is_verified())
            && self.composite.as_ref().is_none_or(|c| c.is_verified())
    }

    pub fn record(&self) -> PlanRecord {
        PlanRecord {
            pipeline: self.pipeline.clone(),
            n: self.n,
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TermRecord { label: t.monoid.label().to_string(), tag: t.tag, order: t.monoid.len() })
                .collect(),
            witnesses: self.witnesses.iter().map(|w| (w.name.clone(), w.witness.certificate())).collect(),
            composite: self.composite.as_ref().map(|c| c.certificate()),
            summary: PlanSummary {
                group_length: self.group_length,
                composite_verified: self.composite.as_ref().is_some_and(|c| c.is_verified()),
                composite_closure: self.composite.as_ref().and_then(|c| c.closure_size().ok()),
                witnesses_verified: self.witnesses.iter().filter(|w| w.witness.is_verified()).count(),
            },
        }
    }
}

/// A wreath product `top ≀ base` reached by the chain, where `base` is
/// either a power of `T_1` or the traced image of a deeper level.
struct Stage {
    top: Arc<Monoid>,
    base: Arc<Monoid>,
    inner: Option<Box<Stage>>,
}

struct Chain<'a> {
    ring: &'a Arc<SemiringTable>,
    corner: Arc<Monoid>,
    limit: usize,
    plan: &'a mut DecompositionPlan,
}

impl Chain<'_> {
    fn family(&self, kind: FamilyKind, n: usize) -> Result<Arc<Monoid>> {
        Ok(Arc::new(build_family(&FamilySpec::new(kind, n, self.ring), self.limit)?))
    }

    /// `source ≺ top ≀ (base × T_1)`, pushing a trailing `T_1` factor down
    /// to the innermost level. `source` has keys `(element of stage, T_1)`.
    fn push(&mut self, source: &Arc<Monoid>, stage: &Stage, level: usize) -> Result<(DivisionWitness, Stage)> {
        let bc = Arc::new(direct_product(&stage.base, &self.corner));
        let absorbed = absorb_on(source, &stage.top, &stage.base, &self.corner, &bc, self.limit)?;
        self.plan.push(format!("push {level}: absorb"), &absorbed);
        let Some(inner) = &stage.inner else {
            let next = Stage { top: stage.top.clone(), base: bc, inner: None };
            return Ok((absorbed, next));
        };
        let (deeper, inner_next) = self.push(&bc, inner, level + 1)?;
        let lifted = lift_left_on(&absorbed.image_monoid()?, &deeper, &stage.top, self.limit)?;
        self.plan.push(format!("push {level}: lift_left"), &lifted);
        let w = compose(&absorbed, &lifted, self.limit)?;
        let next = Stage { top: stage.top.clone(), base: deeper.image_monoid()?, inner: Some(Box::new(inner_next)) };
        Ok((w, next))
    }

    fn run(&mut self, n: usize) -> Result<(DivisionWitness, Stage)> {
        let psi = induction_step(2, self.ring, self.limit)?;
        self.plan.push("induction 2".into(), &psi);
        let top = self.family(FamilyKind::AS, 1)?;
        let bc = Arc::new(direct_product(&self.corner, &self.corner));
        let absorbed = absorb_on(&psi.image_monoid()?, &top, &self.corner, &self.corner, &bc, self.limit)?;
        self.plan.push("absorb 2".into(), &absorbed);
        let mut w = compose(&psi, &absorbed, self.limit)?;
        self.plan.push("level 2".into(), &w);
        let mut stage = Stage { top, base: bc, inner: None };
        for m in 3..=n {
            let psi = induction_step(m, self.ring, self.limit)?;
            self.plan.push(format!("induction {m}"), &psi);
            let top = self.family(FamilyKind::AS, m - 1)?;
            let lifted = lift_left_times(&psi.image_monoid()?, &w, &top, &self.corner, self.limit)?;
            self.plan.push(format!("lift {m}"), &lifted);
            let image = w.image_monoid()?;
            let bc = Arc::new(direct_product(&image, &self.corner));
            let absorbed = absorb_on(&lifted.image_monoid()?, &top, &image, &self.corner, &bc, self.limit)?;
            self.plan.push(format!("absorb {m}"), &absorbed);
            let (pushed, inner) = self.push(&bc, &stage, 1)?;
            let relifted = lift_left_on(&absorbed.image_monoid()?, &pushed, &top, self.limit)?;
            self.plan.push(format!("relift {m}"), &relifted);
            let chain = compose(&compose(&compose(&psi, &lifted, self.limit)?, &absorbed, self.limit)?, &relifted, self.limit)?;
            self.plan.push(format!("level {m}"), &chain);
            w = chain;
            stage = Stage { top, base: pushed.image_monoid()?, inner: Some(Box::new(inner)) };
        }
        Ok((w, stage))
    }
}

fn power(m: &Arc<Monoid>, k: usize) -> Arc<Monoid> {
    let mut p = m.clone();
    for _ in 1..k {
        p = Arc::new(direct_product(&p, m));
    }
    p
}

fn ring_chain(n: usize, ring: &Arc<SemiringTable>, limit: usize, name: &str) -> Result<(DecompositionPlan, Stage)> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut plan = DecompositionPlan {
        pipeline: name.into(),
        n,
        ring: ring.label().to_string(),
        terms: Vec::new(),
        group_length: None,
        witnesses: Vec::new(),
        composite: None,
    };
    let corner = Arc::new(build_family(&FamilySpec::new(FamilyKind::T, 1, ring), limit)?);
    let (w, stage) = Chain { ring, corner: corner.clone(), limit, plan: &mut plan }.run(n)?;
    plan.composite = Some(w);
    Ok((plan, stage))
}

/// `T_n(R) ≺ AS_{n-1}(R) ≀ (AS_{n-2}(R) ≀ ⋯ ≀ (AS_1(R) ≀ T_1(R)^n))`, each
/// level over the traced image of the level below it.
pub fn ring_pipeline(n: usize, ring: &Arc<SemiringTable>, limit: usize) -> Result<DecompositionPlan> {
    let (mut plan, _) = ring_chain(n, ring, limit, "ring")?;
    let mut terms = Vec::new();
    for i in (1..n).rev() {
        terms.push(Term::new(Arc::new(build_family(&FamilySpec::new(FamilyKind::AS, i, ring), limit)?)));
    }
    let corner = Arc::new(build_family(&FamilySpec::new(FamilyKind::T, 1, ring), limit)?);
    terms.push(Term::new(power(&corner, n)));
    plan.group_length = group_length(&terms);
    plan.terms = terms;
    Ok(plan)
}

/// The field refinement: every `AS_i(k)` is replaced by `k̃^i ≀ AS*_i(k)`
/// and `T_1(k)^n` by `(T_1*(k) × U_1)^n`, giving an alternating chain of
/// `n - 1` group terms.
pub fn field_pipeline(n: usize, k: &Arc<SemiringTable>, limit: usize) -> Result<DecompositionPlan> {
    if !k.is_field() {
        return Err(Error::FieldRequired);
    }
    let (mut plan, stage) = ring_chain(n, k, limit, "field")?;
    let ring_composite = plan.composite.take().expect("ring chain sets a composite");
    let family = |kind, i| build_family(&FamilySpec::new(kind, i, k), limit).map(Arc::new);

    let mut augmentations = Vec::new();
    for i in 1..n {
        let scaling = family(FamilyKind::AS, i)?;
        let units = family(FamilyKind::ASStar, i)?;
        let w = augmentation_for(&scaling, &units, &Action::from_transformations(&units)?, limit)?;
        plan.push(format!("augmentation {i}"), &w);
        augmentations.push(w);
    }
    let top = augmentations.last().expect("n ≥ 2");
    let lifted = lift_right_on(&ring_composite.image_monoid()?, top, &stage.base, limit)?;
    plan.push("augment top".into(), &lifted);
    let composite = compose(&ring_composite, &lifted, limit)?;

    let gwz = group_with_zero(k, limit)?;
    let mut corner = gwz.clone();
    for _ in 1..n {
        corner = product_witness(&corner, &gwz, limit)?;
    }
    plan.push(format!("group with zero ^{n}"), &corner);

    let units1 = family(FamilyKind::ASStar, 1)?;
    let t1_units = family(FamilyKind::TStar, 1)?;
    let group_term = Arc::new(direct_product(&units1, &power(&t1_units, n)));
    let semilattice = power(&Arc::new(u1()), n);
    let innermost = times_to_wreath(&group_term, &semilattice, limit)?;
    plan.push("times to wreath".into(), &innermost);

    for m in 1..n {
        plan.push(format!("AS*_{m} in T*_{n}"), &affine_embedding(k, m, n, limit)?);
    }

    let mut terms = Vec::new();
    for i in (1..n).rev() {
        let points = k.size().pow(i as u32);
        terms.push(Term::new(Arc::new(constants_monoid(points)?.with_label(&format!("~({}^{i})", k.label())))));
        if i > 1 {
            terms.push(Term::new(family(FamilyKind::ASStar, i)?));
        }
    }
    terms.push(Term::new(group_term));
    terms.push(Term::new(semilattice));
    plan.group_length = group_length(&terms);
    plan.terms = terms;
    plan.composite = Some(composite);
    Ok(plan)
}
