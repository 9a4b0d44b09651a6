//! The named monoids: triangular matrix semigroups, their unit groups and
//! projective quotients, affine transformation monoids, constants monoids,
//! augmented monoids and `U_1`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::carrier::{encode_u32s, Carrier, ConstantsCarrier, Key, MatrixCarrier, TransformationCarrier};
use crate::error::{Error, Result};
use crate::monoid::{quotient_by_central_units, Monoid};
use crate::semiring::SemiringTable;
use crate::trimat::{index_vector, AffineMap, Linear, TriMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    T,
    UT,
    PT,
    TStar,
    UTStar,
    PTStar,
    A,
    AT,
    AS,
    AStar,
    ATStar,
    ASStar,
    Xtilde,
    U1,
    Augmented,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 15] = [
        FamilyKind::T,
        FamilyKind::UT,
        FamilyKind::PT,
        FamilyKind::TStar,
        FamilyKind::UTStar,
        FamilyKind::PTStar,
        FamilyKind::A,
        FamilyKind::AT,
        FamilyKind::AS,
        FamilyKind::AStar,
        FamilyKind::ATStar,
        FamilyKind::ASStar,
        FamilyKind::Xtilde,
        FamilyKind::U1,
        FamilyKind::Augmented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::T => "T",
            FamilyKind::UT => "UT",
            FamilyKind::PT => "PT",
            FamilyKind::TStar => "T*",
            FamilyKind::UTStar => "UT*",
            FamilyKind::PTStar => "PT*",
            FamilyKind::A => "A",
            FamilyKind::AT => "AT",
            FamilyKind::AS => "AS",
            FamilyKind::AStar => "A*",
            FamilyKind::ATStar => "AT*",
            FamilyKind::ASStar => "AS*",
            FamilyKind::Xtilde => "Xtilde",
            FamilyKind::U1 => "U1",
            FamilyKind::Augmented => "augmented",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown family kind {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub ring: Arc<SemiringTable>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: usize, ring: &Arc<SemiringTable>) -> Self {
        FamilySpec { kind, n, ring: ring.clone() }
    }
}

fn label(kind: &str, n: usize, ring: &SemiringTable) -> String {
    format!("{kind}_{n}({})", ring.label())
}

fn check_count(count: u128, limit: usize) -> Result<()> {
    if count > limit as u128 {
        return Err(Error::SizeLimitExceeded { limit: limit as u64 });
    }
    Ok(())
}

pub fn build_family(spec: &FamilySpec, limit: usize) -> Result<Monoid> {
    let (n, r) = (spec.n, &spec.ring);
    match spec.kind {
        FamilyKind::T => triangular(r, n, &r.elements().collect::<Vec<_>>(), limit, "T"),
        FamilyKind::UT => triangular(r, n, &sorted(&[r.zero(), r.one()]), limit, "UT"),
        FamilyKind::TStar => triangular(r, n, &r.units(), limit, "T*"),
        FamilyKind::UTStar => triangular(r, n, &[r.one()], limit, "UT*"),
        FamilyKind::PT => projective(r, n, &r.elements().collect::<Vec<_>>(), limit, "PT"),
        FamilyKind::PTStar => projective(r, n, &r.units(), limit, "PT*"),
        FamilyKind::A => affine(r, n, AffineShape::Dense, false, limit),
        FamilyKind::AT => affine(r, n, AffineShape::Triangular, false, limit),
        FamilyKind::AS => affine(r, n, AffineShape::Scaling, false, limit),
        FamilyKind::AStar => affine(r, n, AffineShape::Dense, true, limit),
        FamilyKind::ATStar => affine(r, n, AffineShape::Triangular, true, limit),
        FamilyKind::ASStar => affine(r, n, AffineShape::Scaling, true, limit),
        FamilyKind::Xtilde => {
            let points = (r.size() as u128).pow(n as u32);
            check_count(points + 1, limit)?;
            Ok(constants_monoid(points as usize)?.with_label(&format!("~({}^{n})", r.label())))
        }
        FamilyKind::U1 => Ok(u1()),
        FamilyKind::Augmented => {
            let group = Arc::new(affine(r, n, AffineShape::Scaling, true, limit)?);
            augmented_monoid(&group, &Action::from_transformations(&group)?, limit)
        }
    }
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Upper triangular matrices with diagonal entries from `diag`, in
/// lexicographic order of the entries on and above the diagonal (row-major,
/// first entry most significant, entries in index order).
fn triangular(r: &Arc<SemiringTable>, n: usize, diag: &[usize], limit: usize, kind: &str) -> Result<Monoid> {
    let off = n * n.saturating_sub(1) / 2;
    check_count((diag.len() as u128).pow(n as u32) * (r.size() as u128).pow(off as u32), limit)?;
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let choices: Vec<Vec<usize>> =
        positions.iter().map(|&(i, j)| if i == j { diag.to_vec() } else { r.elements().collect() }).collect();
    let mut digits = vec![0usize; positions.len()];
    let mut elements: Vec<Key> = Vec::new();
    loop {
        let mut key = vec![r.zero() as u8; n * n];
        for (p, &(i, j)) in positions.iter().enumerate() {
            key[i * n + j] = choices[p][digits[p]] as u8;
        }
        elements.push(key);
        let mut pos = positions.len();
        loop {
            if pos == 0 {
                let universe: Arc<dyn Carrier> = Arc::new(MatrixCarrier::new(r.clone(), n));
                let id = TriMatrix::identity(r, n).key();
                return Ok(Monoid::from_elements(universe, elements, &id, None, &label(kind, n, r))?
                    .with_provenance(&format!("enumeration of {}", label(kind, n, r))));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < choices[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Nonzero scalar matrices `λI`, as indices of `m`.
pub fn scalar_subgroup(m: &Monoid, r: &Arc<SemiringTable>, n: usize) -> Vec<usize> {
    r.units()
        .iter()
        .filter_map(|&l| m.index_of(&TriMatrix::diagonal(r, &vec![l; n]).key()))
        .collect()
}

fn projective(r: &Arc<SemiringTable>, n: usize, diag: &[usize], limit: usize, kind: &str) -> Result<Monoid> {
    if !r.is_field() {
        return Err(Error::FieldRequired);
    }
    let base_kind = if kind == "PT" { "T" } else { "T*" };
    let m = Arc::new(triangular(r, n, diag, limit, base_kind)?);
    let z = scalar_subgroup(&m, r, n);
    let (q, _) = quotient_by_central_units(&m, &z, &label(kind, n, r))?;
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AffineShape {
    Dense,
    Triangular,
    Scaling,
}

/// All affine maps of the given shape, as pairs, in lexicographic order of
/// (linear part entries, translation).
fn affine_maps(r: &Arc<SemiringTable>, dim: usize, shape: AffineShape, limit: usize) -> Result<Vec<AffineMap>> {
    let q = r.size();
    let linear_count = match shape {
        AffineShape::Dense => (q as u128).pow((dim * dim) as u32),
        AffineShape::Triangular => (q as u128).pow((dim * (dim + 1) / 2) as u32),
        AffineShape::Scaling => q as u128,
    };
    let translations = (q as u128).pow(dim as u32);
    check_count(linear_count * translations, limit)?;
    let points = q.pow(dim as u32);
    let mut maps = Vec::new();
    for lin in 0..linear_count as usize {
        let linear = match shape {
            AffineShape::Scaling => Linear::Scaling(lin),
            AffineShape::Dense => {
                let digits = index_vector(q, dim * dim, lin);
                Linear::Dense(digits.chunks(dim.max(1)).map(|c| c.to_vec()).collect())
            }
            AffineShape::Triangular => {
                let digits = index_vector(q, dim * (dim + 1) / 2, lin);
                let mut rows = vec![vec![r.zero(); dim]; dim];
                let mut d = digits.into_iter();
                for (i, row) in rows.iter_mut().enumerate() {
                    for x in row.iter_mut().skip(i) {
                        *x = d.next().expect("enough digits");
                    }
                }
                Linear::Triangular(TriMatrix::from_rows(r, &rows)?)
            }
        };
        for c in 0..points {
            maps.push(AffineMap { dim, linear: linear.clone(), offset: index_vector(q, dim, c), ring: r.clone() });
        }
    }
    Ok(maps)
}

/// Invertible scaling maps `v ↦ vλ + c` with `λ` a unit, as pairs.
pub fn affine_scaling_units(r: &Arc<SemiringTable>, dim: usize) -> Vec<AffineMap> {
    let points = r.size().pow(dim as u32);
    r.units()
        .into_iter()
        .flat_map(|l| (0..points).map(move |c| (l, c)))
        .map(|(l, c)| AffineMap::scaling(r, l, index_vector(r.size(), dim, c)))
        .collect()
}

fn is_bijective(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
}

/// Affine monoids are transformation monoids on `R^dim`: distinct pairs
/// inducing the same map are one element.
fn affine(r: &Arc<SemiringTable>, dim: usize, shape: AffineShape, units: bool, limit: usize) -> Result<Monoid> {
    let mut elements: Vec<Key> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for f in affine_maps(r, dim, shape, limit)? {
        let images = f.transformation();
        if units && !is_bijective(&images) {
            continue;
        }
        let key = encode_u32s(&images);
        if seen.insert(key.clone()) {
            elements.push(key);
        }
    }
    let points = r.size().pow(dim as u32);
    let universe = Arc::new(TransformationCarrier::new(points));
    let kind = match (shape, units) {
        (AffineShape::Dense, false) => "A",
        (AffineShape::Triangular, false) => "AT",
        (AffineShape::Scaling, false) => "AS",
        (AffineShape::Dense, true) => "A*",
        (AffineShape::Triangular, true) => "AT*",
        (AffineShape::Scaling, true) => "AS*",
    };
    let id = universe.identity();
    Ok(Monoid::from_elements(universe, elements, &id, None, &label(kind, dim, r))?
        .with_provenance(&format!("affine maps on {}^{dim}", r.label())))
}

/// `X̃` for a set of `points` elements, abstractly.
pub fn constants_monoid(points: usize) -> Result<Monoid> {
    if points == 0 {
        return Err(Error::Precondition("the constants monoid needs a non-empty set".into()));
    }
    let c = Arc::new(ConstantsCarrier::new(points));
    let mut elements = vec![c.identity()];
    elements.extend((0..points).map(|x| c.constant(x)));
    let id = c.identity();
    let m = Monoid::from_elements(c, elements, &id, None, &format!("~{points}"))?.with_provenance("constants monoid");
    debug_assert!(m.is_aperiodic());
    Ok(m)
}

/// The two-element semilattice `{1, e}`.
pub fn u1() -> Monoid {
    Monoid::from_table("U_1", &[vec![0, 1], vec![1, 1]], 0).expect("U_1 is a monoid").with_provenance("U_1")
}

/// The cyclic group of order `n` (`n ≥ 1`).
pub fn cyclic_group(n: usize) -> Monoid {
    let table: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect()).collect();
    Monoid::from_table(&format!("C_{n}"), &table, 0).expect("cyclic group").with_provenance("cyclic group")
}

/// A right action of a monoid on `{0, .., points-1}`: `maps[a][x] = x·a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    pub points: usize,
    pub maps: Vec<Vec<u32>>,
}

impl Action {
    /// The defining action of a monoid of transformations.
    pub fn from_transformations(m: &Monoid) -> Result<Action> {
        let points = m.keys().first().map_or(0, |k| k.len() / 4);
        let t = TransformationCarrier::new(points);
        let maps = m.keys().iter().map(|k| t.decode(k)).collect::<Result<Vec<_>>>()?;
        Ok(Action { points, maps })
    }

    /// The action of the trivial monoid on a set.
    pub fn trivial(points: usize) -> Action {
        Action { points, maps: vec![(0..points as u32).collect()] }
    }

    pub fn check(&self, m: &Monoid) -> Result<()> {
        if self.maps.len() != m.len() || self.maps.iter().any(|f| f.len() != self.points) {
            return Err(Error::Precondition("action does not match the monoid".into()));
        }
        for a in 0..m.len() {
            for b in 0..a {
                if self.maps[a] == self.maps[b] {
                    return Err(Error::ActionNotFaithful(b, a));
                }
            }
            for b in 0..m.len() {
                let ab = m.mul_idx(a, b);
                let composed: Vec<u32> = self.maps[a].iter().map(|&x| self.maps[b][x as usize]).collect();
                if composed != self.maps[ab] {
                    return Err(Error::Precondition(format!("not a right action at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }
}

/// `Ā`: the closure of `A` and all constant maps inside the full
/// transformation monoid on the acted-upon set.
pub fn augmented_monoid(a: &Arc<Monoid>, action: &Action, limit: usize) -> Result<Monoid> {
    action.check(a)?;
    let t = Arc::new(TransformationCarrier::new(action.points));
    let mut gens: Vec<Key> = action.maps.iter().map(|f| encode_u32s(f)).collect();
    gens.extend((0..action.points as u32).map(|x| t.constant(x)));
    Ok(Monoid::close(t, &gens, limit, &format!("aug({})", a.label()))?.with_provenance("augmented monoid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::DEFAULT_LIMIT;

    fn ring(p: u32) -> Arc<SemiringTable> {
        Arc::new(SemiringTable::prime_field(p).unwrap())
    }

    fn build(kind: FamilyKind, n: usize, r: &Arc<SemiringTable>) -> Monoid {
        build_family(&FamilySpec::new(kind, n, r), DEFAULT_LIMIT).unwrap()
    }

    #[test]
    fn family_orders() {
        let z2 = ring(2);
        let z3 = ring(3);
        assert_eq!(build(FamilyKind::T, 2, &z2).len(), 8);
        assert_eq!(build(FamilyKind::T, 2, &z3).len(), 27);
        assert_eq!(build(FamilyKind::UT, 3, &z2).len(), 64);
        assert_eq!(build(FamilyKind::AS, 1, &z2).len(), 4);
        let as1 = build(FamilyKind::ASStar, 1, &z3);
        assert_eq!(as1.len(), 6);
        assert!(!as1.is_commutative());
        assert_eq!(build(FamilyKind::PT, 1, &z3).len(), 2);
        assert_eq!(build(FamilyKind::PT, 2, &z3).len(), 14);
        assert_eq!(build(FamilyKind::PTStar, 2, &z3).len(), 6);
        assert_eq!(build(FamilyKind::TStar, 2, &z3).len(), 12);
    }

    #[test]
    fn triangular_enumeration_starts_at_zero() {
        let z2 = ring(2);
        let t = build(FamilyKind::T, 2, &z2);
        assert_eq!(t.key(0), &[0, 0, 0, 0]);
        assert_eq!(t.key(7), &[1, 1, 0, 1]);
    }

    #[test]
    fn projective_needs_a_field() {
        let b = Arc::new(SemiringTable::boolean());
        assert!(matches!(
            build_family(&FamilySpec::new(FamilyKind::PT, 2, &b), 100),
            Err(Error::FieldRequired)
        ));
    }

    #[test]
    fn constants_and_u1() {
        assert_eq!(constants_monoid(1).unwrap().len(), 2);
        let x2 = constants_monoid(2).unwrap();
        assert_eq!(x2.len(), 3);
        assert!(x2.is_aperiodic());
        assert_eq!(constants_monoid(4).unwrap().len(), 5);
        let u = u1();
        assert_eq!(u.len(), 2);
        assert_eq!(u.mul_idx(1, 1), 1);
        assert!(u.is_aperiodic());
    }

    #[test]
    fn augmented_monoids() {
        let z2 = ring(2);
        let g = Arc::new(build(FamilyKind::ASStar, 1, &z2));
        assert_eq!(augmented_monoid(&g, &Action::from_transformations(&g).unwrap(), 100).unwrap().len(), 4);
        let z3 = ring(3);
        let g = Arc::new(build(FamilyKind::ASStar, 1, &z3));
        assert_eq!(augmented_monoid(&g, &Action::from_transformations(&g).unwrap(), 100).unwrap().len(), 9);
        let trivial = Arc::new(cyclic_group(1));
        assert_eq!(augmented_monoid(&trivial, &Action::trivial(2), 100).unwrap().len(), 3);
    }

    #[test]
    fn unfaithful_actions_are_rejected() {
        let c2 = Arc::new(cyclic_group(2));
        let action = Action { points: 2, maps: vec![vec![0, 1], vec![0, 1]] };
        assert!(matches!(augmented_monoid(&c2, &action, 100), Err(Error::ActionNotFaithful(0, 1))));
    }

    #[test]
    fn limits_are_enforced() {
        let z3 = ring(3);
        assert!(matches!(
            build_family(&FamilySpec::new(FamilyKind::T, 3, &z3), 100),
            Err(Error::SizeLimitExceeded { limit: 100 })
        ));
    }
}
