//! Standard divisions, each built as explicit generator pairs and then
//! checked by the verifier.

use std::collections::HashMap;
use std::sync::Arc;

use super::{embedding, DivisionWitness, Step};
use crate::carrier::{decode_tuple, encode_tuple, encode_u32s, Carrier, Key, MatrixCarrier, ProductCarrier};
use crate::error::{Error, Result};
use crate::families::{affine_scaling_units, augmented_monoid, build_family, constants_monoid, u1, Action, FamilyKind, FamilySpec};
use crate::monoid::{direct_product, Monoid};
use crate::semiring::SemiringTable;
use crate::trimat::TriMatrix;
use crate::wreath::{enumerate_wreath, restrict_base, WreathContext, WreathElement};

fn pair(a: &[u8], b: &[u8]) -> Key {
    encode_tuple(&[a, b])
}

fn unpair(key: &[u8]) -> Result<(&[u8], &[u8])> {
    let parts = decode_tuple(key, 2)?;
    Ok((parts[0], parts[1]))
}

/// `S ≺ S` through the pairs `(g, g)`.
pub fn identity_witness(s: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    embedding(s.clone(), s.carrier(), |k| Ok(k.to_vec()), vec![Step::construction("identity", s.label())], limit)
}

/// `A × B ≺ A ≀ B` via `(a, b) ↦ (constant a, b)`.
pub fn times_to_wreath(a: &Arc<Monoid>, b: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let source = Arc::new(direct_product(a, b));
    let ctx = Arc::new(WreathContext::new(a.clone(), b.clone()));
    let map = |k: &[u8]| {
        let (x, y) = unpair(k)?;
        Ok(ctx.encode(&ctx.constant(a.require(x)?, b.require(y)?)))
    };
    let step = Step::construction("times_to_wreath", format!("{} × {}", a.label(), b.label()));
    embedding(source, ctx.clone(), map, vec![step], limit)?.require_injective()
}

/// `(A ≀ B) × (C ≀ D) ≺ (A × C) ≀ (B × D)` via
/// `((f, b), (g, d)) ↦ ((b′, d′) ↦ (f(b′), g(d′)), (b, d))`.
pub fn interchange(
    a: &Arc<Monoid>,
    b: &Arc<Monoid>,
    c: &Arc<Monoid>,
    d: &Arc<Monoid>,
    limit: usize,
) -> Result<DivisionWitness> {
    let ab = Arc::new(WreathContext::new(a.clone(), b.clone()));
    let cd = Arc::new(WreathContext::new(c.clone(), d.clone()));
    let left = Arc::new(enumerate_wreath(&ab, limit)?);
    let right = Arc::new(enumerate_wreath(&cd, limit)?);
    if (left.len() as u128) * (right.len() as u128) > limit as u128 {
        return Err(Error::SizeLimitExceeded { limit: limit as u64 });
    }
    let source = Arc::new(direct_product(&left, &right));
    let ac = Arc::new(direct_product(a, c));
    let bd = Arc::new(direct_product(b, d));
    let target = Arc::new(WreathContext::new(ac, bd));
    let (nc, nd) = (c.len() as u32, d.len() as u32);
    let map = |k: &[u8]| {
        let (x, y) = unpair(k)?;
        let (f, g) = (ab.decode(x)?, cd.decode(y)?);
        let table = (0..b.len() * d.len()).map(|t| f.table[t / nd as usize] * nc + g.table[t % nd as usize]).collect();
        Ok(target.encode(&WreathElement { table, base: f.base * nd + g.base }))
    };
    let step = Step::construction("interchange", format!("{} / {} / {} / {}", a.label(), b.label(), c.label(), d.label()));
    embedding(source, target.clone(), map, vec![step], limit)?.require_injective()
}

/// `(A ≀ B) × C ≺ A ≀ (B × C)` via `((f, b), c) ↦ (fα, (b, c))` with
/// `(b′, c′)fα = b′f`.
pub fn absorb(a: &Arc<Monoid>, b: &Arc<Monoid>, c: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let ab = Arc::new(enumerate_wreath(&Arc::new(WreathContext::new(a.clone(), b.clone())), limit)?);
    let source = Arc::new(direct_product(&ab, c));
    let bc = Arc::new(direct_product(b, c));
    absorb_on(&source, a, b, c, &bc, limit)?.require_injective()
}

/// [`absorb`] on a sub-monoid of `(A ≀ B) × C`, given by keys
/// `(wreath key, key of C)`. `bc` must be `direct_product(b, c)`.
pub fn absorb_on(
    source: &Arc<Monoid>,
    a: &Arc<Monoid>,
    b: &Arc<Monoid>,
    c: &Arc<Monoid>,
    bc: &Arc<Monoid>,
    limit: usize,
) -> Result<DivisionWitness> {
    if bc.len() != b.len() * c.len() {
        return Err(Error::ContextMismatch(format!("{} is not {} × {}", bc.label(), b.label(), c.label())));
    }
    let from = WreathContext::new(a.clone(), b.clone());
    let to = Arc::new(WreathContext::new(a.clone(), bc.clone()));
    let first: Vec<usize> =
        bc.keys().iter().map(|k| b.require(unpair(k)?.0)).collect::<Result<_>>()?;
    let map = |k: &[u8]| {
        let (x, y) = unpair(k)?;
        let f = from.decode(x)?;
        let base = bc.require(&pair(b.key(f.base as usize), c.key(c.require(y)?)))?;
        let table = first.iter().map(|&t| f.table[t]).collect();
        Ok(to.encode(&WreathElement { table, base: base as u32 }))
    };
    let step = Step::construction("absorb", format!("[{} ≀ {}] × {}", a.label(), b.label(), c.label()));
    embedding(source.clone(), to.clone(), map, vec![step], limit)
}

/// Rewrites a table over the source of a verified `w` as a table over the
/// traced image of `w`, and a base element by its least preimage.
fn lift_left_element(w: &DivisionWitness, x: &WreathElement) -> Result<WreathElement> {
    let closure = w.closure()?;
    let table = closure.images().iter().map(|&s| x.table[s]).collect();
    Ok(WreathElement { table, base: closure.preimage_position(x.base as usize) as u32 })
}

fn restricted_context(w: &DivisionWitness, c: &Arc<Monoid>) -> Result<(Arc<WreathContext>, Step)> {
    let image = w.image_monoid()?;
    let (ctx, step) = restrict_base(c, w.target(), &image)?;
    Ok((Arc::new(ctx), Step::Restriction(step)))
}

/// `C ≀ A ≺ C ≀ B` for a verified `w: A ≺ B`. The target is `C ≀ B′` with
/// `B′` the traced image of `w`, recorded as a restriction step.
pub fn lift_left(w: &DivisionWitness, c: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let ctx = Arc::new(WreathContext::new(c.clone(), w.source().clone()));
    let source = Arc::new(enumerate_wreath(&ctx, limit)?);
    lift_left_on(&source, w, c, limit)
}

/// [`lift_left`] on a sub-monoid of `C ≀ A`.
pub fn lift_left_on(source: &Arc<Monoid>, w: &DivisionWitness, c: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let from = WreathContext::new(c.clone(), w.source().clone());
    let (to, restriction) = restricted_context(w, c)?;
    let map = |k: &[u8]| Ok(to.encode(&lift_left_element(w, &from.decode(k)?)?));
    let step = Step::construction("lift_left", format!("{} ≀ [{}]", c.label(), w.describe()));
    embedding(source.clone(), to.clone(), map, vec![step, restriction], limit)
}

/// `(C ≀ A) × D ≺ (C ≀ B′) × D` for a verified `w: A ≺ B`, on a sub-monoid
/// of `(C ≀ A) × D` given by keys `(wreath key, key of D)`.
pub fn lift_left_times(
    source: &Arc<Monoid>,
    w: &DivisionWitness,
    c: &Arc<Monoid>,
    d: &Arc<Monoid>,
    limit: usize,
) -> Result<DivisionWitness> {
    let from = WreathContext::new(c.clone(), w.source().clone());
    let (to, restriction) = restricted_context(w, c)?;
    let target: Arc<dyn Carrier> = Arc::new(ProductCarrier::new(vec![to.clone(), d.clone()]));
    let map = |k: &[u8]| {
        let (x, y) = unpair(k)?;
        d.require(y)?;
        Ok(pair(&to.encode(&lift_left_element(w, &from.decode(x)?)?), y))
    };
    let step = Step::construction("lift_left_times", format!("[{} ≀ [{}]] × {}", c.label(), w.describe(), d.label()));
    embedding(source.clone(), target, map, vec![step, restriction], limit)
}

/// `A ≀ C ≺ B ≀ C` for a verified `w: A ≺ B`. The target is `B′ ≀ C` with
/// `B′` the traced image of `w`, a sub-monoid of `B`.
pub fn lift_right(w: &DivisionWitness, c: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let ctx = Arc::new(WreathContext::new(w.source().clone(), c.clone()));
    let source = Arc::new(enumerate_wreath(&ctx, limit)?);
    lift_right_on(&source, w, c, limit)
}

/// [`lift_right`] on a sub-monoid of `A ≀ C`.
pub fn lift_right_on(source: &Arc<Monoid>, w: &DivisionWitness, c: &Arc<Monoid>, limit: usize) -> Result<DivisionWitness> {
    let closure = w.closure()?;
    let from = WreathContext::new(w.source().clone(), c.clone());
    let to = Arc::new(WreathContext::new(closure.image().clone(), c.clone()));
    let map = |k: &[u8]| {
        let x = from.decode(k)?;
        let table = x.table.iter().map(|&a| closure.preimage_position(a as usize) as u32).collect();
        Ok(to.encode(&WreathElement { table, base: x.base }))
    };
    let step = Step::construction("lift_right", format!("[{}] ≀ {}", w.describe(), c.label()));
    embedding(source.clone(), to.clone(), map, vec![step], limit)
}

/// `Ā ≺ X̃ ≀ A` for a monoid acting faithfully on the right of `X`. The
/// pairs are `((1̂, a), a)` for generators `a` and `((h_x, 1), c_x)` with
/// `b h_x = c_{x·b}`.
pub fn augmentation(a: &Arc<Monoid>, action: &Action, limit: usize) -> Result<DivisionWitness> {
    let aug = Arc::new(augmented_monoid(a, action, limit)?);
    augmentation_for(&aug, a, action, limit)
}

/// [`augmentation`] with a prescribed source, which must have the same
/// elements as `Ā` (for instance the affine scaling monoid, which equals
/// the augmented group of its units).
pub fn augmentation_for(source: &Arc<Monoid>, a: &Arc<Monoid>, action: &Action, limit: usize) -> Result<DivisionWitness> {
    let aug = augmented_monoid(a, action, limit)?;
    let mut ours: Vec<&Key> = source.keys().iter().collect();
    let mut theirs: Vec<&Key> = aug.keys().iter().collect();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        return Err(Error::Precondition(format!(
            "{} (order {}) is not the augmented monoid (order {})",
            source.label(),
            source.len(),
            aug.len()
        )));
    }
    let points = action.points;
    let tilde = Arc::new(constants_monoid(points)?);
    let ctx = Arc::new(WreathContext::new(tilde.clone(), a.clone()));
    let full = crate::carrier::TransformationCarrier::new(points);
    let mut pairs = Vec::new();
    for g in a.generators() {
        let x = ctx.constant(tilde.identity_index(), g);
        pairs.push((ctx.encode(&x), encode_u32s(&action.maps[g])));
    }
    for x in 0..points {
        // c_y is element 1 + y of the constants monoid
        let table = (0..a.len()).map(|b| 1 + action.maps[b][x]).collect();
        let h = WreathElement { table, base: a.identity_index() as u32 };
        pairs.push((ctx.encode(&h), full.constant(x as u32)));
    }
    let step = Step::construction("augmentation", format!("{} on {} points", a.label(), points));
    DivisionWitness::new(source.clone(), ctx, pairs, vec![step]).verify(limit)
}

/// `T_1(k) ≺ T_1*(k) × U_1` via `(g, 1) ↦ g` and `(1, e) ↦ 0`.
pub fn group_with_zero(k: &Arc<SemiringTable>, limit: usize) -> Result<DivisionWitness> {
    if !k.is_field() {
        return Err(Error::FieldRequired);
    }
    let source = Arc::new(build_family(&FamilySpec::new(FamilyKind::T, 1, k), limit)?);
    let units = Arc::new(build_family(&FamilySpec::new(FamilyKind::TStar, 1, k), limit)?);
    let u = Arc::new(u1());
    let target = Arc::new(direct_product(&units, &u));
    let (one, e) = (u.key(u.identity_index()), u.key(1 - u.identity_index()));
    let mut pairs: Vec<(Key, Key)> = k.units().into_iter().map(|g| (pair(&[g as u8], one), vec![g as u8])).collect();
    pairs.push((pair(&[k.one() as u8], e), vec![k.zero() as u8]));
    let step = Step::construction("group_with_zero", k.label());
    DivisionWitness::new(source, target, pairs, vec![step]).verify(limit)
}

/// `A × C ≺ B × D` from verified `A ≺ B` and `C ≺ D`, componentwise.
pub fn product_witness(w1: &DivisionWitness, w2: &DivisionWitness, limit: usize) -> Result<DivisionWitness> {
    if !w1.is_verified() || !w2.is_verified() {
        return Err(Error::Precondition("product_witness needs verified factors".into()));
    }
    let source = Arc::new(direct_product(w1.source(), w2.source()));
    let target: Arc<dyn Carrier> = Arc::new(ProductCarrier::new(vec![w1.target().clone(), w2.target().clone()]));
    let (t1, t2) = (w1.target().identity(), w2.target().identity());
    let (s1, s2) = (w1.source().key(w1.source().identity_index()), w2.source().key(w2.source().identity_index()));
    let mut pairs: Vec<(Key, Key)> = w1.pairs().iter().map(|(t, s)| (pair(t, &t2), pair(s, s2))).collect();
    pairs.extend(w2.pairs().iter().map(|(t, s)| (pair(&t1, t), pair(s1, s))));
    let mut steps = w1.steps().to_vec();
    steps.extend(w2.steps().iter().cloned());
    steps.push(Step::construction("product", format!("[{}] × [{}]", w1.describe(), w2.describe())));
    DivisionWitness::new(source, target, pairs, steps).verify(limit)
}

/// `AS*_m(k) ↪ T_n*(k)` for `m < n`: each map goes to its `(m + 1)`-square
/// affine matrix, placed in the lower right corner of an identity matrix.
pub fn affine_embedding(k: &Arc<SemiringTable>, m: usize, n: usize, limit: usize) -> Result<DivisionWitness> {
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!("AS*_{m} does not fit T_{n}")));
    }
    let source = Arc::new(build_family(&FamilySpec::new(FamilyKind::ASStar, m, k), limit)?);
    let maps: HashMap<Key, _> =
        affine_scaling_units(k, m).into_iter().map(|f| (encode_u32s(&f.transformation()), f)).collect();
    let pad = n - m - 1;
    let map = |key: &[u8]| {
        let f = maps.get(key).ok_or_else(|| Error::UnknownElement(hex::encode(key)))?;
        let small = f.to_matrix()?.rows();
        let mut rows: Vec<Vec<usize>> = TriMatrix::identity(k, n).rows();
        for (i, row) in small.iter().enumerate() {
            rows[pad + i][pad..].copy_from_slice(row);
        }
        Ok(TriMatrix::from_rows(k, &rows)?.key())
    };
    let target: Arc<dyn Carrier> = Arc::new(MatrixCarrier::new(k.clone(), n));
    let step = Step::construction("affine_to_matrix", format!("AS*_{m}({}) in T*_{n}", k.label()));
    embedding(source, target, map, vec![step], limit)?.require_injective()
}
