mod common;

use std::sync::Arc;

use common::*;
use semidec::carrier::{Carrier, Key};
use semidec::decomp::induction_step;
use semidec::families::{cyclic_group, u1, Action, FamilyKind};
use semidec::monoid::{direct_product, Monoid};
use semidec::witness::*;
use semidec::Error;

const LIMIT: usize = 100_000;

fn trivial() -> Arc<Monoid> {
    Arc::new(cyclic_group(1))
}

/// `U_1 ≺ C_2 × U_1` by projection onto the second factor.
fn projection() -> DivisionWitness {
    let (c2, u) = (Arc::new(cyclic_group(2)), Arc::new(u1()));
    let target = Arc::new(direct_product(&c2, &u));
    let pair = semidec::carrier::encode_tuple(&[c2.key(0), u.key(1)]);
    DivisionWitness::new(u.clone(), target, vec![(pair, u.key(1).to_vec())], vec![]).verify(LIMIT).unwrap()
}

#[test]
fn identity_and_composition() {
    let t = family(FamilyKind::T, 2, &zp(3));
    let w = identity_witness(&t, LIMIT).unwrap();
    assert_eq!(w.closure_size().unwrap(), 27);
    let ww = compose(&w, &w, LIMIT).unwrap();
    assert_eq!(ww.closure_size().unwrap(), 27);
    assert_eq!(ww.pairs(), w.pairs());
}

#[test]
fn group_onto_trivial_target_is_not_functional() {
    let c2 = Arc::new(cyclic_group(2));
    let one: Arc<dyn Carrier> = trivial();
    let w = DivisionWitness::new(c2.clone(), one.clone(), vec![(one.identity(), c2.key(1).to_vec())], vec![]);
    assert!(matches!(w.verify(LIMIT), Err(Error::NotFunctional { .. })));
}

#[test]
fn times_to_wreath_examples() {
    let (u, c2) = (Arc::new(u1()), Arc::new(cyclic_group(2)));
    assert_eq!(times_to_wreath(&u, &u, LIMIT).unwrap().closure_size().unwrap(), 4);
    assert_eq!(times_to_wreath(&c2, &u, LIMIT).unwrap().closure_size().unwrap(), 4);
    let affine = family(FamilyKind::ASStar, 1, &zp(3));
    assert_eq!(times_to_wreath(&affine, &c2, LIMIT).unwrap().closure_size().unwrap(), 12);
}

#[test]
fn interchange_examples() {
    let (u, c2, one) = (Arc::new(u1()), Arc::new(cyclic_group(2)), trivial());
    // |U_1 ≀ U_1|² = 8²
    assert_eq!(interchange(&u, &u, &u, &u, LIMIT).unwrap().closure_size().unwrap(), 64);
    assert_eq!(interchange(&c2, &u, &u, &u, LIMIT).unwrap().closure_size().unwrap(), 64);
    assert_eq!(interchange(&c2, &one, &u, &one, LIMIT).unwrap().closure_size().unwrap(), 4);
}

#[test]
fn absorb_examples() {
    let (u, one) = (Arc::new(u1()), trivial());
    // |(U_1 ≀ U_1) × U_1| = 2² · 2 · 2
    assert_eq!(absorb(&u, &u, &u, LIMIT).unwrap().closure_size().unwrap(), 16);
    assert_eq!(absorb(&u, &u, &one, LIMIT).unwrap().closure_size().unwrap(), 8);
    let (a, t1) = (family(FamilyKind::AS, 1, &zp(2)), family(FamilyKind::T, 1, &zp(2)));
    // |AS_1 ≀ T_1| · |T_1| = 4² · 2 · 2
    assert_eq!(absorb(&a, &t1, &t1, LIMIT).unwrap().closure_size().unwrap(), 64);
}

#[test]
fn lift_examples() {
    let u = Arc::new(u1());
    let p = projection();
    let left = lift_left(&p, &u, LIMIT).unwrap();
    assert_eq!(left.source().len(), 8);
    assert!(left.steps().iter().any(|s| matches!(s, Step::Restriction(_))));
    let right = lift_right(&p, &u, LIMIT).unwrap();
    assert_eq!(right.source().len(), 8);
    let id = identity_witness(&u, LIMIT).unwrap();
    assert_eq!(lift_left(&id, &u, LIMIT).unwrap().closure_size().unwrap(), 8);
    assert_eq!(lift_right(&id, &u, LIMIT).unwrap().closure_size().unwrap(), 8);
    // C ≀ 1 ≅ C
    let one = trivial();
    let w = identity_witness(&one, LIMIT).unwrap();
    assert_eq!(lift_left(&w, &u, LIMIT).unwrap().closure_size().unwrap(), 2);
    assert_eq!(lift_right(&p, &one, LIMIT).unwrap().closure_size().unwrap(), p.closure_size().unwrap());
}

#[test]
fn augmentation_of_the_affine_line_over_z2() {
    let units = family(FamilyKind::ASStar, 1, &zp(2));
    let w = augmentation(&units, &Action::from_transformations(&units).unwrap(), LIMIT).unwrap();
    // {(1̂,1), (1̂,g), (h_0,1), (h_1,1), (h_0,g), (h_1,g)}
    assert_eq!(w.closure_size().unwrap(), 6);
    assert_eq!(w.source().len(), 4);
}

#[test]
fn augmentation_of_the_affine_line_over_z3() {
    let units = family(FamilyKind::ASStar, 1, &zp(3));
    let w = augmentation(&units, &Action::from_transformations(&units).unwrap(), LIMIT).unwrap();
    assert_eq!(w.source().len(), 9);
    let scaling = family(FamilyKind::AS, 1, &zp(3));
    let same = augmentation_for(&scaling, &units, &Action::from_transformations(&units).unwrap(), LIMIT).unwrap();
    assert_eq!(same.closure_size().unwrap(), w.closure_size().unwrap());
}

#[test]
fn augmentation_of_a_trivial_action() {
    let one = trivial();
    let w = augmentation(&one, &Action::trivial(2), LIMIT).unwrap();
    assert_eq!(w.source().len(), 3);
}

#[test]
fn group_with_zero_examples() {
    let w = group_with_zero(&zp(3), LIMIT).unwrap();
    assert_eq!(w.source().len(), 3);
    // traced: (1,1), (2,1), (1,e), (2,e); the last two both map to 0
    assert_eq!(w.closure_size().unwrap(), 4);
    assert_eq!(group_with_zero(&zp(2), LIMIT).unwrap().source().len(), 2);
    assert!(matches!(group_with_zero(&boolean(), LIMIT), Err(Error::FieldRequired)));
}

#[test]
fn product_witness_examples() {
    let u = Arc::new(u1());
    let id = identity_witness(&u, LIMIT).unwrap();
    assert_eq!(product_witness(&id, &id, LIMIT).unwrap().closure_size().unwrap(), 4);
    let g = group_with_zero(&zp(3), LIMIT).unwrap();
    let mut power = g.clone();
    for n in 2..=3 {
        power = product_witness(&power, &g, LIMIT).unwrap();
        assert_eq!(power.source().len(), 3usize.pow(n));
        assert_eq!(power.closure_size().unwrap(), 4usize.pow(n));
    }
    let raw = DivisionWitness::new(u.clone(), u.clone(), vec![], vec![]);
    assert!(matches!(product_witness(&id, &raw, LIMIT), Err(Error::Precondition(_))));
}

#[test]
fn affine_scaling_groups_embed_in_triangular_units() {
    for (m, n, p) in [(1, 2, 2), (1, 2, 3), (1, 3, 2), (2, 3, 2)] {
        let w = affine_embedding(&zp(p), m, n, LIMIT).unwrap();
        assert_eq!(w.closure_size().unwrap(), w.source().len());
    }
}

#[test]
fn search_examples() {
    let (u, c2) = (Arc::new(u1()), Arc::new(cyclic_group(2)));
    assert!(search_division(&u, &c2, DEFAULT_SEARCH_LIMIT).unwrap().is_none());
    let prod = Arc::new(direct_product(&c2, &u));
    assert!(search_division(&c2, &prod, DEFAULT_SEARCH_LIMIT).unwrap().is_some());
    let t = family(FamilyKind::T, 2, &zp(2));
    let found = search_division(&t, &t, DEFAULT_SEARCH_LIMIT).unwrap().unwrap();
    assert_eq!(found.closure_size().unwrap(), 8);
    assert!(matches!(search_division(&u, &family(FamilyKind::T, 2, &zp(3)), 12), Err(Error::SizeLimitExceeded { .. })));
}

#[test]
fn combinators_agree_with_search() {
    let (u, c2) = (Arc::new(u1()), Arc::new(cyclic_group(2)));
    // each source is found to divide the combinator's traced image
    for w in [times_to_wreath(&u, &u, LIMIT).unwrap(), times_to_wreath(&c2, &u, LIMIT).unwrap(), projection()] {
        let image = w.image_monoid().unwrap();
        if image.len() <= DEFAULT_SEARCH_LIMIT {
            assert!(search_division(w.source(), &image, DEFAULT_SEARCH_LIMIT).unwrap().is_some());
        }
    }
    // and C_2 does not divide the aperiodic U_1 ≀ U_1
    let uu = Arc::new(semidec::wreath::enumerate_wreath(&Arc::new(semidec::wreath::WreathContext::new(u.clone(), u)), LIMIT).unwrap());
    assert!(search_division(&c2, &uu, DEFAULT_SEARCH_LIMIT).unwrap().is_none());
}

#[test]
fn induction_witness_for_t2_z2() {
    let w = induction_step(2, &zp(2), LIMIT).unwrap();
    assert_eq!(w.closure_size().unwrap(), 8);
    // the first projection of the closure is onto the closure of the targets
    let targets: Vec<Key> = w.pairs().iter().map(|(t, _)| t.clone()).collect();
    let traced = Monoid::close(w.target().clone(), &targets, LIMIT, "targets").unwrap();
    assert_eq!(traced.len(), w.closure_size().unwrap());
}

#[test]
fn swapped_sources_are_rejected() {
    let w = induction_step(2, &zp(2), LIMIT).unwrap();
    let mut cert = w.certificate();
    let (a, b) = (cert.pairs[0][1].clone(), cert.pairs[3][1].clone());
    cert.pairs[0][1] = b;
    cert.pairs[3][1] = a;
    assert!(matches!(cert.verify(LIMIT), Err(Error::NotFunctional { .. })));
}

#[test]
fn certificates_reverify_from_json() {
    for w in [induction_step(2, &zp(3), LIMIT).unwrap(), projection(), group_with_zero(&zp(3), LIMIT).unwrap()] {
        let text = w.certificate().to_json().unwrap();
        let back = Certificate::from_json(&text).unwrap().verify(LIMIT).unwrap();
        assert_eq!(back.closure_size().unwrap(), w.closure_size().unwrap());
        assert_eq!(back.certificate().to_json().unwrap(), text);
    }
}

#[test]
fn tampered_closure_size_is_detected() {
    let w = projection();
    let mut cert = w.certificate();
    cert.verdict = Verdict::Verified { closure_size: 99 };
    assert!(cert.verify(LIMIT).is_err());
}

#[test]
fn closure_limit_is_enforced() {
    let t = family(FamilyKind::T, 2, &zp(3));
    let w = DivisionWitness::new(t.clone(), t.carrier(), t.keys().iter().map(|k| (k.clone(), k.clone())).collect(), vec![]);
    assert!(matches!(w.verify(10), Err(Error::SizeLimitExceeded { limit: 10 })));
}
