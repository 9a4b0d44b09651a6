mod common;

use common::*;
use semidec::families::FamilyKind;
use semidec::monoid::{depth_report, greens, GreensReport};

#[test]
fn greens_relations_match_row_and_column_orbits() {
    for (kind, n, p) in [(FamilyKind::T, 2, 2), (FamilyKind::T, 2, 3), (FamilyKind::UT, 3, 2)] {
        assert_eq!(greens_by_operations_violations(kind, n, &zp(p)), 0, "{kind} n={n} p={p}");
    }
}

#[test]
fn greens_relations_match_orbits_over_the_boolean_semiring() {
    assert_eq!(greens_by_operations_violations(FamilyKind::T, 2, &boolean()), 0);
}

#[test]
fn regularity_characterisations_agree() {
    for (kind, n, p) in [(FamilyKind::T, 2, 2), (FamilyKind::T, 2, 3), (FamilyKind::UT, 3, 2), (FamilyKind::T, 3, 2)] {
        assert_eq!(regularity_violations(kind, n, p), 0, "{kind} n={n} p={p}");
    }
}

#[test]
fn scalar_quotient_preserves_and_reflects_structure() {
    assert_eq!(projective_violations(2, 3), 0);
    assert_eq!(projective_violations(2, 2), 0);
}

#[test]
fn class_counts_from_hand_enumeration() {
    // counts from an exhaustive ideal computation done outside the library
    let t = family(FamilyKind::T, 2, &zp(2));
    let g = greens(&t);
    assert_eq!(t.len() as u64, triangular_count(2, 2));
    assert_eq!(GreensReport::class_count(&g.j), 5);
    assert_eq!(g.regular_j_classes(), 4);
    let ut = family(FamilyKind::UT, 3, &zp(2));
    let g = greens(&ut);
    assert_eq!(ut.len(), 64);
    assert_eq!(GreensReport::class_count(&g.j), 15);
    assert_eq!(g.regular_j_classes(), 8);
}

#[test]
fn depth_of_small_triangular_monoids() {
    let d = depth_report(&family(FamilyKind::T, 2, &zp(2)));
    assert_eq!((d.depth, d.census.clone()), (1, vec![1]));
    let d = depth_report(&family(FamilyKind::T, 2, &zp(3)));
    assert_eq!((d.depth, d.census.clone()), (2, vec![1, 2]));
    assert_eq!(d.k_orders(), vec![unit_triangular_count(3, 2) as usize, 4]);
}

#[test]
fn maximal_subgroups_of_t2_z3() {
    let r = zp(3);
    let t = family(FamilyKind::T, 2, &r);
    let key = |rows: &[&[usize]]| {
        let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        semidec::trimat::TriMatrix::from_rows(&r, &rows).unwrap().key()
    };
    let order = |rows: &[&[usize]]| t.maximal_subgroup(t.index_of(&key(rows)).unwrap()).unwrap().len();
    assert_eq!(order(&[&[1, 0], &[0, 1]]), 12);
    assert_eq!(order(&[&[1, 0], &[0, 0]]), 2);
    assert_eq!(order(&[&[0, 0], &[0, 0]]), 1);
    let not_idempotent = t.index_of(&key(&[&[2, 0], &[0, 1]])).unwrap();
    assert!(t.maximal_subgroup(not_idempotent).is_err());
}
