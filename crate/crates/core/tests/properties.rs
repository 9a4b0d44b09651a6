mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use proptest::sample::select;
use semidec::decomp::induction_step;
use semidec::families::{cyclic_group, scalar_subgroup, u1, FamilyKind};
use semidec::monoid::{direct_product, isomorphic, quotient_by_central_units, Monoid, DEFAULT_LIMIT};
use semidec::semiring::SemiringTable;
use semidec::trimat::{elementary_col, elementary_row, AffineMap, ColOp, RowOp, TriMatrix};
use semidec::witness::{group_with_zero, identity_witness, times_to_wreath, Certificate};
use semidec::wreath::WreathContext;

fn matrix(r: &Arc<SemiringTable>, n: usize, digits: &[usize]) -> TriMatrix {
    let mut d = digits.iter().cycle();
    let rows: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| if j < i { r.zero() } else { d.next().unwrap() % r.size() }).collect()).collect();
    TriMatrix::from_rows(r, &rows).unwrap()
}

/// Reference product, straight from the definition.
fn naive_mul(a: &TriMatrix, b: &TriMatrix) -> Vec<Vec<usize>> {
    let r = a.ring();
    let n = a.n();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(r.zero(), |acc, k| r.add(acc, r.mul(a.get(i, k), b.get(k, j))))).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_units_form_a_group(p in select(vec![2u32, 3, 5, 7, 11, 13, 17, 31, 251])) {
        let k = SemiringTable::prime_field_bounded(p, 255).unwrap();
        k.verify_axioms().unwrap();
        let units = k.units();
        prop_assert_eq!(units.len(), p as usize - 1);
        let set: BTreeSet<usize> = units.iter().copied().collect();
        prop_assert!(set.contains(&k.one()));
        for &a in &units {
            prop_assert!(units.iter().any(|&b| k.mul(a, b) == k.one() && k.mul(b, a) == k.one()));
            for &b in &units {
                prop_assert!(set.contains(&k.mul(a, b)));
            }
        }
    }

    #[test]
    fn products_stay_triangular(p in select(vec![2u32, 3, 5]), n in 1usize..5, a in prop::collection::vec(0usize..5, 10), b in prop::collection::vec(0usize..5, 10), c in prop::collection::vec(0usize..5, 10)) {
        let r = zp(p);
        let (x, y, z) = (matrix(&r, n, &a), matrix(&r, n, &b), matrix(&r, n, &c));
        let xy = x.mul(&y).unwrap();
        prop_assert!(xy.is_triangular());
        prop_assert_eq!(xy.rows(), naive_mul(&x, &y));
        prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let parts = xy.block_decompose();
        if n >= 2 {
            prop_assert_eq!(parts.unwrap().reassemble(), xy);
        }
    }

    #[test]
    fn operations_are_elementary_products(p in select(vec![2u32, 3, 5]), n in 2usize..5, digits in prop::collection::vec(0usize..5, 10), i in 0usize..4, j in 0usize..4, factor in 0usize..5) {
        let r = zp(p);
        let m = matrix(&r, n, &digits);
        let (i, j, factor) = (i % n, j % n, factor % p as usize);
        let (lo, hi) = (i.min(j), i.max(j));
        let row = RowOp::Scale { row: i, factor };
        prop_assert_eq!(m.apply_row_op(row).unwrap(), elementary_row(&r, n, row).unwrap().mul(&m).unwrap());
        let col = ColOp::Scale { col: i, factor };
        prop_assert_eq!(m.apply_col_op(col).unwrap(), m.mul(&elementary_col(&r, n, col).unwrap()).unwrap());
        if lo < hi {
            let row = RowOp::AddMultiple { target: lo, source: hi, factor };
            prop_assert_eq!(m.apply_row_op(row).unwrap(), elementary_row(&r, n, row).unwrap().mul(&m).unwrap());
            let col = ColOp::AddMultiple { target: hi, source: lo, factor };
            prop_assert_eq!(m.apply_col_op(col).unwrap(), m.mul(&elementary_col(&r, n, col).unwrap()).unwrap());
            let (up, left) = (RowOp::AddMultiple { target: hi, source: lo, factor }, ColOp::AddMultiple { target: lo, source: hi, factor });
            prop_assert!(m.apply_row_op(up).is_err());
            prop_assert!(m.apply_col_op(left).is_err());
        }
    }

    #[test]
    fn affine_matrices_are_multiplicative(p in select(vec![2u32, 3, 5]), dim in 1usize..4, l1 in 0usize..5, l2 in 0usize..5, c1 in prop::collection::vec(0usize..5, 3), c2 in prop::collection::vec(0usize..5, 3)) {
        let r = zp(p);
        let q = p as usize;
        let f = AffineMap::scaling(&r, l1 % q, c1[..dim].iter().map(|x| x % q).collect());
        let g = AffineMap::scaling(&r, l2 % q, c2[..dim].iter().map(|x| x % q).collect());
        // v ↦ (vλ + c)μ + d = vλμ + (cμ + d)
        let fg = AffineMap::scaling(&r, r.mul(l1 % q, l2 % q), g.apply(&f.offset));
        prop_assert_eq!(fg.to_matrix().unwrap(), f.to_matrix().unwrap().mul(&g.to_matrix().unwrap()).unwrap());
        for v in 0..q.pow(dim as u32) {
            let v = semidec::trimat::index_vector(q, dim, v);
            prop_assert_eq!(fg.apply(&v), g.apply(&f.apply(&v)));
        }
    }

    #[test]
    fn pipeline_wreath_contexts_are_associative(seed in any::<u64>(), which in 0usize..4) {
        let k2 = zp(2);
        let k3 = zp(3);
        let ctx = match which {
            0 => WreathContext::new(family(FamilyKind::AS, 1, &k2), family(FamilyKind::T, 1, &k2)),
            1 => WreathContext::new(family(FamilyKind::AS, 1, &k3), family(FamilyKind::T, 1, &k3)),
            2 => WreathContext::new(family(FamilyKind::AS, 2, &k2), family(FamilyKind::T, 2, &k2)),
            _ => WreathContext::new(family(FamilyKind::ASStar, 1, &k3), Arc::new(u1())),
        };
        ctx.spot_check(200, seed).unwrap();
        let e = ctx.identity_element();
        let x = ctx.constant(1, 1);
        prop_assert_eq!(ctx.mul_elements(&e, &x).unwrap(), x.clone());
        prop_assert_eq!(ctx.mul_elements(&x, &e).unwrap(), x);
    }

    #[test]
    fn projection_to_the_quotient_is_a_homomorphism(n in 1usize..3, x in 0usize..10_000, y in 0usize..10_000) {
        let k = zp(3);
        let t = family(FamilyKind::T, n, &k);
        let z = scalar_subgroup(&t, &k, n);
        let (q, proj) = quotient_by_central_units(&t, &z, "PT").unwrap();
        let (x, y) = (x % t.len(), y % t.len());
        prop_assert_eq!(proj[t.mul_idx(x, y)], q.mul_idx(proj[x], proj[y]));
        prop_assert_eq!(proj[t.identity_index()], q.identity_index());
    }

    #[test]
    fn relabelled_tables_are_isomorphic(perm in Just((1usize..6).collect::<Vec<_>>()).prop_shuffle(), which in 0usize..3) {
        let base = match which {
            0 => Arc::new(direct_product(&Arc::new(cyclic_group(2)), &Arc::new(cyclic_group(3)))),
            1 => Arc::new(direct_product(&Arc::new(u1()), &Arc::new(cyclic_group(3)))),
            _ => family(FamilyKind::ASStar, 1, &zp(3)),
        };
        let size = base.len();
        // σ fixes 0 and permutes 1..size
        let mut sigma: Vec<usize> = vec![0];
        sigma.extend(perm.iter().copied().filter(|&i| i < size));
        let id = base.identity_index();
        let mut inverse = vec![0; size];
        for (i, &s) in sigma.iter().enumerate() {
            inverse[s] = i;
        }
        let table: Vec<Vec<u32>> = (0..size)
            .map(|a| (0..size).map(|b| inverse[base.mul_idx(sigma[a], sigma[b])] as u32).collect())
            .collect();
        let relabelled = Monoid::from_table("relabelled", &table, inverse[id]).unwrap();
        prop_assert!(isomorphic(&base, &relabelled, 64).unwrap());
    }

    #[test]
    fn closure_is_deterministic(n in 1usize..3, picks in prop::collection::vec(0usize..1000, 1..4)) {
        let t = family(FamilyKind::T, n, &zp(2));
        let gens: Vec<Vec<u8>> = picks.iter().map(|&i| t.key(i % t.len()).to_vec()).collect();
        let a = Monoid::close(t.carrier(), &gens, DEFAULT_LIMIT, "a").unwrap();
        let b = Monoid::close(t.carrier(), &gens, DEFAULT_LIMIT, "b").unwrap();
        prop_assert_eq!(a.keys(), b.keys());
        let mut reversed = gens.clone();
        reversed.reverse();
        let c = Monoid::close(t.carrier(), &reversed, DEFAULT_LIMIT, "c").unwrap();
        let (sa, sc): (BTreeSet<_>, BTreeSet<_>) = (a.keys().iter().collect(), c.keys().iter().collect());
        prop_assert_eq!(sa, sc);
    }

    #[test]
    fn certificates_roundtrip(which in 0usize..5) {
        let w = match which {
            0 => induction_step(2, &zp(2), DEFAULT_LIMIT).unwrap(),
            1 => induction_step(2, &boolean(), DEFAULT_LIMIT).unwrap(),
            2 => group_with_zero(&zp(5), DEFAULT_LIMIT).unwrap(),
            3 => times_to_wreath(&Arc::new(cyclic_group(2)), &Arc::new(u1()), DEFAULT_LIMIT).unwrap(),
            _ => identity_witness(&family(FamilyKind::UT, 2, &zp(3)), DEFAULT_LIMIT).unwrap(),
        };
        let text = w.certificate().to_json().unwrap();
        let back = Certificate::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text.clone());
        let again = back.verify(DEFAULT_LIMIT).unwrap();
        prop_assert_eq!(again.closure_size().unwrap(), w.closure_size().unwrap());
        prop_assert_eq!(again.certificate().to_json().unwrap(), text);
    }
}
