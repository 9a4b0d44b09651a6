//! Independent oracles shared by the integration suites. Nothing here uses
//! the Cayley graph machinery of the library: orbits are computed directly
//! on matrices and spans by Gaussian elimination.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use semidec::families::{build_family, scalar_subgroup, FamilyKind, FamilySpec};
use semidec::monoid::{greens, quotient_by_central_units, Monoid, DEFAULT_LIMIT};
use semidec::semiring::SemiringTable;
use semidec::trimat::{ColOp, RowOp, TriMatrix};

pub fn zp(p: u32) -> Arc<SemiringTable> {
    Arc::new(SemiringTable::prime_field(p).unwrap())
}

pub fn boolean() -> Arc<SemiringTable> {
    Arc::new(SemiringTable::boolean())
}

pub fn family(kind: FamilyKind, n: usize, r: &Arc<SemiringTable>) -> Arc<Monoid> {
    Arc::new(build_family(&FamilySpec::new(kind, n, r), DEFAULT_LIMIT).unwrap())
}

/// `q^(n(n+1)/2)`: one free entry per position on or above the diagonal.
pub fn triangular_count(q: u64, n: u32) -> u64 {
    q.pow(n * (n + 1) / 2)
}

/// `(q-1)^n q^(n(n-1)/2)`: unit diagonal, free strictly upper part.
pub fn unit_triangular_count(q: u64, n: u32) -> u64 {
    (q - 1).pow(n) * q.pow(n * (n - 1) / 2)
}

fn matrices(m: &Monoid, r: &Arc<SemiringTable>, n: usize) -> Vec<TriMatrix> {
    m.keys().iter().map(|k| TriMatrix::from_key(r, n, k).unwrap()).collect()
}

fn row_ops(r: &SemiringTable, n: usize) -> Vec<RowOp> {
    let mut ops = Vec::new();
    for target in 0..n {
        for source in target + 1..n {
            for factor in r.elements() {
                ops.push(RowOp::AddMultiple { target, source, factor });
            }
        }
    }
    for row in 0..n {
        for factor in r.elements() {
            ops.push(RowOp::Scale { row, factor });
        }
    }
    ops
}

fn col_ops(r: &SemiringTable, n: usize) -> Vec<ColOp> {
    let mut ops = Vec::new();
    for source in 0..n {
        for target in source + 1..n {
            for factor in r.elements() {
                ops.push(ColOp::AddMultiple { target, source, factor });
            }
        }
    }
    for col in 0..n {
        for factor in r.elements() {
            ops.push(ColOp::Scale { col, factor });
        }
    }
    ops
}

/// Everything reachable from `start` in zero or more moves.
fn orbit(start: &TriMatrix, moves: &dyn Fn(&TriMatrix) -> Vec<TriMatrix>) -> HashSet<Vec<u8>> {
    let mut seen = HashSet::from([start.key()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in moves(&x) {
            if seen.insert(y.key()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Counts pairs on which Green's relations disagree with mutual
/// reachability under row operations (L), column operations (R), or both
/// (J). For `T_n` the moves are the elementary operations; for `UT_n` they
/// are multiplications by elements of `UT_n` on the appropriate side.
pub fn greens_by_operations_violations(kind: FamilyKind, n: usize, r: &Arc<SemiringTable>) -> usize {
    let m = family(kind, n, r);
    let g = greens(&m);
    let xs = matrices(&m, r, n);
    let (rows, cols) = (row_ops(r, n), col_ops(r, n));
    let left = |x: &TriMatrix| -> Vec<TriMatrix> {
        match kind {
            FamilyKind::T => rows.iter().map(|&op| x.apply_row_op(op).unwrap()).collect(),
            _ => xs.iter().map(|u| u.mul(x).unwrap()).collect(),
        }
    };
    let right = |x: &TriMatrix| -> Vec<TriMatrix> {
        match kind {
            FamilyKind::T => cols.iter().map(|&op| x.apply_col_op(op).unwrap()).collect(),
            _ => xs.iter().map(|u| x.mul(u).unwrap()).collect(),
        }
    };
    let both = |x: &TriMatrix| -> Vec<TriMatrix> {
        let mut v = left(x);
        v.extend(right(x));
        v
    };
    let lo: Vec<_> = xs.iter().map(|x| orbit(x, &left)).collect();
    let ro: Vec<_> = xs.iter().map(|x| orbit(x, &right)).collect();
    let jo: Vec<_> = xs.iter().map(|x| orbit(x, &both)).collect();
    let mut violations = 0;
    for a in 0..xs.len() {
        for b in 0..xs.len() {
            let (ka, kb) = (xs[a].key(), xs[b].key());
            let mutual = |o: &[HashSet<Vec<u8>>]| o[a].contains(&kb) && o[b].contains(&ka);
            violations += usize::from(mutual(&lo) != (g.l[a] == g.l[b]));
            violations += usize::from(mutual(&ro) != (g.r[a] == g.r[b]));
            violations += usize::from(mutual(&jo) != (g.j[a] == g.j[b]));
        }
    }
    violations
}

/// Rank of a list of vectors over `Z_p` by Gaussian elimination.
pub fn rank(p: usize, vectors: &[Vec<usize>]) -> usize {
    let mut rows: Vec<Vec<usize>> = vectors.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let inv = |a: usize| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = *x * scale % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn spanned(p: usize, basis: &[Vec<usize>], v: &[usize]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(p, basis) == rank(p, &with)
}

/// Every column is a combination of the columns with nonzero diagonal entry.
pub fn column_condition(x: &TriMatrix, p: usize) -> bool {
    let n = x.n();
    let column = |j: usize| (0..n).map(|i| x.get(i, j)).collect::<Vec<_>>();
    let basis: Vec<_> = (0..n).filter(|&j| x.get(j, j) != 0).map(column).collect();
    (0..n).all(|j| spanned(p, &basis, &column(j)))
}

/// Every row is a combination of the rows with nonzero diagonal entry.
pub fn row_condition(x: &TriMatrix, p: usize) -> bool {
    let rows = x.rows();
    let basis: Vec<_> = (0..x.n()).filter(|&i| x.get(i, i) != 0).map(|i| rows[i].clone()).collect();
    rows.iter().all(|row| spanned(p, &basis, row))
}

/// Counts elements where the four regularity characterisations disagree.
pub fn regularity_violations(kind: FamilyKind, n: usize, p: u32) -> usize {
    let r = zp(p);
    let m = family(kind, n, &r);
    let g = greens(&m);
    let xs = matrices(&m, &r, n);
    let by_definition = semidec::monoid::regular_by_definition(&m);
    let subidentity_classes: HashSet<usize> =
        (0..xs.len()).filter(|&i| xs[i].classify().subidentity).map(|i| g.j[i]).collect();
    (0..xs.len())
        .filter(|&i| {
            let answers = [
                g.regular[i],
                by_definition[i],
                subidentity_classes.contains(&g.j[i]),
                column_condition(&xs[i], p as usize),
                row_condition(&xs[i], p as usize),
            ];
            answers.iter().any(|&a| a != answers[0])
        })
        .count()
}

/// Counts pairs where regularity or L, R, J in `T_n(k)` disagree with the
/// same notion for the images in the scalar quotient.
pub fn projective_violations(n: usize, p: u32) -> usize {
    let r = zp(p);
    let t = family(FamilyKind::T, n, &r);
    let z = scalar_subgroup(&t, &r, n);
    let (q, proj) = quotient_by_central_units(&t, &z, "PT").unwrap();
    let (gt, gq) = (greens(&t), greens(&q));
    let mut violations = 0;
    for a in 0..t.len() {
        violations += usize::from(gt.regular[a] != gq.regular[proj[a]]);
        for b in 0..t.len() {
            let (pa, pb) = (proj[a], proj[b]);
            violations += usize::from((gt.l[a] == gt.l[b]) != (gq.l[pa] == gq.l[pb]));
            violations += usize::from((gt.r[a] == gt.r[b]) != (gq.r[pa] == gq.r[pb]));
            violations += usize::from((gt.j[a] == gt.j[b]) != (gq.j[pa] == gq.j[pb]));
        }
    }
    violations
}

/// Multiplication table by brute force, keyed by the monoid's own keys.
pub fn brute_table(m: &Arc<Monoid>) -> HashMap<(Vec<u8>, Vec<u8>), Vec<u8>> {
    let carrier = m.carrier();
    let mut table = HashMap::new();
    for a in m.keys() {
        for b in m.keys() {
            table.insert((a.clone(), b.clone()), carrier.mul(a, b).unwrap());
        }
    }
    table
}
