//! Upper triangular matrices over a [`SemiringTable`], elementary row and
//! column operations, block decomposition and the affine-to-matrix embedding.
//!
//! Vectors are row vectors and maps act on the right: an affine map
//! `v ↦ vX + c` corresponds to the matrix `(1 c; 0 X)` acting on `(1, v)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::SemiringTable;

#[derive(Clone)]
pub struct TriMatrix {
    n: usize,
    entries: Vec<u8>,
    ring: Arc<SemiringTable>,
}

impl PartialEq for TriMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for TriMatrix {}

impl fmt::Debug for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.rows(), self.ring.label())
    }
}

pub(crate) fn same_ring(a: &Arc<SemiringTable>, b: &Arc<SemiringTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Matrix JSON: `{"n":N,"ring":"<label>","entries":[[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub ring: String,
    pub entries: Vec<Vec<usize>>,
}

/// Which of the triangular subclasses a matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub triangular: bool,
    pub unitriangular: bool,
    pub subidentity: bool,
}

/// Elementary row operations on triangular matrices (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    /// `row[target] += factor * row[source]`, with `target < source`.
    AddMultiple { target: usize, source: usize, factor: usize },
    /// `row[row] = factor * row[row]`.
    Scale { row: usize, factor: usize },
}

/// Elementary column operations on triangular matrices (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColOp {
    /// `col[target] += col[source] * factor`, with `target > source`.
    AddMultiple { target: usize, source: usize, factor: usize },
    /// `col[col] = col[col] * factor`.
    Scale { col: usize, factor: usize },
}

/// `s = (M v; 0 c)` with `M` of dimension `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockParts {
    pub m: TriMatrix,
    pub v: Vec<usize>,
    pub c: usize,
}

impl TriMatrix {
    /// Builds a matrix from rows of element indices, rejecting nonzero entries
    /// below the diagonal.
    pub fn from_rows(ring: &Arc<SemiringTable>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= ring.size() {
                    return Err(Error::EntryOutOfRange(x));
                }
                if j < i && x != ring.zero() {
                    return Err(Error::NotTriangular(i, j));
                }
                entries.push(x as u8);
            }
        }
        Ok(TriMatrix { n, entries, ring: ring.clone() })
    }

    /// Decodes a canonical key (row-major entry bytes).
    pub fn from_key(ring: &Arc<SemiringTable>, n: usize, key: &[u8]) -> Result<Self> {
        if key.len() != n * n {
            return Err(Error::MalformedKey(format!("expected {} bytes, found {}", n * n, key.len())));
        }
        let rows: Vec<Vec<usize>> = key.chunks(n.max(1)).map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        Self::from_rows(ring, &rows)
    }

    pub fn identity(ring: &Arc<SemiringTable>, n: usize) -> Self {
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn zero(ring: &Arc<SemiringTable>, n: usize) -> Self {
        TriMatrix { n, entries: vec![ring.zero() as u8; n * n], ring: ring.clone() }
    }

    pub fn diagonal(ring: &Arc<SemiringTable>, diag: &[usize]) -> Self {
        let mut m = Self::zero(ring, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j] as usize
    }

    fn set(&mut self, i: usize, j: usize, x: usize) {
        self.entries[i * self.n + j] = x as u8;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Canonical byte encoding: entries in row-major order.
    pub fn key(&self) -> Vec<u8> {
        self.entries.clone()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { n: self.n, ring: self.ring.label().to_string(), entries: self.rows() }
    }

    pub fn is_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.ring.zero()))
    }

    pub fn mul(&self, other: &TriMatrix) -> Result<TriMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let r = &self.ring;
        let n = self.n;
        let mut out = Self::zero(r, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = r.zero();
                for k in i..=j {
                    acc = r.add(acc, r.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        debug_assert!(out.is_triangular());
        Ok(out)
    }

    pub fn classify(&self) -> Classification {
        let r = &self.ring;
        let unitriangular = (0..self.n).all(|i| {
            let d = self.get(i, i);
            d == r.zero() || d == r.one()
        });
        let off_zero = (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == r.zero()));
        Classification { triangular: self.is_triangular(), unitriangular, subidentity: unitriangular && off_zero }
    }

    /// Applies a row operation; equivalent to left multiplication by the
    /// corresponding elementary triangular matrix.
    pub fn apply_row_op(&self, op: RowOp) -> Result<TriMatrix> {
        let r = &self.ring;
        let mut out = self.clone();
        match op {
            RowOp::AddMultiple { target, source, factor } => {
                self.check_operands(target.max(source), factor)?;
                if target >= source {
                    return Err(Error::IllegalDirection(format!(
                        "row {source} may only be added to a row above it, not to row {target}"
                    )));
                }
                for j in 0..self.n {
                    let add = r.mul(factor, self.get(source, j));
                    out.set(target, j, r.add(self.get(target, j), add));
                }
            }
            RowOp::Scale { row, factor } => {
                self.check_operands(row, factor)?;
                for j in 0..self.n {
                    out.set(row, j, r.mul(factor, self.get(row, j)));
                }
            }
        }
        debug_assert!(out.is_triangular());
        Ok(out)
    }

    /// Applies a column operation; equivalent to right multiplication by the
    /// corresponding elementary triangular matrix.
    pub fn apply_col_op(&self, op: ColOp) -> Result<TriMatrix> {
        let r = &self.ring;
        let mut out = self.clone();
        match op {
            ColOp::AddMultiple { target, source, factor } => {
                self.check_operands(target.max(source), factor)?;
                if target <= source {
                    return Err(Error::IllegalDirection(format!(
                        "column {source} may only be added to a column right of it, not to column {target}"
                    )));
                }
                for i in 0..self.n {
                    let add = r.mul(self.get(i, source), factor);
                    out.set(i, target, r.add(self.get(i, target), add));
                }
            }
            ColOp::Scale { col, factor } => {
                self.check_operands(col, factor)?;
                for i in 0..self.n {
                    out.set(i, col, r.mul(self.get(i, col), factor));
                }
            }
        }
        debug_assert!(out.is_triangular());
        Ok(out)
    }

    fn check_operands(&self, index: usize, factor: usize) -> Result<()> {
        if index >= self.n {
            return Err(Error::DimensionMismatch(index, self.n));
        }
        if factor >= self.ring.size() {
            return Err(Error::EntryOutOfRange(factor));
        }
        Ok(())
    }

    pub fn block_decompose(&self) -> Result<BlockParts> {
        let n = self.n;
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        let m = TriMatrix {
            n: n - 1,
            entries: (0..n - 1).flat_map(|i| (0..n - 1).map(move |j| (i, j))).map(|(i, j)| self.entries[i * n + j]).collect(),
            ring: self.ring.clone(),
        };
        let v = (0..n - 1).map(|i| self.get(i, n - 1)).collect();
        Ok(BlockParts { m, v, c: self.get(n - 1, n - 1) })
    }
}

/// Elementary triangular matrix for a row operation: `apply_row_op(m, op) == elementary_row(op) * m`.
pub fn elementary_row(ring: &Arc<SemiringTable>, n: usize, op: RowOp) -> Result<TriMatrix> {
    let mut e = TriMatrix::identity(ring, n);
    match op {
        RowOp::AddMultiple { target, source, factor } => {
            if target >= source || source >= n {
                return Err(Error::IllegalDirection(format!("row {source} to row {target}")));
            }
            e.set(target, source, factor);
        }
        RowOp::Scale { row, factor } => e.set(row, row, factor),
    }
    Ok(e)
}

/// Elementary triangular matrix for a column operation: `apply_col_op(m, op) == m * elementary_col(op)`.
pub fn elementary_col(ring: &Arc<SemiringTable>, n: usize, op: ColOp) -> Result<TriMatrix> {
    let mut e = TriMatrix::identity(ring, n);
    match op {
        ColOp::AddMultiple { target, source, factor } => {
            if target <= source || target >= n {
                return Err(Error::IllegalDirection(format!("column {source} to column {target}")));
            }
            e.set(source, target, factor);
        }
        ColOp::Scale { col, factor } => e.set(col, col, factor),
    }
    Ok(e)
}

impl BlockParts {
    /// Reassembles `(M v; 0 c)`.
    pub fn reassemble(&self) -> TriMatrix {
        let k = self.m.n;
        let ring = self.m.ring.clone();
        let mut out = TriMatrix::zero(&ring, k + 1);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.m.get(i, j));
            }
            out.set(i, k, self.v[i]);
        }
        out.set(k, k, self.c);
        out
    }
}

/// Linear part of an affine map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Linear {
    /// `X = λI`.
    Scaling(usize),
    /// Upper triangular `X`.
    Triangular(TriMatrix),
    /// Arbitrary square `X`, row-major. Only used for the full affine monoid.
    Dense(Vec<Vec<usize>>),
}

/// An affine map `v ↦ vX + c` on row vectors of length `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub dim: usize,
    pub linear: Linear,
    pub offset: Vec<usize>,
    pub ring: Arc<SemiringTable>,
}

impl AffineMap {
    pub fn scaling(ring: &Arc<SemiringTable>, lambda: usize, offset: Vec<usize>) -> Self {
        AffineMap { dim: offset.len(), linear: Linear::Scaling(lambda), offset, ring: ring.clone() }
    }

    pub fn triangular(x: TriMatrix, offset: Vec<usize>) -> Result<Self> {
        if x.n() != offset.len() {
            return Err(Error::DimensionMismatch(x.n(), offset.len()));
        }
        let ring = x.ring().clone();
        Ok(AffineMap { dim: offset.len(), linear: Linear::Triangular(x), offset, ring })
    }

    fn linear_entry(&self, i: usize, j: usize) -> usize {
        match &self.linear {
            Linear::Scaling(l) => {
                if i == j {
                    *l
                } else {
                    self.ring.zero()
                }
            }
            Linear::Triangular(x) => x.get(i, j),
            Linear::Dense(x) => x[i][j],
        }
    }

    /// `vX + c`.
    pub fn apply(&self, v: &[usize]) -> Vec<usize> {
        let r = &self.ring;
        (0..self.dim)
            .map(|j| {
                let mut acc = r.zero();
                for (i, &vi) in v.iter().enumerate() {
                    acc = r.add(acc, r.mul(vi, self.linear_entry(i, j)));
                }
                r.add(acc, self.offset[j])
            })
            .collect()
    }

    /// The map as a transformation of `R^dim`, points indexed by [`vector_index`].
    pub fn transformation(&self) -> Vec<u32> {
        let q = self.ring.size();
        (0..q.pow(self.dim as u32))
            .map(|p| vector_index(q, &self.apply(&index_vector(q, self.dim, p))) as u32)
            .collect()
    }

    /// `M_f = (1 c; 0 X)`, an `(dim + 1)`-square upper triangular matrix.
    pub fn to_matrix(&self) -> Result<TriMatrix> {
        if let Linear::Dense(x) = &self.linear {
            for i in 0..self.dim {
                for j in 0..i {
                    if x[i][j] != self.ring.zero() {
                        return Err(Error::NotTriangular(i + 1, j + 1));
                    }
                }
            }
        }
        let n = self.dim + 1;
        let mut m = TriMatrix::zero(&self.ring, n);
        m.set(0, 0, self.ring.one());
        for j in 0..self.dim {
            m.set(0, j + 1, self.offset[j]);
            for i in 0..self.dim {
                m.set(i + 1, j + 1, self.linear_entry(i, j));
            }
        }
        debug_assert!(m.is_triangular());
        Ok(m)
    }
}

/// Index of a vector of `R^d`, reading coordinates as base-`q` digits, first coordinate most significant.
pub fn vector_index(q: usize, v: &[usize]) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

pub fn index_vector(q: usize, dim: usize, mut idx: usize) -> Vec<usize> {
    let mut v = vec![0; dim];
    for slot in v.iter_mut().rev() {
        *slot = idx % q;
        idx /= q;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32) -> Arc<SemiringTable> {
        Arc::new(SemiringTable::prime_field(p).unwrap())
    }

    fn m(r: &Arc<SemiringTable>, rows: &[&[usize]]) -> TriMatrix {
        TriMatrix::from_rows(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let z2 = z(2);
        let u = m(&z2, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.mul(&u).unwrap(), TriMatrix::identity(&z2, 2));
        let z3 = z(3);
        let a = m(&z3, &[&[2, 1], &[0, 2]]);
        assert_eq!(a.mul(&TriMatrix::identity(&z3, 2)).unwrap(), a);
        let b = Arc::new(SemiringTable::boolean());
        let u = m(&b, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.mul(&u).unwrap(), u);
    }

    #[test]
    fn multiplication_errors() {
        let z2 = z(2);
        let z3 = z(3);
        assert!(matches!(
            TriMatrix::identity(&z2, 2).mul(&TriMatrix::identity(&z2, 3)),
            Err(Error::DimensionMismatch(2, 3))
        ));
        assert!(matches!(TriMatrix::identity(&z2, 2).mul(&TriMatrix::identity(&z3, 2)), Err(Error::RingMismatch)));
        assert!(matches!(TriMatrix::from_rows(&z2, &[vec![1, 0], vec![1, 1]]), Err(Error::NotTriangular(1, 0))));
    }

    #[test]
    fn classification() {
        let z3 = z(3);
        let c = TriMatrix::diagonal(&z3, &[1, 0]).classify();
        assert!(c.triangular && c.unitriangular && c.subidentity);
        let c = m(&z3, &[&[1, 2], &[0, 1]]).classify();
        assert!(c.unitriangular && !c.subidentity);
        let c = m(&z3, &[&[2, 0], &[0, 1]]).classify();
        assert!(c.triangular && !c.unitriangular && !c.subidentity);
    }

    #[test]
    fn row_and_column_operations() {
        let z2 = z(2);
        let i2 = TriMatrix::identity(&z2, 2);
        let op = RowOp::AddMultiple { target: 0, source: 1, factor: 1 };
        assert_eq!(i2.apply_row_op(op).unwrap(), m(&z2, &[&[1, 1], &[0, 1]]));
        let z3 = z(3);
        let u = m(&z3, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.apply_row_op(RowOp::Scale { row: 0, factor: 0 }).unwrap(), m(&z3, &[&[0, 0], &[0, 1]]));
        assert!(matches!(
            u.apply_row_op(RowOp::AddMultiple { target: 1, source: 0, factor: 1 }),
            Err(Error::IllegalDirection(_))
        ));
        assert!(matches!(
            u.apply_col_op(ColOp::AddMultiple { target: 0, source: 1, factor: 1 }),
            Err(Error::IllegalDirection(_))
        ));
        let op = ColOp::AddMultiple { target: 1, source: 0, factor: 2 };
        assert_eq!(u.apply_col_op(op).unwrap(), m(&z3, &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn block_decomposition() {
        let z3 = z(3);
        let parts = m(&z3, &[&[2, 1], &[0, 2]]).block_decompose().unwrap();
        assert_eq!(parts.m, m(&z3, &[&[2]]));
        assert_eq!((parts.v.clone(), parts.c), (vec![1], 2));
        let z2 = z(2);
        let parts = TriMatrix::identity(&z2, 3).block_decompose().unwrap();
        assert_eq!(parts.m, TriMatrix::identity(&z2, 2));
        assert_eq!((parts.v.clone(), parts.c), (vec![0, 0], 1));
        assert_eq!(parts.reassemble(), TriMatrix::identity(&z2, 3));
        let parts = TriMatrix::zero(&z2, 2).block_decompose().unwrap();
        assert_eq!((parts.m.get(0, 0), parts.v.clone(), parts.c), (0, vec![0], 0));
        assert!(matches!(TriMatrix::identity(&z2, 1).block_decompose(), Err(Error::DimensionTooSmall(1))));
    }

    #[test]
    fn affine_examples() {
        let z3 = z(3);
        let f = AffineMap::scaling(&z3, 2, vec![1]);
        assert_eq!(f.to_matrix().unwrap(), m(&z3, &[&[1, 1], &[0, 2]]));
        let z2 = z(2);
        let id = AffineMap::scaling(&z2, 1, vec![0, 0]);
        assert_eq!(id.to_matrix().unwrap(), TriMatrix::identity(&z2, 3));
        let c = AffineMap::scaling(&z2, 0, vec![1, 0]);
        assert_eq!(c.to_matrix().unwrap(), m(&z2, &[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn affine_action_matches_matrix() {
        // (1, v) M_f = (1, v f) for every v.
        let z3 = z(3);
        let x = m(&z3, &[&[2, 1], &[0, 1]]);
        let f = AffineMap::triangular(x, vec![1, 2]).unwrap();
        let mf = f.to_matrix().unwrap();
        for p in 0..9 {
            let v = index_vector(3, 2, p);
            let mut row = vec![1];
            row.extend(&v);
            let image: Vec<usize> = (0..3)
                .map(|j| (0..3).fold(0, |acc, i| z3.add(acc, z3.mul(row[i], mf.get(i, j)))))
                .collect();
            let mut expected = vec![1];
            expected.extend(f.apply(&v));
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn vector_indexing_roundtrip() {
        for idx in 0..27 {
            assert_eq!(vector_index(3, &index_vector(3, 3, idx)), idx);
        }
    }
}
