//! Finite semirings with identity, given by explicit operation tables.
//!
//! Elements are dense indices `0..size`. The additive identity and the
//! multiplicative identity are arbitrary indices, so tables read from files do
//! not need to be normalized first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Law, Result};

/// Default upper bound for [`SemiringTable::prime_field`].
pub const DEFAULT_PRIME_BOUND: u32 = 13;

/// A finite semiring with verified axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringTable {
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    zero: u8,
    one: u8,
    label: String,
    field: bool,
}

/// On-disk form: row-major tables of indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringJson {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    #[serde(default)]
    pub label: String,
}

impl SemiringTable {
    /// The prime field `Z_p`, with `p` bounded by [`DEFAULT_PRIME_BOUND`].
    pub fn prime_field(p: u32) -> Result<Self> {
        Self::prime_field_bounded(p, DEFAULT_PRIME_BOUND)
    }

    pub fn prime_field_bounded(p: u32, bound: u32) -> Result<Self> {
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        if p > bound || p > 255 {
            return Err(Error::BoundExceeded { value: p as u64, bound: bound.min(255) as u64 });
        }
        let n = p as usize;
        let add = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u8)).collect();
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a * b) % n) as u8)).collect();
        let table = Self::from_flat(n, add, mul, 0, 1, format!("Z_{p}"))?;
        debug_assert!(table.field);
        Ok(table)
    }

    /// `{0, 1}` with `or` as addition and `and` as multiplication.
    pub fn boolean() -> Self {
        Self::from_flat(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 0, 1, "B".to_string())
            .expect("boolean semiring tables are valid")
    }

    /// Builds a semiring from square tables, running the full axiom suite.
    pub fn from_tables(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 || n > 256 {
            return Err(Error::MalformedTables(format!("size {n} is not in 1..=256")));
        }
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(Error::MalformedTables("tables must be square and of equal size".into()));
        }
        if zero >= n || one >= n {
            return Err(Error::MalformedTables("zero/one out of range".into()));
        }
        let flatten = |t: &[Vec<usize>]| -> Result<Vec<u8>> {
            t.iter()
                .flatten()
                .map(|&x| {
                    if x < n {
                        Ok(x as u8)
                    } else {
                        Err(Error::MalformedTables(format!("entry {x} out of range")))
                    }
                })
                .collect()
        };
        Self::from_flat(n, flatten(add)?, flatten(mul)?, zero as u8, one as u8, label.into())
    }

    pub fn from_json(json: &SemiringJson) -> Result<Self> {
        if json.size != json.add.len() {
            return Err(Error::MalformedTables("size does not match table".into()));
        }
        let label = if json.label.is_empty() { "R".to_string() } else { json.label.clone() };
        Self::from_tables(&json.add, &json.mul, json.zero, json.one, label)
    }

    pub fn to_json(&self) -> SemiringJson {
        let rows = |t: &[u8]| {
            t.chunks(self.size).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
        };
        SemiringJson {
            size: self.size,
            add: rows(&self.add),
            mul: rows(&self.mul),
            zero: self.zero as usize,
            one: self.one as usize,
            label: self.label.clone(),
        }
    }

    fn from_flat(size: usize, add: Vec<u8>, mul: Vec<u8>, zero: u8, one: u8, label: String) -> Result<Self> {
        let mut table = SemiringTable { size, add, mul, zero, one, label, field: false };
        table.verify_axioms()?;
        table.field = table.compute_field_flag();
        Ok(table)
    }

    /// Checks every semiring law; reports the first failing triple.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.size;
        let (z, o) = (self.zero as usize, self.one as usize);
        let fail = |law, a, b, c| Err(Error::AxiomViolation { law, witness: (a, b, c) });
        for a in 0..n {
            if self.add(a, z) != a || self.add(z, a) != a {
                return fail(Law::AdditiveIdentity, a, z, z);
            }
            if self.mul(a, o) != a || self.mul(o, a) != a {
                return fail(Law::MultiplicativeIdentity, a, o, o);
            }
            if self.mul(a, z) != z || self.mul(z, a) != z {
                return fail(Law::ZeroAnnihilates, a, z, z);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail(Law::AdditiveCommutativity, a, b, b);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail(Law::AdditiveAssociativity, a, b, c);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail(Law::MultiplicativeAssociativity, a, b, c);
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail(Law::LeftDistributivity, a, b, c);
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return fail(Law::RightDistributivity, a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_field_flag(&self) -> bool {
        self.size >= 2
            && (0..self.size).all(|a| self.neg(a).is_some())
            && (0..self.size).filter(|&a| a != self.zero()).all(|a| self.inv(a).is_some())
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero as usize
    }

    pub fn one(&self) -> usize {
        self.one as usize
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when every element has an additive inverse and every nonzero
    /// element a two-sided multiplicative inverse.
    pub fn is_field(&self) -> bool {
        self.field
    }

    /// Additive inverse, if any.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.add(a, b) == self.zero())
    }

    /// Two-sided multiplicative inverse, if any.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul(a, b) == self.one() && self.mul(b, a) == self.one())
    }

    /// Elements with a two-sided multiplicative inverse.
    pub fn units(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.inv(a).is_some()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }
}
