//! Element keys and multiplication oracles.
//!
//! Every element handled by the engine is a canonical byte string. A
//! [`Carrier`] multiplies keys; enumerated monoids, wreath contexts, direct
//! products, matrix semigroups and full transformation monoids are all
//! carriers, so certificates can be checked against any of them uniformly.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidSpec};
use crate::semiring::{SemiringJson, SemiringTable};
use crate::trimat::TriMatrix;
use crate::wreath::WreathContext;

/// Canonical byte encoding of an element.
pub type Key = Vec<u8>;

/// A multiplication oracle on keys, with a two-sided identity.
pub trait Carrier: Send + Sync {
    fn label(&self) -> String;
    fn identity(&self) -> Key;
    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key>;
    /// Serializable description from which an equivalent carrier can be rebuilt.
    fn spec(&self) -> CarrierSpec;
    /// Human-readable structure of an element, used in exports.
    fn render(&self, key: &[u8]) -> serde_json::Value {
        serde_json::Value::String(hex::encode(key))
    }
    /// The carrier as an enumerated monoid, when it is one.
    fn as_monoid(self: Arc<Self>) -> Option<Arc<Monoid>> {
        None
    }
}

impl fmt::Debug for dyn Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Carrier({})", self.label())
    }
}

/// Serializable carrier description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CarrierSpec {
    Matrix { n: usize, ring: SemiringJson },
    Transformations { degree: usize },
    Constants { points: usize },
    Product { factors: Vec<CarrierSpec> },
    Monoid(MonoidSpec),
    Wreath { top: MonoidSpec, base: MonoidSpec },
}

impl CarrierSpec {
    pub fn build(&self) -> Result<Arc<dyn Carrier>> {
        Ok(match self {
            CarrierSpec::Matrix { n, ring } => {
                Arc::new(MatrixCarrier::new(Arc::new(SemiringTable::from_json(ring)?), *n))
            }
            CarrierSpec::Transformations { degree } => Arc::new(TransformationCarrier::new(*degree)),
            CarrierSpec::Constants { points } => Arc::new(ConstantsCarrier::new(*points)),
            CarrierSpec::Product { factors } => {
                Arc::new(ProductCarrier::new(factors.iter().map(|f| f.build()).collect::<Result<_>>()?))
            }
            CarrierSpec::Monoid(spec) => spec.build()?,
            CarrierSpec::Wreath { top, base } => Arc::new(WreathContext::new(top.build()?, base.build()?)),
        })
    }
}

pub fn encode_u32s(values: &[u32]) -> Key {
    values.iter().flat_map(|v| v.to_le_bytes()).collect()
}

pub fn decode_u32s(key: &[u8]) -> Result<Vec<u32>> {
    if !key.len().is_multiple_of(4) {
        return Err(Error::MalformedKey(format!("length {} is not a multiple of 4", key.len())));
    }
    Ok(key.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect())
}

/// Length-prefixed concatenation of component keys.
pub fn encode_tuple<K: AsRef<[u8]>>(parts: &[K]) -> Key {
    let mut out = Vec::new();
    for p in parts {
        let p = p.as_ref();
        out.extend((p.len() as u32).to_le_bytes());
        out.extend(p);
    }
    out
}

pub fn decode_tuple(key: &[u8], arity: usize) -> Result<Vec<&[u8]>> {
    let mut parts = Vec::with_capacity(arity);
    let mut rest = key;
    for _ in 0..arity {
        if rest.len() < 4 {
            return Err(Error::MalformedKey("truncated tuple".into()));
        }
        let len = u32::from_le_bytes([rest[0], rest[1], rest[2], rest[3]]) as usize;
        if rest.len() < 4 + len {
            return Err(Error::MalformedKey("truncated tuple component".into()));
        }
        parts.push(&rest[4..4 + len]);
        rest = &rest[4 + len..];
    }
    if !rest.is_empty() {
        return Err(Error::MalformedKey("trailing bytes after tuple".into()));
    }
    Ok(parts)
}

/// All `n × n` upper triangular matrices over a semiring, under multiplication.
pub struct MatrixCarrier {
    n: usize,
    ring: Arc<SemiringTable>,
}

impl MatrixCarrier {
    pub fn new(ring: Arc<SemiringTable>, n: usize) -> Self {
        MatrixCarrier { n, ring }
    }

    pub fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn decode(&self, key: &[u8]) -> Result<TriMatrix> {
        TriMatrix::from_key(&self.ring, self.n, key)
    }
}

impl Carrier for MatrixCarrier {
    fn label(&self) -> String {
        format!("T_{}({})", self.n, self.ring.label())
    }

    fn identity(&self) -> Key {
        TriMatrix::identity(&self.ring, self.n).key()
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        Ok(self.decode(a)?.mul(&self.decode(b)?)?.key())
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Matrix { n: self.n, ring: self.ring.to_json() }
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match self.decode(key) {
            Ok(m) => serde_json::json!(m.rows()),
            Err(_) => serde_json::Value::String(hex::encode(key)),
        }
    }
}

/// The full transformation monoid on `{0, .., degree-1}`, maps acting on the
/// right: `(f g)(x) = g(f(x))`.
pub struct TransformationCarrier {
    degree: usize,
}

impl TransformationCarrier {
    pub fn new(degree: usize) -> Self {
        TransformationCarrier { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn decode(&self, key: &[u8]) -> Result<Vec<u32>> {
        let images = decode_u32s(key)?;
        if images.len() != self.degree || images.iter().any(|&x| x as usize >= self.degree) {
            return Err(Error::MalformedKey(format!("not a transformation of degree {}", self.degree)));
        }
        Ok(images)
    }

    pub fn constant(&self, x: u32) -> Key {
        encode_u32s(&vec![x; self.degree])
    }
}

/// Composes two image tables: first `f`, then `g`.
pub fn compose_maps(f: &[u32], g: &[u32]) -> Vec<u32> {
    f.iter().map(|&x| g[x as usize]).collect()
}

impl Carrier for TransformationCarrier {
    fn label(&self) -> String {
        format!("Full({})", self.degree)
    }

    fn identity(&self) -> Key {
        encode_u32s(&(0..self.degree as u32).collect::<Vec<_>>())
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        Ok(encode_u32s(&compose_maps(&self.decode(a)?, &self.decode(b)?)))
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Transformations { degree: self.degree }
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match self.decode(key) {
            Ok(images) => serde_json::json!(images),
            Err(_) => serde_json::Value::String(hex::encode(key)),
        }
    }
}

/// The identity together with the constant maps `c_x` of a set of
/// `points`, abstractly: `c_x c_y = c_y`. Keys are `[0]` for the identity
/// and `[1, x]` for `c_x`, as little-endian `u32`s.
pub struct ConstantsCarrier {
    points: usize,
}

impl ConstantsCarrier {
    pub fn new(points: usize) -> Self {
        ConstantsCarrier { points }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn constant(&self, x: usize) -> Key {
        encode_u32s(&[1, x as u32])
    }

    /// `None` for the identity, `Some(x)` for `c_x`.
    pub fn decode(&self, key: &[u8]) -> Result<Option<usize>> {
        match decode_u32s(key)?.as_slice() {
            [0] => Ok(None),
            [1, x] if (*x as usize) < self.points => Ok(Some(*x as usize)),
            _ => Err(Error::MalformedKey(format!("not an element of the constants monoid on {} points", self.points))),
        }
    }
}

impl Carrier for ConstantsCarrier {
    fn label(&self) -> String {
        format!("Const({})", self.points)
    }

    fn identity(&self) -> Key {
        encode_u32s(&[0])
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        self.decode(a)?;
        Ok(match self.decode(b)? {
            Some(_) => b.to_vec(),
            None => a.to_vec(),
        })
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Constants { points: self.points }
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match self.decode(key) {
            Ok(None) => serde_json::json!("id"),
            Ok(Some(x)) => serde_json::json!(format!("c{x}")),
            Err(_) => serde_json::Value::String(hex::encode(key)),
        }
    }
}

/// Componentwise product of carriers.
pub struct ProductCarrier {
    factors: Vec<Arc<dyn Carrier>>,
}

impl ProductCarrier {
    pub fn new(factors: Vec<Arc<dyn Carrier>>) -> Self {
        ProductCarrier { factors }
    }

    pub fn factors(&self) -> &[Arc<dyn Carrier>] {
        &self.factors
    }
}

impl Carrier for ProductCarrier {
    fn label(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.label()).collect();
        format!("({})", parts.join(" × "))
    }

    fn identity(&self) -> Key {
        encode_tuple(&self.factors.iter().map(|f| f.identity()).collect::<Vec<_>>())
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        let xs = decode_tuple(a, self.factors.len())?;
        let ys = decode_tuple(b, self.factors.len())?;
        let parts = self
            .factors
            .iter()
            .zip(xs.iter().zip(&ys))
            .map(|(f, (x, y))| f.mul(x, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(encode_tuple(&parts))
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Product { factors: self.factors.iter().map(|f| f.spec()).collect() }
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match decode_tuple(key, self.factors.len()) {
            Ok(parts) => serde_json::Value::Array(self.factors.iter().zip(parts).map(|(f, p)| f.render(p)).collect()),
            Err(_) => serde_json::Value::String(hex::encode(key)),
        }
    }
}

impl Carrier for Monoid {
    fn label(&self) -> String {
        Monoid::label(self).to_string()
    }

    fn identity(&self) -> Key {
        self.key(self.identity_index()).to_vec()
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        Ok(self.key(self.mul_idx(i, j)).to_vec())
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Monoid(Monoid::spec(self))
    }

    fn as_monoid(self: Arc<Self>) -> Option<Arc<Monoid>> {
        Some(self)
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match self.universe() {
            Some(u) => u.render(key),
            None => match self.index_of(key) {
                Some(i) => serde_json::json!(i),
                None => serde_json::Value::String(hex::encode(key)),
            },
        }
    }
}
