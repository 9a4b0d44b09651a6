//! Wreath products `S ≀ T` of enumerated monoids, multiplied lazily.
//!
//! An element is a pair `(f, a)` with `f` a table from the base `T` (in its
//! canonical order) to the top `S`. The product is
//! `(f, a)(g, b) = (t ↦ f(t) g(t a), ab)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::carrier::{decode_u32s, encode_u32s, Carrier, CarrierSpec, Key};
use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Default bound for [`enumerate_wreath`].
pub const DEFAULT_WREATH_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub table: Vec<u32>,
    pub base: u32,
}

pub struct WreathContext {
    top: Arc<Monoid>,
    base: Arc<Monoid>,
}

impl std::fmt::Debug for WreathContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WreathContext({} ≀ {})", self.top.label(), self.base.label())
    }
}

/// Record that a wreath product over a sub-monoid of the base stands in for
/// the product over the whole base: `C ≀ B′ ≺ C ≀ B` whenever `B′ ⊆ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionStep {
    pub top: String,
    pub base: String,
    pub restricted_base: String,
    pub restricted_order: usize,
}

impl WreathContext {
    pub fn new(top: Arc<Monoid>, base: Arc<Monoid>) -> Self {
        WreathContext { top, base }
    }

    pub fn top(&self) -> &Arc<Monoid> {
        &self.top
    }

    pub fn base(&self) -> &Arc<Monoid> {
        &self.base
    }

    pub fn encode(&self, x: &WreathElement) -> Key {
        let mut values = x.table.clone();
        values.push(x.base);
        encode_u32s(&values)
    }

    pub fn decode(&self, key: &[u8]) -> Result<WreathElement> {
        let mut values = decode_u32s(key)?;
        if values.len() != self.base.len() + 1 {
            return Err(Error::ContextMismatch(format!(
                "table of length {} over a base of order {}",
                values.len().saturating_sub(1),
                self.base.len()
            )));
        }
        let base = values.pop().expect("non-empty");
        if base as usize >= self.base.len() || values.iter().any(|&v| v as usize >= self.top.len()) {
            return Err(Error::ContextMismatch("index outside the top or base monoid".into()));
        }
        Ok(WreathElement { table: values, base })
    }

    pub fn identity_element(&self) -> WreathElement {
        self.constant(self.top.identity_index(), self.base.identity_index())
    }

    pub fn constant(&self, top: usize, base: usize) -> WreathElement {
        WreathElement { table: vec![top as u32; self.base.len()], base: base as u32 }
    }

    pub fn mul_elements(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
        if x.table.len() != self.base.len() || y.table.len() != self.base.len() {
            return Err(Error::ContextMismatch("table length differs from the base order".into()));
        }
        let a = x.base as usize;
        let table = (0..self.base.len())
            .map(|t| {
                let shifted = self.base.mul_idx(t, a);
                self.top.mul_idx(x.table[t] as usize, y.table[shifted] as usize) as u32
            })
            .collect();
        Ok(WreathElement { table, base: self.base.mul_idx(a, y.base as usize) as u32 })
    }

    /// Associativity of the product on random triples of random elements.
    pub fn spot_check(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nt, nb) = (self.top.len(), self.base.len());
        let random = |rng: &mut ChaCha8Rng| WreathElement {
            table: (0..nb).map(|_| rng.gen_range(0..nt) as u32).collect(),
            base: rng.gen_range(0..nb) as u32,
        };
        for _ in 0..samples {
            let (x, y, z) = (random(&mut rng), random(&mut rng), random(&mut rng));
            let left = self.mul_elements(&self.mul_elements(&x, &y)?, &z)?;
            let right = self.mul_elements(&x, &self.mul_elements(&y, &z)?)?;
            if left != right {
                return Err(Error::InvalidMonoid(format!("wreath product {self:?} is not associative")));
            }
        }
        Ok(())
    }
}

impl Carrier for WreathContext {
    fn label(&self) -> String {
        format!("{} ≀ {}", wrap(self.top.label()), wrap(self.base.label()))
    }

    fn identity(&self) -> Key {
        self.encode(&self.identity_element())
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Result<Key> {
        Ok(self.encode(&self.mul_elements(&self.decode(a)?, &self.decode(b)?)?))
    }

    fn spec(&self) -> CarrierSpec {
        CarrierSpec::Wreath { top: self.top.spec(), base: self.base.spec() }
    }

    fn render(&self, key: &[u8]) -> serde_json::Value {
        match self.decode(key) {
            Ok(x) => {
                let table: Vec<_> = x.table.iter().map(|&v| self.top.render(self.top.key(v as usize))).collect();
                serde_json::json!([table, self.base.render(self.base.key(x.base as usize))])
            }
            Err(_) => serde_json::Value::String(hex::encode(key)),
        }
    }
}

fn wrap(label: &str) -> String {
    if label.contains(' ') {
        format!("[{label}]")
    } else {
        label.to_string()
    }
}

/// The whole wreath product as a monoid, tables in lexicographic order
/// (first base element most significant), base index varying fastest.
pub fn enumerate_wreath(ctx: &Arc<WreathContext>, limit: usize) -> Result<Monoid> {
    let (nt, nb) = (ctx.top.len(), ctx.base.len());
    let order = (nt as u64)
        .checked_pow(nb as u32)
        .and_then(|t| t.checked_mul(nb as u64))
        .filter(|&o| o <= limit as u64)
        .ok_or(Error::SizeLimitExceeded { limit: limit as u64 })?;
    let mut elements = Vec::with_capacity(order as usize);
    let mut table = vec![0u32; nb];
    loop {
        for b in 0..nb {
            elements.push(ctx.encode(&WreathElement { table: table.clone(), base: b as u32 }));
        }
        // advance the table like a base-nt counter
        let mut pos = nb;
        loop {
            if pos == 0 {
                let universe: Arc<dyn Carrier> = ctx.clone();
                let label = Carrier::label(&**ctx);
                return Monoid::from_elements(universe, elements, &ctx.identity(), None, &label)
                    .map(|m| m.with_provenance("wreath enumeration"));
            }
            pos -= 1;
            table[pos] += 1;
            if (table[pos] as usize) < nt {
                break;
            }
            table[pos] = 0;
        }
    }
}

/// Right-associated iterated wreath product `S_1 ≀ (S_2 ≀ (⋯ ≀ S_k))`.
/// Inner levels are enumerated, so every inner product must fit `limit`.
pub fn iterated_context(levels: &[Arc<Monoid>], limit: usize) -> Result<WreathContext> {
    if levels.len() < 2 {
        return Err(Error::Precondition("an iterated wreath product needs at least two levels".into()));
    }
    let mut inner = levels[levels.len() - 1].clone();
    for top in levels[1..levels.len() - 1].iter().rev() {
        inner = Arc::new(enumerate_wreath(&Arc::new(WreathContext::new(top.clone(), inner)), limit)?);
    }
    Ok(WreathContext::new(levels[0].clone(), inner))
}

/// Replaces the base of `top ≀ base` by a sub-monoid `sub` whose keys are
/// elements of `base`. Checks that `sub` is closed and shares the identity.
pub fn restrict_base(
    top: &Arc<Monoid>,
    base: &Arc<dyn Carrier>,
    sub: &Arc<Monoid>,
) -> Result<(WreathContext, RestrictionStep)> {
    if base.identity() != sub.key(sub.identity_index()) {
        return Err(Error::NotClosed("sub-monoid does not contain the identity of the base".into()));
    }
    for x in 0..sub.len() {
        for g in sub.generators() {
            let p = base.mul(sub.key(x), sub.key(g))?;
            if sub.index_of(&p).is_none() {
                return Err(Error::NotClosed(format!("product {} leaves the sub-monoid", hex::encode(p))));
            }
        }
    }
    let step = RestrictionStep {
        top: top.label().to_string(),
        base: base.label(),
        restricted_base: sub.label().to_string(),
        restricted_order: sub.len(),
    };
    Ok((WreathContext::new(top.clone(), sub.clone()), step))
}
