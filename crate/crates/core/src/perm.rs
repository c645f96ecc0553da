//! Permutations of a field materialized as image tables.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::map::{eval_table, FieldFn};
use crate::poly::SparsePoly;

/// A bijection of GF(p^n), `images[a] = f(a)` by literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermMap {
    ctx_id: u64,
    images: Vec<u32>,
}

/// Cycle decomposition summary. `order` is the lcm of the cycle lengths,
/// i.e. the least n >= 1 with f^(n) = identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub bijective: bool,
    #[serde(serialize_with = "serialize_big")]
    pub order: BigUint,
    pub cycle_type: BTreeMap<u64, u64>,
    pub fixed_points: u64,
}

/// Writes a big integer as a JSON number when it fits in u64, otherwise as
/// a decimal string.
pub fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

impl PermMap {
    /// Wraps an image table, rejecting non-bijections with the first
    /// colliding pair (in literal order).
    pub fn from_table(ctx: &FieldCtx, images: Vec<u32>) -> Result<Self> {
        if images.len() != ctx.size() {
            return Err(Error::bad(format!(
                "table has {} entries, field has {}",
                images.len(),
                ctx.size()
            )));
        }
        let mut first_preimage = vec![u32::MAX; images.len()];
        for (x, &y) in images.iter().enumerate() {
            let slot = first_preimage
                .get_mut(y as usize)
                .ok_or_else(|| Error::bad(format!("image {y} out of range")))?;
            if *slot != u32::MAX {
                return Err(Error::NotBijective {
                    a: Elem(*slot),
                    b: Elem(x as u32),
                });
            }
            *slot = x as u32;
        }
        Ok(PermMap {
            ctx_id: ctx.id(),
            images,
        })
    }

    pub fn from_fn(ctx: &FieldCtx, f: &dyn FieldFn) -> Result<Self> {
        Self::from_table(ctx, eval_table(ctx, f)?)
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        PermMap {
            ctx_id: ctx.id(),
            images: (0..ctx.order() as u32).collect(),
        }
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx_id
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: Elem) -> Elem {
        Elem(self.images[x.index()])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &PermMap) -> Result<PermMap> {
        if self.ctx_id != inner.ctx_id {
            return Err(Error::CtxMismatch);
        }
        Ok(PermMap {
            ctx_id: self.ctx_id,
            images: inner.images.iter().map(|&y| self.images[y as usize]).collect(),
        })
    }

    pub fn invert(&self) -> PermMap {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        PermMap {
            ctx_id: self.ctx_id,
            images: inv,
        }
    }

    /// `f^(n)`; `f^(0)` is the identity and `f^(-n) = (f^-1)^(n)`.
    pub fn functional_power(&self, n: i64) -> PermMap {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PermMap {
            ctx_id: self.ctx_id,
            images: (0..self.images.len() as u32).collect(),
        };
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).expect("same field");
            }
        }
        acc
    }

    pub fn cycle_structure(&self) -> CycleReport {
        let mut visited = vec![false; self.images.len()];
        let mut cycle_type: BTreeMap<u64, u64> = BTreeMap::new();
        for start in 0..self.images.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = self.images[cur] as usize;
                len += 1;
            }
            *cycle_type.entry(len).or_default() += 1;
        }
        let order = cycle_type
            .keys()
            .fold(BigUint::one(), |acc, &l| acc.lcm(&BigUint::from(l)));
        CycleReport {
            bijective: true,
            order,
            fixed_points: cycle_type.get(&1).copied().unwrap_or(0),
            cycle_type,
        }
    }

    /// True iff f^(n) is the identity, i.e. every cycle length divides n.
    pub fn is_ncycle(&self, n: u64) -> bool {
        n >= 1 && self.cycle_structure().cycle_type.keys().all(|&l| n % l == 0)
    }
}

impl FieldFn for PermMap {
    fn apply(&self, _ctx: &FieldCtx, x: Elem) -> Elem {
        Elem(self.images[x.index()])
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        if self.ctx_id == ctx.id() {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }
}

/// Evaluates `poly` on every element; a permutation or the first colliding
/// pair of preimages.
pub fn perm_from_poly(ctx: &FieldCtx, poly: &SparsePoly) -> Result<PermMap> {
    PermMap::from_fn(ctx, poly)
}

pub fn compose(f: &PermMap, g: &PermMap) -> Result<PermMap> {
    f.compose(g)
}

pub fn functional_power(f: &PermMap, n: i64) -> PermMap {
    f.functional_power(n)
}

pub fn invert(f: &PermMap) -> PermMap {
    f.invert()
}

pub fn cycle_structure(f: &PermMap) -> CycleReport {
    f.cycle_structure()
}

pub fn is_ncycle(f: &PermMap, n: u64) -> bool {
    f.is_ncycle(n)
}
