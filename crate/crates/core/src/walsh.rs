//! Walsh transforms of permutations and the involution symmetry test.
//!
//! `W_F(u, v) = sum_x w^(Tr(v F(x)) + Tr(u x))` with `w` a primitive p-th
//! root of unity and `Tr` the absolute trace. A value lives in `Z[w]` and is
//! stored as the count vector of each power of `w`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::perm::PermMap;

/// Largest field for which the full spectrum is computed.
pub const WALSH_CAP: u64 = 1 << 12;

/// `sum_j counts[j] * w^j`, canonical: the smallest count is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WalshValue {
    pub counts: Vec<u64>,
}

impl WalshValue {
    /// Canonicalizes raw counts using `1 + w + ... + w^(p-1) = 0`.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        let min = counts.iter().copied().min().unwrap_or(0);
        for c in &mut counts {
            *c -= min;
        }
        WalshValue { counts }
    }

    /// For p = 2 the value is the integer `c_0 - c_1`.
    pub fn as_integer(&self) -> Option<i64> {
        match self.counts[..] {
            [c0, c1] => Some(c0 as i64 - c1 as i64),
            _ => None,
        }
    }
}

fn check_ctx(ctx: &FieldCtx, f: &PermMap) -> Result<()> {
    if f.ctx_id() == ctx.id() {
        Ok(())
    } else {
        Err(Error::CtxMismatch)
    }
}

/// Raw counts `#{x : Tr(v F(x)) + Tr(u x) = j}` by direct summation.
pub fn walsh_counts(ctx: &FieldCtx, f: &PermMap, u: Elem, v: Elem) -> Result<Vec<u64>> {
    check_ctx(ctx, f)?;
    let p = ctx.p();
    let mut counts = vec![0u64; p as usize];
    for x in ctx.elements() {
        let e = ctx.abs_trace(ctx.mul(v, f.apply(x))) + ctx.abs_trace(ctx.mul(u, x));
        counts[(e % p) as usize] += 1;
    }
    Ok(counts)
}

pub fn walsh_coefficient(ctx: &FieldCtx, f: &PermMap, u: Elem, v: Elem) -> Result<WalshValue> {
    Ok(WalshValue::from_counts(walsh_counts(ctx, f, u, v)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshSymmetry {
    pub symmetric: bool,
    /// First `(u, v)` with `u < v` in literal order where `W(u,v) != W(v,u)`.
    pub witness: Option<(Elem, Elem)>,
}

/// Tests `W_F(u, v) = W_F(v, u)` for all pairs, which for a permutation
/// holds exactly when `F` is an involution.
pub fn walsh_involution_test(ctx: &FieldCtx, f: &PermMap) -> Result<WalshSymmetry> {
    check_ctx(ctx, f)?;
    let q = ctx.order();
    if q > WALSH_CAP {
        return Err(Error::CapExceeded {
            size: q,
            cap: WALSH_CAP,
        });
    }
    let tr: Vec<u32> = ctx.elements().map(|a| ctx.abs_trace(a)).collect();
    // Tr(u x) = <w(u), coords(x)> where w(u)_j = Tr(u * x^j).
    let p = ctx.p() as u64;
    let basis: Vec<Elem> = (0..ctx.n()).map(|j| Elem(p.pow(j) as u32)).collect();
    let w_index: Vec<usize> = ctx
        .elements()
        .map(|u| {
            basis
                .iter()
                .rev()
                .fold(0u64, |acc, &b| acc * p + tr[ctx.mul(u, b).index()] as u64) as usize
        })
        .collect();

    let first = if p == 2 {
        let spectra: Vec<Vec<i16>> = ctx
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&v| binary_spectrum(ctx, f, v, &tr))
            .collect();
        first_asymmetric(q, |u, v| spectra[v][w_index[u]] != spectra[u][w_index[v]])
    } else {
        let spectra: Vec<Vec<u16>> = ctx
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&v| pary_spectrum(ctx, f, v, &tr))
            .collect();
        let pw = p as usize;
        first_asymmetric(q, |u, v| {
            let a = &spectra[v][w_index[u] * pw..(w_index[u] + 1) * pw];
            let b = &spectra[u][w_index[v] * pw..(w_index[v] + 1) * pw];
            a != b
        })
    };
    Ok(WalshSymmetry {
        symmetric: first.is_none(),
        witness: first.map(|(u, v)| (Elem(u as u32), Elem(v as u32))),
    })
}

fn first_asymmetric(q: u64, differs: impl Fn(usize, usize) -> bool + Sync) -> Option<(usize, usize)> {
    let q = q as usize;
    (0..q)
        .into_par_iter()
        .find_map_first(|u| ((u + 1)..q).find(|&v| differs(u, v)).map(|v| (u, v)))
}

/// Fast Walsh-Hadamard transform of `x -> (-1)^Tr(v F(x))` over the bit
/// coordinates of `x`.
fn binary_spectrum(ctx: &FieldCtx, f: &PermMap, v: Elem, tr: &[u32]) -> Vec<i16> {
    let mut a: Vec<i16> = ctx
        .elements()
        .map(|x| 1 - 2 * tr[ctx.mul(v, f.apply(x)).index()] as i16)
        .collect();
    let mut h = 1;
    while h < a.len() {
        for block in a.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
    a
}

/// The p-ary analogue, computed in the group ring `Z[Z_p]`: each entry is a
/// vector of p counts and multiplying by `w^k` is a cyclic shift by k.
/// Returns canonical counts, p per index.
fn pary_spectrum(ctx: &FieldCtx, f: &PermMap, v: Elem, tr: &[u32]) -> Vec<u16> {
    let p = ctx.p() as usize;
    let q = ctx.size();
    let mut a = vec![0u16; q * p];
    for x in 0..q {
        let j = tr[ctx.mul(v, f.apply(Elem(x as u32))).index()] as usize;
        a[x * p + j] = 1;
    }
    let mut scratch = vec![0u16; p * p];
    let mut stride = 1;
    while stride < q {
        for base in (0..q).step_by(stride * p) {
            for off in 0..stride {
                for t in 0..p {
                    let src = (base + off + t * stride) * p;
                    scratch[t * p..(t + 1) * p].copy_from_slice(&a[src..src + p]);
                }
                for k in 0..p {
                    let dst = (base + off + k * stride) * p;
                    let out = &mut a[dst..dst + p];
                    out.fill(0);
                    for t in 0..p {
                        let shift = k * t % p;
                        for r in 0..p {
                            out[(r + shift) % p] += scratch[t * p + r];
                        }
                    }
                }
            }
        }
        stride *= p;
    }
    for entry in a.chunks_mut(p) {
        let min = *entry.iter().min().expect("p >= 2");
        for c in entry {
            *c -= min;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::perm::perm_from_poly;
    use crate::poly::SparsePoly;

    fn mono(ctx: &FieldCtx, d: u64) -> PermMap {
        perm_from_poly(ctx, &SparsePoly::from_pairs(ctx, &[(1, d)])).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let ctx = make_field(2, 3, None).unwrap();
        let id = PermMap::identity(&ctx);
        let w00 = walsh_coefficient(&ctx, &id, Elem::ZERO, Elem::ZERO).unwrap();
        assert_eq!(w00.as_integer(), Some(8));
        for u in ctx.nonzero_elements() {
            let w = walsh_coefficient(&ctx, &id, u, u).unwrap();
            assert_eq!(w.as_integer(), Some(8));
        }
        let f9 = make_field(3, 2, None).unwrap();
        let raw = walsh_counts(&f9, &PermMap::identity(&f9), Elem::ZERO, Elem::ZERO).unwrap();
        assert_eq!(raw, vec![9, 0, 0]);
    }

    #[test]
    fn involution_examples() {
        let ctx = make_field(2, 3, None).unwrap();
        assert!(walsh_involution_test(&ctx, &PermMap::identity(&ctx)).unwrap().symmetric);
        let sq = walsh_involution_test(&ctx, &mono(&ctx, 2)).unwrap();
        assert!(!sq.symmetric);
        let (u, v) = sq.witness.unwrap();
        let f = mono(&ctx, 2);
        assert_ne!(
            walsh_coefficient(&ctx, &f, u, v).unwrap(),
            walsh_coefficient(&ctx, &f, v, u).unwrap()
        );
        assert!(walsh_involution_test(&ctx, &mono(&ctx, 6)).unwrap().symmetric);
    }

    #[test]
    fn fast_spectra_match_direct_sums() {
        for (p, n, d) in [(2, 4, 7), (3, 2, 5), (5, 2, 7), (3, 3, 5)] {
            let ctx = make_field(p, n, None).unwrap();
            let f = mono(&ctx, d);
            let tr: Vec<u32> = ctx.elements().map(|a| ctx.abs_trace(a)).collect();
            for v in ctx.elements().step_by(3) {
                for u in ctx.elements().step_by(2) {
                    let direct = walsh_coefficient(&ctx, &f, u, v).unwrap();
                    let pp = p as u64;
                    let w: usize = (0..n).rev().fold(0u64, |acc, j| {
                        acc * pp + tr[ctx.mul(u, Elem(pp.pow(j) as u32)).index()] as u64
                    }) as usize;
                    if p == 2 {
                        let s = binary_spectrum(&ctx, &f, v, &tr);
                        assert_eq!(direct.as_integer(), Some(s[w] as i64));
                    } else {
                        let s = pary_spectrum(&ctx, &f, v, &tr);
                        let pw = p as usize;
                        let got: Vec<u64> = s[w * pw..(w + 1) * pw].iter().map(|&c| c as u64).collect();
                        assert_eq!(direct.counts, got);
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ctx = make_field(2, 13, None).unwrap();
        assert!(matches!(
            walsh_involution_test(&ctx, &PermMap::identity(&ctx)),
            Err(Error::CapExceeded { .. })
        ));
    }
}
