use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nt::rem_euclid;

/// Largest q accepted by the congruence solver.
pub const JIEGUO_MAX_Q: u64 = 1 << 24;

/// A solution `(t, m)` of the triple-cycle congruences modulo `q + 1`.
/// `degenerate` marks pairs whose `h` collapses to the constant 1 on
/// `mu_{q+1}`, so that `f` is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct JieguoPair {
    pub t: u64,
    pub m: u64,
    pub degenerate: bool,
}

pub(crate) fn two_power_exponent(q: u64) -> Option<u32> {
    (q >= 2 && q.is_power_of_two()).then(|| q.trailing_zeros())
}

/// True iff `(t, m)` satisfies, modulo `q + 1`,
/// `-6t + 12t^2 - 8t^3 = 0`, `-3m + 6mt - 4mt^2 = 0`,
/// `-m - mt + t + t^2 = 0` and `13m - 13t = 0`.
pub fn jieguo_congruences_hold(q: u64, t: u64, m: u64) -> bool {
    let md = q + 1;
    let (t, m) = ((t % md) as i128, (m % md) as i128);
    let r = |v: i128| rem_euclid(v, md);
    let t2 = r(t * t) as i128;
    let t3 = r(t2 * t) as i128;
    r(-6 * t + 12 * t2 - 8 * t3) == 0
        && r(-3 * m + 6 * r(m * t) as i128 - 4 * r(m * t2) as i128) == 0
        && r(-m - r(m * t) as i128 + t + t2) == 0
        && r(13 * (m - t)) == 0
}

/// Exponents of `h = x^m + x^(mq - 2tq) + x^t`, reduced mod `q + 1`.
pub(crate) fn jieguo_exponents(q: u64, t: u64, m: u64) -> [u64; 3] {
    let md = q + 1;
    let (t, m) = (t % md, m % md);
    let mid = rem_euclid(m as i128 * q as i128 - 2 * t as i128 * q as i128, md);
    [m, mid, t]
}

/// Over characteristic 2 equal exponents cancel in pairs; `h` is the
/// constant 1 iff the surviving exponents are exactly `{0}`.
pub(crate) fn jieguo_is_degenerate(q: u64, t: u64, m: u64) -> bool {
    let mut odd: Vec<u64> = Vec::new();
    for v in jieguo_exponents(q, t, m) {
        match odd.iter().position(|&w| w == v) {
            Some(i) => {
                odd.remove(i);
            }
            None => odd.push(v),
        }
    }
    odd == [0]
}

pub(crate) fn check_jieguo_q(q: u64) -> Result<u32> {
    let e = two_power_exponent(q).ok_or_else(|| Error::bad(format!("q = {q} is not a power of 2")))?;
    if e % 12 != 6 {
        return Err(Error::bad(format!("q = 2^{e} is not of the form 2^(12k - 6)")));
    }
    if q > JIEGUO_MAX_Q {
        return Err(Error::CapExceeded {
            size: q,
            cap: JIEGUO_MAX_Q,
        });
    }
    Ok(e)
}

/// Every `(t, m)` in `[0, q + 1)^2` satisfying the congruences, sorted.
/// Only `m = t + j (q + 1) / 13` can satisfy `13 (m - t) = 0`, so the scan
/// runs over `t` and `j < 13`.
pub fn solve_jieguo_congruences(q: u64) -> Result<Vec<JieguoPair>> {
    check_jieguo_q(q)?;
    let md = q + 1;
    let step = md / 13;
    let mut out: Vec<JieguoPair> = (0..md)
        .into_par_iter()
        .flat_map_iter(|t| {
            (0..13u64).filter_map(move |j| {
                let m = (t + j * step) % md;
                jieguo_congruences_hold(q, t, m).then(|| JieguoPair {
                    t,
                    m,
                    degenerate: jieguo_is_degenerate(q, t, m),
                })
            })
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Every `k` in `[1, 7(q - 1)]` with `7k = 0 mod (q - 1)` and
/// `k = 3 mod 7`, for `q = 2^(3m')`.
pub fn search_k_2to3m(q: u64) -> Result<Vec<u64>> {
    match two_power_exponent(q) {
        Some(e) if e % 3 == 0 => {}
        _ => return Err(Error::bad(format!("q = {q} is not of the form 2^(3m)"))),
    }
    let qm1 = q - 1;
    // 7 | q - 1 here, so 7k = 0 mod (q - 1) means k is a multiple of (q - 1) / 7
    let base = qm1 / 7;
    Ok((1..=49u64).map(|j| j * base).filter(|k| k % 7 == 3).collect())
}
