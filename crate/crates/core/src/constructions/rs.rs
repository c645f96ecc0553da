use num_bigint::BigUint;

use super::search::{
    check_jieguo_q, jieguo_congruences_hold, jieguo_exponents, jieguo_is_degenerate, two_power_exponent,
};
use super::{elem_value, params, Family, FamilyInstance, Form};
use crate::criteria;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::poly::SparsePoly;

/// Checks `ctx = GF(q^m)` with `q = 2^e`; returns `e`.
fn binary_extension(ctx: &FieldCtx, q: u64, m: u32) -> Result<u32> {
    let e = two_power_exponent(q).ok_or_else(|| Error::bad(format!("q = {q} is not a power of 2")))?;
    if ctx.p() != 2 || ctx.n() != e * m {
        return Err(Error::bad(format!(
            "field must be GF({q}^{m}), got GF({}^{})",
            ctx.p(),
            ctx.n()
        )));
    }
    Ok(e)
}

fn trinomial(ctx: &FieldCtx, mid: Elem, exps: [u64; 3]) -> SparsePoly {
    SparsePoly::new(
        ctx,
        [Elem::ONE, mid, Elem::ONE]
            .into_iter()
            .zip(exps)
            .map(|(c, e)| (c, BigUint::from(e))),
    )
}

/// `x (1 + x^(k(q^2+q+1)) + x^(2k(q^2+q+1)))` over GF(q^3), `q = 2^(3m')`,
/// with `7k = 0 mod (q - 1)` and `k = 3 mod 7`.
pub fn build_rs_2to3m(ctx: &FieldCtx, q: u64, k: u64) -> Result<FamilyInstance> {
    let e = binary_extension(ctx, q, 3)?;
    if e % 3 != 0 {
        return Err(Error::bad(format!("q = {q} is not of the form 2^(3m)")));
    }
    if (7 * k as u128) % (q as u128 - 1) != 0 {
        return Err(Error::bad(format!(
            "7k = {} is not 0 mod q - 1 = {}",
            7 * k as u128,
            q - 1
        )));
    }
    if k % 7 != 3 {
        return Err(Error::bad(format!("k = {k} is not 3 mod 7")));
    }
    let h = trinomial(ctx, Elem::ONE, [0, k, 2 * k]);
    let form = Form::Rs {
        h,
        r: 1,
        s: q * q + q + 1,
        single: None,
    };
    let ps = params(vec![("q", q.into()), ("k", k.into())]);
    Ok(FamilyInstance::new(Family::Rs2to3m, ps, ctx, form, 3, Vec::new()))
}

/// `x^q h(x^(q-1))` over GF(q^3), `q = 4^m'`, with
/// `h = 1 + alpha x^((q^2+q+1)/3) + x^(2(q^2+q+1)/3)` and `alpha^3 = 1`.
pub fn build_xq_h_alpha(ctx: &FieldCtx, q: u64, alpha: Elem) -> Result<FamilyInstance> {
    let e = binary_extension(ctx, q, 3)?;
    if e % 2 != 0 {
        return Err(Error::bad(format!("q = {q} is not a power of 4")));
    }
    if !ctx.in_subfield(alpha, e)? || ctx.pow(alpha, 3) != Elem::ONE {
        return Err(Error::bad(format!(
            "alpha = {alpha} must lie in GF({q}) with alpha^3 = 1"
        )));
    }
    let third = (q * q + q + 1) / 3;
    let h = trinomial(ctx, alpha, [0, third, 2 * third]);
    let mut notes = Vec::new();
    if let Some(y) = ctx
        .subgroup_mu(q * q + q + 1)?
        .into_iter()
        .find(|&y| h.eval_unchecked(ctx, y).is_zero())
    {
        notes.push(format!("h({y}) = 0 on mu_(q^2+q+1), so f is not a permutation"));
    }
    let form = Form::Rs {
        h,
        r: q,
        s: q - 1,
        single: Some((Elem::ONE, q)),
    };
    let ps = params(vec![("q", q.into()), ("alpha", elem_value(alpha))]);
    Ok(FamilyInstance::new(Family::XqHAlpha, ps, ctx, form, 3, notes))
}

/// `x h(x^(q-1))` over GF(q^2) with `h = x^m + x^(mq - 2tq) + x^t`, for
/// `(t, m)` solving the congruences modulo `q + 1`. Exponents of `h` are
/// reduced mod `q + 1`, which does not change its values on `mu_{q+1}`.
pub fn build_jieguo(ctx: &FieldCtx, q: u64, t: u64, m: u64) -> Result<FamilyInstance> {
    check_jieguo_q(q)?;
    binary_extension(ctx, q, 2)?;
    if !jieguo_congruences_hold(q, t, m) {
        return Err(Error::bad(format!(
            "(t, m) = ({t}, {m}) does not solve the congruences mod {}",
            q + 1
        )));
    }
    let exps = jieguo_exponents(q, t, m);
    let h = SparsePoly::new(ctx, exps.iter().map(|&e| (Elem::ONE, BigUint::from(e))));
    let mut notes = vec![format!(
        "exponents of h reduced mod q + 1 = {}: [{}, {}, {}]",
        q + 1,
        exps[0],
        exps[1],
        exps[2]
    )];
    if jieguo_is_degenerate(q, t, m) {
        notes.push("degenerate: h = 1 on mu_{q+1}, f is the identity (order 1)".into());
    }
    let form = Form::Rs {
        h,
        r: 1,
        s: q - 1,
        single: None,
    };
    let ps = params(vec![("q", q.into()), ("t", t.into()), ("m", m.into())]);
    Ok(FamilyInstance::new(Family::Jieguo, ps, ctx, form, 3, notes))
}

/// `x + theta Tr_{q^3/q}(x^((q^2+q)/2))` over GF(q^3), `q = 4^m'`,
/// `theta^3 = 1`, `theta != 1`, with inverse
/// `x + theta^2 Tr_{q^3/q}(x^((q^2+q)/2))`.
pub fn build_trace_theta(ctx: &FieldCtx, q: u64, theta: Elem) -> Result<FamilyInstance> {
    let e = binary_extension(ctx, q, 3)?;
    if e % 2 != 0 {
        return Err(Error::bad(format!("q = {q} is not a power of 4")));
    }
    if theta == Elem::ONE || !ctx.in_subfield(theta, e)? || ctx.pow(theta, 3) != Elem::ONE {
        return Err(Error::bad(format!(
            "theta = {theta} must lie in GF({q}) with theta^3 = 1, theta != 1"
        )));
    }
    let form = Form::TraceTheta {
        theta,
        exp: BigUint::from((q * q + q) / 2),
        sub_degree: e,
    };
    let ps = params(vec![("q", q.into()), ("theta", elem_value(theta))]);
    let inst = FamilyInstance::new(Family::TraceTheta, ps, ctx, form, 3, Vec::new());
    let inv = inst.inverse.as_ref().expect("trace_theta has an inverse");
    if !criteria::closed_inverse_check(ctx, &inst.f, inv)?.holds {
        return Err(Error::NotPermutation("f(f(x)) differs from the stated inverse".into()));
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::perm::PermMap;

    fn cube_roots(ctx: &FieldCtx) -> Vec<Elem> {
        ctx.elements().filter(|&a| ctx.pow(a, 3) == Elem::ONE).collect()
    }

    #[test]
    fn rs_2to3m_over_gf512() {
        let ctx = make_field(2, 9, None).unwrap();
        let inst = build_rs_2to3m(&ctx, 8, 3).unwrap();
        assert!(inst.criterion().unwrap().holds);
        assert!(PermMap::from_fn(&ctx, &inst.f).unwrap().is_ncycle(3));
        assert!(build_rs_2to3m(&ctx, 8, 10).is_ok());
        assert!(build_rs_2to3m(&ctx, 8, 4).is_err());
    }

    #[test]
    fn xq_h_alpha_over_gf64() {
        let ctx = make_field(2, 6, None).unwrap();
        let roots = cube_roots(&ctx);
        assert_eq!(roots.len(), 3);
        for alpha in roots {
            let inst = build_xq_h_alpha(&ctx, 4, alpha).unwrap();
            if alpha == Elem::ONE {
                // 1 + y + y^2 vanishes at the primitive cube roots of unity
                assert!(!inst.criterion().unwrap().holds);
                assert!(PermMap::from_fn(&ctx, &inst.f).is_err());
                assert_eq!(inst.notes.len(), 1);
                continue;
            }
            assert!(inst.criterion().unwrap().holds);
            assert!(inst.secondary_criterion().unwrap().unwrap().holds);
            assert!(PermMap::from_fn(&ctx, &inst.f).unwrap().is_ncycle(3));
            assert!(inst.notes.is_empty());
        }
        let gf512 = make_field(2, 9, None).unwrap();
        assert!(build_xq_h_alpha(&gf512, 8, Elem::ONE).is_err());
    }

    #[test]
    fn jieguo_example() {
        let ctx = make_field(2, 12, None).unwrap();
        let inst = build_jieguo(&ctx, 64, 25, 5).unwrap();
        let Form::Rs { h, .. } = &inst.form else { unreachable!() };
        assert_eq!(h.to_string(), "1*x^5+1*x^25+1*x^45");
        assert!(inst.criterion().unwrap().holds);
        assert!(build_jieguo(&ctx, 64, 25, 6).is_err());
        let zero = build_jieguo(&ctx, 64, 0, 0).unwrap();
        assert!(zero.notes.iter().any(|n| n.starts_with("degenerate")));
        assert!(PermMap::from_fn(&ctx, &zero.f).unwrap().is_identity());
    }

    #[test]
    fn trace_theta_inverse() {
        let ctx = make_field(2, 6, None).unwrap();
        for theta in cube_roots(&ctx) {
            if theta == Elem::ONE {
                assert!(build_trace_theta(&ctx, 4, theta).is_err());
                continue;
            }
            let inst = build_trace_theta(&ctx, 4, theta).unwrap();
            let f = PermMap::from_fn(&ctx, &inst.f).unwrap();
            let inv = PermMap::from_fn(&ctx, inst.inverse.as_ref().unwrap()).unwrap();
            assert_eq!(f.functional_power(2), inv);
            assert!(f.compose(&inv).unwrap().is_identity());
            assert!(f.is_ncycle(3) && !f.is_identity());
        }
    }
}
