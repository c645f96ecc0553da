use num_bigint::BigUint;
use num_traits::Zero;
use serde_json::Value;

use super::{big_value, elem_value, params, subfield_for, Family, FamilyInstance, Form};
use crate::criteria::ShiftParams;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::map::{image_set, FieldFn, MapExpr};
use crate::poly::SparsePoly;

/// The choice of `g` (and `psi`) for `x + g(psi(x))` and its Frobenius
/// variant.
#[derive(Clone, Debug, PartialEq)]
pub enum AdditiveVariant {
    /// `g = Tr_{q^m/q}(H)`.
    TraceG1 { psi: SparsePoly, h: SparsePoly },
    /// `g = H^s` with `s (q - 1) = 0 mod q^m - 1`.
    PowerG2 { psi: SparsePoly, h: SparsePoly, s: BigUint },
    /// `m = 2`, `psi = x + x^q`, `g = c x^s` with `c + c^q = 0`.
    CTraceQ2 { c: Elem, s: u64 },
    /// `m = 3`, `x^q + g(x + x^q + x^(q^2))` with every coefficient of `g`
    /// of trace zero; a triple-cycle.
    XqGTrace { g: SparsePoly },
}

fn poly_value(p: &SparsePoly) -> Value {
    Value::String(p.to_string())
}

fn frob_poly(ctx: &FieldCtx, q: u64, count: u32) -> SparsePoly {
    SparsePoly::new(ctx, (0..count).map(|j| (Elem::ONE, BigUint::from(q).pow(j))))
}

pub fn build_additive(ctx: &FieldCtx, q: u64, variant: AdditiveVariant) -> Result<FamilyInstance> {
    let (sd, m) = subfield_for(ctx, q)?;
    let p = ctx.p() as u64;
    let qm1 = BigUint::from(ctx.order() - 1);
    let x = SparsePoly::x(ctx);
    if let AdditiveVariant::TraceG1 { psi, h } | AdditiveVariant::PowerG2 { psi, h, .. } = &variant {
        if h.is_zero() || psi.is_zero() {
            return Err(Error::bad("H and psi must be nonzero"));
        }
    }
    let (family, phi, psi, g, claimed_n, ps) = match variant {
        AdditiveVariant::TraceG1 { psi, h } => {
            check_psi(ctx, &psi, sd, q)?;
            let g = MapExpr::trace(sd, MapExpr::Poly(h.clone()));
            let ps = params(vec![("psi", poly_value(&psi)), ("H", poly_value(&h))]);
            (Family::AdditiveTraceG1, x.clone(), psi, g, p, ps)
        }
        AdditiveVariant::PowerG2 { psi, h, s } => {
            check_psi(ctx, &psi, sd, q)?;
            if s.is_zero() || (&s * (q - 1)) % &qm1 != BigUint::zero() {
                return Err(Error::bad(format!("s (q - 1) is not 0 mod q^m - 1 for s = {s}")));
            }
            let g = MapExpr::power(MapExpr::Poly(h.clone()), s.clone());
            let ps = params(vec![
                ("psi", poly_value(&psi)),
                ("H", poly_value(&h)),
                ("s", big_value(&s)),
            ]);
            (Family::AdditivePowerG2, x.clone(), psi, g, p, ps)
        }
        AdditiveVariant::CTraceQ2 { c, s } => {
            if m != 2 {
                return Err(Error::bad(format!("c_trace_q2 needs GF(q^2), got m = {m}")));
            }
            if c.is_zero() || ctx.add(c, ctx.frob_unchecked(c, sd, 1)) != Elem::ZERO {
                return Err(Error::bad(format!("c = {c} must be nonzero with c + c^q = 0")));
            }
            let g = MapExpr::Poly(SparsePoly::monomial(ctx, c, s));
            let ps = params(vec![("c", elem_value(c)), ("s", s.into())]);
            (Family::CTraceQ2, x.clone(), frob_poly(ctx, q, 2), g, p, ps)
        }
        AdditiveVariant::XqGTrace { g } => {
            if m != 3 {
                return Err(Error::bad(format!("xq_g_trace needs GF(q^3), got m = {m}")));
            }
            if let Some(t) = g
                .terms()
                .iter()
                .find(|t| !ctx.trace_unchecked(t.coeff, sd, m).is_zero())
            {
                return Err(Error::bad(format!(
                    "coefficient {} of x^{} has nonzero trace",
                    t.coeff, t.exp
                )));
            }
            let ps = params(vec![("g", poly_value(&g))]);
            let phi = SparsePoly::monomial(ctx, Elem::ONE, q);
            (Family::XqGTrace, phi, frob_poly(ctx, q, 3), MapExpr::Poly(g), 3, ps)
        }
    };
    g.check(ctx)?;
    let image = image_set(ctx, &psi)?;
    if let Some(&y) = image
        .iter()
        .find(|&&y| !psi.eval_unchecked(ctx, g.apply(ctx, y)).is_zero())
    {
        return Err(Error::KernelViolation { witness: y });
    }
    if family != Family::XqGTrace && image.iter().all(|&y| g.apply(ctx, y).is_zero()) {
        return Err(Error::bad("g vanishes on psi(F), so f is the identity"));
    }
    let mut all = params(vec![("q", q.into())]);
    all.extend(ps);
    let form = Form::Additive {
        phi,
        psi,
        g,
        sub_degree: sd,
    };
    Ok(FamilyInstance::new(family, all, ctx, form, claimed_n, Vec::new()))
}

/// `psi` must be q-linearized and vanish on GF(q).
fn check_psi(ctx: &FieldCtx, psi: &SparsePoly, sd: u32, q: u64) -> Result<()> {
    psi.check_ctx(ctx)?;
    if !psi.is_q_linearized(ctx, sd)? {
        return Err(Error::bad(format!("psi = {psi} is not {q}-linearized")));
    }
    if let Some(c) = ctx
        .subfield_members(sd)?
        .into_iter()
        .find(|&c| !psi.eval_unchecked(ctx, c).is_zero())
    {
        return Err(Error::bad(format!("psi({c}) != 0 for c in GF({q})")));
    }
    Ok(())
}

/// The choice of `g` for `g(x^(q^i) - x + delta) + x`.
#[derive(Clone, Debug, PartialEq)]
pub enum ShiftVariant {
    /// `g = Tr_{q^m/q^i}(H)`, needs `i | m`.
    TraceG1 { h: SparsePoly },
    /// `g = H^s` with `s (q^i - 1) = 0 mod q^m - 1`.
    PowerG2 { h: SparsePoly, s: BigUint },
}

pub fn build_shift(ctx: &FieldCtx, q: u64, i: u32, delta: Elem, variant: ShiftVariant) -> Result<FamilyInstance> {
    let (sd, m) = subfield_for(ctx, q)?;
    let params_s = ShiftParams {
        i,
        delta,
        sub_degree: sd,
    };
    params_s.validate(ctx)?;
    let qi = BigUint::from(q).pow(i);
    let (family, g, mut ps) = match variant {
        ShiftVariant::TraceG1 { h } => {
            h.check_ctx(ctx)?;
            if m % i != 0 {
                return Err(Error::bad(format!("i = {i} must divide m = {m}")));
            }
            let ps = params(vec![("H", poly_value(&h))]);
            (Family::ShiftTraceG1, MapExpr::trace(sd * i, MapExpr::Poly(h)), ps)
        }
        ShiftVariant::PowerG2 { h, s } => {
            h.check_ctx(ctx)?;
            let qm1 = BigUint::from(ctx.order() - 1);
            if s.is_zero() || (&s * (&qi - 1u32)) % &qm1 != BigUint::zero() {
                return Err(Error::bad(format!("s (q^i - 1) is not 0 mod q^m - 1 for s = {s}")));
            }
            let ps = params(vec![("H", poly_value(&h)), ("s", big_value(&s))]);
            (Family::ShiftPowerG2, MapExpr::power(MapExpr::Poly(h), s), ps)
        }
    };
    let domain = params_s.s_delta(ctx)?;
    if domain.iter().all(|&y| g.apply(ctx, y).is_zero()) {
        return Err(Error::DegenerateH("g vanishes on S_delta, so f is the identity".into()));
    }
    let mut all = params(vec![("q", q.into()), ("i", i.into()), ("delta", elem_value(delta))]);
    all.append(&mut ps);
    let form = Form::Shift { g, params: params_s };
    Ok(FamilyInstance::new(family, all, ctx, form, ctx.p() as u64, Vec::new()))
}
