//! Explicit n-cycle families. Every builder validates its parameters,
//! checks the family's side conditions by exhaustion where they are
//! pointwise, and returns a [`FamilyInstance`] that knows which criterion
//! decides it.

mod additive;
mod lambda;
mod rs;
mod search;
mod xh;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::criteria::{self, CriterionVerdict, RsParams, ShiftParams};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::map::MapExpr;
use crate::poly::SparsePoly;

pub use additive::{build_additive, build_shift, AdditiveVariant, ShiftVariant};
pub use lambda::{eval_lambda, LambdaSpec, LambdaVariant, LAMBDA2_MAX_M};
pub use rs::{build_jieguo, build_rs_2to3m, build_trace_theta, build_xq_h_alpha};
pub use search::{jieguo_congruences_hold, search_k_2to3m, solve_jieguo_congruences, JieguoPair};
pub use xh::{build_xh_lambda, XhVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ThetaCor,
    InvolutionCor,
    AbcCor,
    CustomH,
    AdditiveTraceG1,
    AdditivePowerG2,
    CTraceQ2,
    XqGTrace,
    ShiftTraceG1,
    ShiftPowerG2,
    Rs2to3m,
    XqHAlpha,
    Jieguo,
    TraceTheta,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::ThetaCor,
        Family::InvolutionCor,
        Family::AbcCor,
        Family::CustomH,
        Family::AdditiveTraceG1,
        Family::AdditivePowerG2,
        Family::CTraceQ2,
        Family::XqGTrace,
        Family::ShiftTraceG1,
        Family::ShiftPowerG2,
        Family::Rs2to3m,
        Family::XqHAlpha,
        Family::Jieguo,
        Family::TraceTheta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThetaCor => "theta_cor",
            Family::InvolutionCor => "involution_cor",
            Family::AbcCor => "abc_cor",
            Family::CustomH => "custom_h",
            Family::AdditiveTraceG1 => "additive_trace_g1",
            Family::AdditivePowerG2 => "additive_power_g2",
            Family::CTraceQ2 => "c_trace_q2",
            Family::XqGTrace => "xq_g_trace",
            Family::ShiftTraceG1 => "shift_trace_g1",
            Family::ShiftPowerG2 => "shift_power_g2",
            Family::Rs2to3m => "rs_2to3m",
            Family::XqHAlpha => "xq_h_alpha",
            Family::Jieguo => "jieguo",
            Family::TraceTheta => "trace_theta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::bad(format!("unknown family {s:?}")))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The structural form of an instance: what its criterion needs.
#[derive(Clone, Debug, PartialEq)]
pub enum Form {
    /// `x h(lambda(x))` with `lambda(a x) = k(a) lambda(x)`.
    XhLambda {
        h: SparsePoly,
        lambda: LambdaSpec,
        k: SparsePoly,
    },
    /// `phi(x) + g(psi(x))`.
    Additive {
        phi: SparsePoly,
        psi: SparsePoly,
        g: MapExpr,
        sub_degree: u32,
    },
    /// `g(x^(q^i) - x + delta) + x`.
    Shift { g: MapExpr, params: ShiftParams },
    /// `x^r h(x^s)`; `single` carries `(a, v)` when the single-condition
    /// criterion applies too.
    Rs {
        h: SparsePoly,
        r: u64,
        s: u64,
        single: Option<(Elem, u64)>,
    },
    /// `x + theta Tr(x^exp)` with claimed inverse `x + theta^2 Tr(x^exp)`.
    TraceTheta { theta: Elem, exp: BigUint, sub_degree: u32 },
}

impl Form {
    pub fn map(&self, ctx: &FieldCtx) -> MapExpr {
        match self {
            Form::XhLambda { h, lambda, .. } => MapExpr::Product(vec![
                MapExpr::x(ctx),
                MapExpr::compose(MapExpr::Poly(h.clone()), MapExpr::Lambda(*lambda)),
            ]),
            Form::Additive { phi, psi, g, .. } => MapExpr::Sum(vec![
                MapExpr::Poly(phi.clone()),
                MapExpr::compose(g.clone(), MapExpr::Poly(psi.clone())),
            ]),
            Form::Shift { g, params } => {
                let inner = SparsePoly::new(
                    ctx,
                    [
                        (Elem::ONE, BigUint::from(ctx.p()).pow(params.sub_degree * params.i)),
                        (ctx.neg(Elem::ONE), BigUint::from(1u32)),
                        (params.delta, BigUint::from(0u32)),
                    ],
                );
                MapExpr::Sum(vec![MapExpr::x(ctx), MapExpr::compose(g.clone(), MapExpr::Poly(inner))])
            }
            Form::Rs { h, r, s, .. } => {
                MapExpr::Poly(h.substitute_monomial(ctx, &BigUint::from(*r), &BigUint::from(*s)))
            }
            Form::TraceTheta { theta, exp, sub_degree } => trace_theta_map(ctx, *theta, exp, *sub_degree),
        }
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<MapExpr> {
        match self {
            Form::TraceTheta { theta, exp, sub_degree } => {
                Some(trace_theta_map(ctx, ctx.mul(*theta, *theta), exp, *sub_degree))
            }
            _ => None,
        }
    }
}

fn trace_theta_map(ctx: &FieldCtx, theta: Elem, exp: &BigUint, sub_degree: u32) -> MapExpr {
    MapExpr::Sum(vec![
        MapExpr::x(ctx),
        MapExpr::Product(vec![
            MapExpr::constant(ctx, theta),
            MapExpr::trace(
                sub_degree,
                MapExpr::Poly(SparsePoly::monomial(ctx, Elem::ONE, exp.clone())),
            ),
        ]),
    ])
}

/// One member of a family over a concrete field.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: Family,
    pub params: Map<String, Value>,
    pub ctx: FieldCtx,
    pub form: Form,
    /// The map itself, derived from `form`.
    pub f: MapExpr,
    /// A claimed closed-form inverse, when the family states one.
    pub inverse: Option<MapExpr>,
    pub claimed_n: u64,
    pub notes: Vec<String>,
}

impl FamilyInstance {
    fn new(
        family: Family,
        params: Map<String, Value>,
        ctx: &FieldCtx,
        form: Form,
        claimed_n: u64,
        notes: Vec<String>,
    ) -> Self {
        FamilyInstance {
            family,
            params,
            ctx: ctx.clone(),
            f: form.map(ctx),
            inverse: form.inverse(ctx),
            form,
            claimed_n,
            notes,
        }
    }

    /// The map in the polynomial text format, extended with `Tr_{..}` and
    /// `lambda2_{..}` where the map is not a bare polynomial.
    pub fn poly_text(&self) -> String {
        self.f.render("x", &self.ctx)
    }

    /// Runs the criterion that decides this family at `claimed_n`.
    pub fn criterion(&self) -> Result<CriterionVerdict> {
        let ctx = &self.ctx;
        let n = self.claimed_n;
        match &self.form {
            Form::XhLambda { h, lambda, k } => criteria::xh_lambda_criterion(ctx, h, lambda, k, n),
            Form::Additive {
                phi,
                psi,
                g,
                sub_degree,
            } => criteria::additive_criterion(ctx, phi, psi, g, *sub_degree, n),
            Form::Shift { g, params } => criteria::shift_criterion(ctx, g, params, n),
            Form::Rs { h, r, s, .. } => criteria::rs_triple_criterion(ctx, h, &RsParams::new(ctx, *r, *s)?),
            Form::TraceTheta { .. } => {
                let inv = self.inverse.as_ref().expect("trace_theta has an inverse");
                criteria::closed_inverse_check(ctx, &self.f, inv)
            }
        }
    }

    /// The single-condition criterion, for instances that carry one.
    pub fn secondary_criterion(&self) -> Option<Result<CriterionVerdict>> {
        match &self.form {
            Form::Rs {
                h,
                r,
                s,
                single: Some((a, v)),
            } => Some(
                RsParams::new(&self.ctx, *r, *s).and_then(|p| criteria::rs_single_criterion(&self.ctx, h, &p, *a, *v)),
            ),
            _ => None,
        }
    }

    /// A copy with one coefficient of the family's defining polynomial
    /// changed (or one term added). For `x h(lambda(x))` the new
    /// coefficient stays in GF(q) so the scaling hypothesis survives.
    pub fn perturbed<R: Rng + ?Sized>(&self, rng: &mut R) -> FamilyInstance {
        let ctx = &self.ctx;
        let mut form = self.form.clone();
        let description = match &mut form {
            Form::XhLambda { h, lambda, .. } => {
                let coeffs = ctx.subfield_members(lambda.sub_degree).expect("valid spec");
                let q = ctx.subfield_order(lambda.sub_degree).expect("valid spec");
                perturb_poly(ctx, h, &coeffs, q, rng)
            }
            Form::Rs { h, .. } => {
                let all: Vec<Elem> = ctx.elements().collect();
                perturb_poly(ctx, h, &all, ctx.order(), rng)
            }
            Form::Additive { g, .. } | Form::Shift { g, .. } => {
                let all: Vec<Elem> = ctx.elements().collect();
                let mut leaves = g.polys_mut();
                let i = rng.gen_range(0..leaves.len());
                perturb_poly(ctx, leaves[i], &all, ctx.order(), rng)
            }
            Form::TraceTheta { theta, sub_degree, .. } => {
                let others: Vec<Elem> = ctx
                    .subfield_members(*sub_degree)
                    .expect("valid")
                    .into_iter()
                    .filter(|e| e != theta)
                    .collect();
                let old = *theta;
                *theta = *others.choose(rng).expect("q >= 4");
                format!("theta {old} -> {theta}")
            }
        };
        let mut params = self.params.clone();
        params.insert("perturbed".into(), Value::String(description));
        let mut notes = self.notes.clone();
        notes.push("perturbed copy; family conditions no longer guaranteed".into());
        FamilyInstance::new(self.family, params, ctx, form, self.claimed_n, notes)
    }
}

/// Scales one coefficient by a factor other than 1 or adds a new term,
/// with coefficients drawn from `pool` and exponents below `exp_bound`.
fn perturb_poly<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    p: &mut SparsePoly,
    pool: &[Elem],
    exp_bound: u64,
    rng: &mut R,
) -> String {
    let units: Vec<Elem> = pool.iter().copied().filter(|e| !e.is_zero()).collect();
    let factors: Vec<Elem> = units.iter().copied().filter(|&e| e != Elem::ONE).collect();
    if !p.is_zero() && !factors.is_empty() && rng.gen_bool(0.5) {
        let t = p.terms()[rng.gen_range(0..p.terms().len())].clone();
        let c = *factors.choose(rng).expect("nonempty");
        *p = p.with_coeff(ctx, &t.exp, ctx.mul(c, t.coeff));
        format!("coefficient of x^{} scaled by {c}", t.exp)
    } else {
        let c = *units.choose(rng).expect("field has units");
        let e = BigUint::from(rng.gen_range(0..exp_bound.max(1)));
        let old = p.terms().iter().find(|t| t.exp == e).map_or(Elem::ZERO, |t| t.coeff);
        *p = p.with_coeff(ctx, &e, ctx.add(old, c));
        format!("added {c}*x^{e}")
    }
}

impl Serialize for FamilyInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("family", &self.family)?;
        m.serialize_entry("params", &self.params)?;
        m.serialize_entry("field", &self.ctx.describe())?;
        m.serialize_entry("poly", &self.poly_text())?;
        m.serialize_entry("claimed_n", &self.claimed_n)?;
        if let Some(inv) = &self.inverse {
            m.serialize_entry("inverse", &inv.render("x", &self.ctx))?;
        }
        if !self.notes.is_empty() {
            m.serialize_entry("notes", &self.notes)?;
        }
        m.end()
    }
}

/// `(sub_degree, m)` for `q = p^sub_degree` and `ctx = GF(q^m)`.
pub(crate) fn subfield_for(ctx: &FieldCtx, q: u64) -> Result<(u32, u32)> {
    let p = ctx.p() as u64;
    let mut d = 0u32;
    let mut v = 1u64;
    while v < q {
        v = v.saturating_mul(p);
        d += 1;
    }
    if v != q || d == 0 {
        return Err(Error::bad(format!("q = {q} is not a power of p = {p}")));
    }
    let m = ctx
        .check_subfield(d)
        .map_err(|_| Error::bad(format!("GF({q}) is not a subfield of GF({})", ctx.order())))?;
    Ok((d, m))
}

pub(crate) fn elem_value(e: Elem) -> Value {
    Value::from(e.0)
}

pub(crate) fn big_value(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

pub(crate) fn params(entries: Vec<(&str, Value)>) -> Map<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
