//! Maps of a field to itself that can be evaluated pointwise.
//!
//! Everything in this crate is checked by evaluation, so a family member
//! such as `x * h(Tr(x^2))` is kept as a small expression tree instead of
//! being expanded into a polynomial.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::constructions::LambdaSpec;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::poly::SparsePoly;

pub trait FieldFn: Sync {
    fn apply(&self, ctx: &FieldCtx, x: Elem) -> Elem;

    /// Fails if the map cannot be evaluated over `ctx`.
    fn check(&self, _ctx: &FieldCtx) -> Result<()> {
        Ok(())
    }
}

impl<F: Fn(Elem) -> Elem + Sync> FieldFn for F {
    fn apply(&self, _ctx: &FieldCtx, x: Elem) -> Elem {
        self(x)
    }
}

impl FieldFn for SparsePoly {
    fn apply(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.eval_unchecked(ctx, x)
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        self.check_ctx(ctx)
    }
}

/// The full value table `[f(0), f(1), ...]`, computed in parallel.
pub fn eval_table(ctx: &FieldCtx, f: &dyn FieldFn) -> Result<Vec<u32>> {
    f.check(ctx)?;
    Ok((0..ctx.order() as u32)
        .into_par_iter()
        .map(|i| f.apply(ctx, Elem(i)).0)
        .collect())
}

/// Sorted, deduplicated image `f(GF(p^n))`.
pub fn image_set(ctx: &FieldCtx, f: &dyn FieldFn) -> Result<Vec<Elem>> {
    let mut seen = vec![false; ctx.size()];
    for v in eval_table(ctx, f)? {
        seen[v as usize] = true;
    }
    Ok(seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| Elem(i as u32))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapExpr {
    Poly(SparsePoly),
    Lambda(LambdaSpec),
    /// `Tr_{p^n / p^sub_degree}(arg(x))`
    Trace {
        sub_degree: u32,
        arg: Box<MapExpr>,
    },
    Power {
        arg: Box<MapExpr>,
        exp: BigUint,
    },
    /// `outer(inner(x))`
    Compose {
        outer: Box<MapExpr>,
        inner: Box<MapExpr>,
    },
    Sum(Vec<MapExpr>),
    Product(Vec<MapExpr>),
}

impl MapExpr {
    pub fn x(ctx: &FieldCtx) -> Self {
        MapExpr::Poly(SparsePoly::x(ctx))
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        MapExpr::Poly(SparsePoly::constant(ctx, c))
    }

    pub fn compose(outer: MapExpr, inner: MapExpr) -> Self {
        MapExpr::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    pub fn trace(sub_degree: u32, arg: MapExpr) -> Self {
        MapExpr::Trace {
            sub_degree,
            arg: Box::new(arg),
        }
    }

    pub fn power(arg: MapExpr, exp: impl Into<BigUint>) -> Self {
        MapExpr::Power {
            arg: Box::new(arg),
            exp: exp.into(),
        }
    }

    /// The polynomial, if this expression is a bare polynomial.
    pub fn as_poly(&self) -> Option<&SparsePoly> {
        match self {
            MapExpr::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Every polynomial leaf, mutably, in left-to-right order.
    pub fn polys_mut(&mut self) -> Vec<&mut SparsePoly> {
        let mut out = Vec::new();
        self.collect_polys(&mut out);
        out
    }

    fn collect_polys<'a>(&'a mut self, out: &mut Vec<&'a mut SparsePoly>) {
        match self {
            MapExpr::Poly(p) => out.push(p),
            MapExpr::Lambda(_) => {}
            MapExpr::Trace { arg, .. } | MapExpr::Power { arg, .. } => arg.collect_polys(out),
            MapExpr::Compose { outer, inner } => {
                outer.collect_polys(out);
                inner.collect_polys(out);
            }
            MapExpr::Sum(v) | MapExpr::Product(v) => {
                for e in v {
                    e.collect_polys(out);
                }
            }
        }
    }

    /// Human-readable rendering with the argument substituted for `x`.
    pub fn render(&self, arg: &str, ctx: &FieldCtx) -> String {
        match self {
            MapExpr::Poly(p) if arg == "x" => p.to_string(),
            MapExpr::Poly(p) => p.to_string().replace('x', &format!("({arg})")),
            MapExpr::Lambda(spec) => spec.render(arg, ctx),
            MapExpr::Trace { sub_degree, arg: a } => format!(
                "Tr_{{{}/{}}}({})",
                ctx.order(),
                (ctx.p() as u64).pow(*sub_degree),
                a.render(arg, ctx)
            ),
            MapExpr::Power { arg: a, exp } => format!("({})^{}", a.render(arg, ctx), exp),
            MapExpr::Compose { outer, inner } => outer.render(&inner.render(arg, ctx), ctx),
            MapExpr::Sum(v) => join(v, "+", arg, ctx),
            MapExpr::Product(v) => join(v, "*", arg, ctx),
        }
    }
}

fn join(v: &[MapExpr], sep: &str, arg: &str, ctx: &FieldCtx) -> String {
    let mut s = String::new();
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(sep);
        }
        let _ = write!(s, "({})", e.render(arg, ctx));
    }
    s
}

impl FieldFn for MapExpr {
    fn apply(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        match self {
            MapExpr::Poly(p) => p.eval_unchecked(ctx, x),
            MapExpr::Lambda(spec) => spec.apply(ctx, x),
            MapExpr::Trace { sub_degree, arg } => {
                let m = ctx.n() / sub_degree;
                ctx.trace_unchecked(arg.apply(ctx, x), *sub_degree, m)
            }
            MapExpr::Power { arg, exp } => ctx.pow_big(arg.apply(ctx, x), exp),
            MapExpr::Compose { outer, inner } => outer.apply(ctx, inner.apply(ctx, x)),
            MapExpr::Sum(v) => v.iter().fold(Elem::ZERO, |acc, e| ctx.add(acc, e.apply(ctx, x))),
            MapExpr::Product(v) => v.iter().fold(Elem::ONE, |acc, e| ctx.mul(acc, e.apply(ctx, x))),
        }
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        match self {
            MapExpr::Poly(p) => p.check_ctx(ctx),
            MapExpr::Lambda(spec) => spec.validate(ctx).map(|_| ()),
            MapExpr::Trace { sub_degree, arg } => {
                ctx.check_subfield(*sub_degree)?;
                arg.check(ctx)
            }
            MapExpr::Power { arg, .. } => arg.check(ctx),
            MapExpr::Compose { outer, inner } => {
                outer.check(ctx)?;
                inner.check(ctx)
            }
            MapExpr::Sum(v) | MapExpr::Product(v) => {
                if v.is_empty() {
                    return Err(Error::bad("empty sum or product"));
                }
                v.iter().try_for_each(|e| e.check(ctx))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn expression_evaluation() {
        let ctx = make_field(3, 2, None).unwrap();
        // x + Tr((x^3 - x)^2)
        let psi = SparsePoly::parse(&ctx, "1*x^3+2*x^1", None).unwrap();
        let g = MapExpr::trace(1, MapExpr::power(MapExpr::Poly(psi.clone()), 2u32));
        let f = MapExpr::Sum(vec![MapExpr::x(&ctx), g]);
        f.check(&ctx).unwrap();
        for a in ctx.elements() {
            let y = psi.eval_unchecked(&ctx, a);
            let want = ctx.add(a, ctx.trace(ctx.mul(y, y), 1).unwrap());
            assert_eq!(f.apply(&ctx, a), want);
        }
        assert_eq!(f.render("x", &ctx), "(1*x^1)+(Tr_{9/3}((2*x^1+1*x^3)^2))");
    }

    #[test]
    fn check_catches_foreign_field() {
        let a = make_field(3, 2, None).unwrap();
        let b = make_field(2, 3, None).unwrap();
        assert_eq!(MapExpr::x(&a).check(&b), Err(Error::CtxMismatch));
        assert!(MapExpr::trace(2, MapExpr::x(&b)).check(&b).is_err());
    }
}
