use num_bigint::BigUint;
use serde_json::Value;

use super::{elem_value, params, subfield_for, Family, FamilyInstance, Form, LambdaSpec, LambdaVariant};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::nt;
use crate::poly::SparsePoly;

/// The choice of `h` for `x h(lambda(x))`.
#[derive(Clone, Debug, PartialEq)]
pub enum XhVariant {
    /// `h(y) = 1 + theta y^((q-1)/n) - y^(q-1)` with `theta` a primitive
    /// n-th root of unity in GF(q).
    ThetaCor { n: u32, theta: Elem },
    /// `h(y) = 1 - 2 y^(q-1)`, q odd; an involution.
    InvolutionCor,
    /// `h(y) = 1 + a y^c + b y^(q-c-1) - y^(q-1)`; an involution.
    AbcCor { a: i64, b: i64, c: u64 },
    /// Any `h` over GF(q) whose values on GF(q) are n-th roots of unity.
    CustomH { n: u32, h: SparsePoly },
}

fn term(c: Elem, e: u64) -> (Elem, BigUint) {
    (c, BigUint::from(e))
}

pub fn build_xh_lambda(ctx: &FieldCtx, q: u64, lambda: LambdaVariant, variant: XhVariant) -> Result<FamilyInstance> {
    let (sd, _m) = subfield_for(ctx, q)?;
    let p = ctx.p() as u64;
    let one = Elem::ONE;
    let minus_one = ctx.neg(one);
    let (family, n, h, mut ps) = match variant {
        XhVariant::ThetaCor { n, theta } => {
            let n64 = n as u64;
            if n == 0 || (q - 1) % n64 != 0 {
                return Err(Error::bad(format!("n = {n} must divide q - 1 = {}", q - 1)));
            }
            let is_root = ctx.pow(theta, n64) == one;
            let primitive = nt::factorize(n64).iter().all(|&(r, _)| ctx.pow(theta, n64 / r) != one);
            if !is_root || !primitive {
                return Err(Error::bad(format!(
                    "theta = {theta} is not a primitive {n}-th root of unity"
                )));
            }
            let h = SparsePoly::new(ctx, [term(one, 0), term(theta, (q - 1) / n64), term(minus_one, q - 1)]);
            (
                Family::ThetaCor,
                n,
                h,
                params(vec![("n", n.into()), ("theta", elem_value(theta))]),
            )
        }
        XhVariant::InvolutionCor => {
            if p == 2 {
                return Err(Error::bad("involution_cor needs odd q"));
            }
            let h = SparsePoly::new(ctx, [term(one, 0), term(ctx.from_int(-2), q - 1)]);
            (Family::InvolutionCor, 2, h, params(vec![("n", 2.into())]))
        }
        XhVariant::AbcCor { a, b, c } => {
            if p == 2 {
                return Err(Error::bad("abc_cor needs odd q"));
            }
            let pi = p as i128;
            let (ai, bi) = (a as i128, b as i128);
            if (ai * ai + bi * bi).rem_euclid(pi) != 0 {
                return Err(Error::bad(format!(
                    "a^2 + b^2 = {} is not 0 mod {p}",
                    ai * ai + bi * bi
                )));
            }
            if (4 * c as u128) % (q as u128 - 1) != 0 {
                return Err(Error::bad(format!(
                    "4c = {} is not 0 mod q - 1 = {}",
                    4 * c as u128,
                    q - 1
                )));
            }
            if (2 * ai * bi).rem_euclid(pi) != 1 {
                return Err(Error::bad(format!("2ab = {} is not 1 mod {p}", 2 * ai * bi)));
            }
            if c > q - 1 {
                return Err(Error::bad(format!("c = {c} exceeds q - 1")));
            }
            let h = SparsePoly::new(
                ctx,
                [
                    term(one, 0),
                    term(ctx.from_int(a), c),
                    term(ctx.from_int(b), q - c - 1),
                    term(minus_one, q - 1),
                ],
            );
            (
                Family::AbcCor,
                2,
                h,
                params(vec![("n", 2.into()), ("a", a.into()), ("b", b.into()), ("c", c.into())]),
            )
        }
        XhVariant::CustomH { n, h } => {
            h.check_ctx(ctx)?;
            if n == 0 {
                return Err(Error::bad("n must be positive"));
            }
            if !h.coeffs_in_subfield(ctx, sd)? {
                return Err(Error::bad(format!("h has coefficients outside GF({q})")));
            }
            let text = h.to_string();
            (
                Family::CustomH,
                n,
                h,
                params(vec![("n", n.into()), ("h", Value::String(text))]),
            )
        }
    };
    let spec = LambdaSpec::new(lambda, n, sd);
    spec.validate(ctx)?;
    for y in ctx.subfield_members(sd)? {
        if ctx.pow(h.eval_unchecked(ctx, y), n as u64) != one {
            return Err(Error::HValueNotRootOfUnity { witness: y });
        }
    }
    let mut all = params(vec![
        ("q", q.into()),
        ("lambda", Value::String(lambda_name(lambda).into())),
    ]);
    all.append(&mut ps);
    let form = Form::XhLambda {
        h,
        lambda: spec,
        k: SparsePoly::monomial(ctx, one, n),
    };
    Ok(FamilyInstance::new(family, all, ctx, form, n as u64, Vec::new()))
}

fn lambda_name(v: LambdaVariant) -> &'static str {
    match v {
        LambdaVariant::Lambda1 => "lambda1",
        LambdaVariant::Lambda2 => "lambda2",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::perm::PermMap;

    #[test]
    fn theta_cor_over_gf7() {
        let ctx = make_field(7, 1, None).unwrap();
        // 2 has order 3 mod 7
        let inst = build_xh_lambda(
            &ctx,
            7,
            LambdaVariant::Lambda1,
            XhVariant::ThetaCor { n: 3, theta: Elem(2) },
        )
        .unwrap();
        assert!(inst.criterion().unwrap().holds);
        let f = PermMap::from_fn(&ctx, &inst.f).unwrap();
        assert!(f.is_ncycle(3));
        assert!(matches!(
            build_xh_lambda(
                &ctx,
                7,
                LambdaVariant::Lambda1,
                XhVariant::ThetaCor { n: 3, theta: Elem(1) }
            ),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn involutions_over_gf25() {
        let ctx = make_field(5, 2, None).unwrap();
        for lambda in [LambdaVariant::Lambda1, LambdaVariant::Lambda2] {
            let inst = build_xh_lambda(&ctx, 5, lambda, XhVariant::InvolutionCor).unwrap();
            assert!(inst.criterion().unwrap().holds);
            assert!(PermMap::from_fn(&ctx, &inst.f).unwrap().is_ncycle(2));
        }
        // a = 1, b = 3: 1 + 9 = 10 = 0, 2*3 = 6 = 1 mod 5; 4c = 4 = 0 mod 4
        let inst = build_xh_lambda(&ctx, 5, LambdaVariant::Lambda1, XhVariant::AbcCor { a: 1, b: 3, c: 1 }).unwrap();
        assert!(inst.criterion().unwrap().holds);
        assert!(PermMap::from_fn(&ctx, &inst.f).unwrap().is_ncycle(2));
    }

    #[test]
    fn abc_conditions() {
        let ctx = make_field(5, 2, None).unwrap();
        let bad =
            |a, b, c| build_xh_lambda(&ctx, 5, LambdaVariant::Lambda1, XhVariant::AbcCor { a, b, c }).unwrap_err();
        assert!(matches!(bad(1, 1, 1), Error::BadParams(_)));
        assert!(matches!(bad(1, 2, 1), Error::BadParams(_)));
    }

    #[test]
    fn custom_h_values_must_be_roots() {
        let ctx = make_field(3, 2, None).unwrap();
        let h = SparsePoly::from_pairs(&ctx, &[(1, 0), (1, 1)]);
        assert!(matches!(
            build_xh_lambda(&ctx, 3, LambdaVariant::Lambda1, XhVariant::CustomH { n: 2, h }),
            Err(Error::HValueNotRootOfUnity { witness: Elem(2) })
        ));
    }
}
