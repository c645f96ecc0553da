//! The trace-like maps `lambda_1(x) = Tr(x^n)` and
//! `lambda_2(x) = sum over i_1 < ... < i_n of x^(q^i_1 + ... + q^i_n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::map::FieldFn;

/// Largest `m` accepted for `lambda_2`.
pub const LAMBDA2_MAX_M: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaVariant {
    Lambda1,
    Lambda2,
}

impl std::str::FromStr for LambdaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "lambda1" => Ok(LambdaVariant::Lambda1),
            "2" | "lambda2" => Ok(LambdaVariant::Lambda2),
            _ => Err(Error::InvalidSpec(format!("unknown lambda variant {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub variant: LambdaVariant,
    pub n: u32,
    /// `q = p^sub_degree`.
    pub sub_degree: u32,
}

impl LambdaSpec {
    pub fn new(variant: LambdaVariant, n: u32, sub_degree: u32) -> Self {
        LambdaSpec { variant, n, sub_degree }
    }

    /// Checks the spec against `ctx` and returns `m`.
    pub fn validate(&self, ctx: &FieldCtx) -> Result<u32> {
        let m = ctx
            .check_subfield(self.sub_degree)
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if self.variant == LambdaVariant::Lambda2 {
            if self.n > m {
                return Err(Error::InvalidSpec(format!(
                    "lambda2 needs n <= m, got n = {} and m = {m}",
                    self.n
                )));
            }
            if m > LAMBDA2_MAX_M {
                return Err(Error::InvalidSpec(format!("m = {m} exceeds {LAMBDA2_MAX_M}")));
            }
        }
        Ok(m)
    }

    /// Evaluation without validation.
    pub fn apply(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        let m = ctx.n() / self.sub_degree;
        match self.variant {
            LambdaVariant::Lambda1 => ctx.trace_unchecked(ctx.pow(x, self.n as u64), self.sub_degree, m),
            LambdaVariant::Lambda2 => {
                // Elementary symmetric polynomial e_n of the conjugates.
                let n = self.n as usize;
                let mut e = vec![Elem::ZERO; n + 1];
                e[0] = Elem::ONE;
                for i in 0..m as u64 {
                    let c = ctx.frob_unchecked(x, self.sub_degree, i);
                    for j in (1..=n.min(i as usize + 1)).rev() {
                        e[j] = ctx.add(e[j], ctx.mul(e[j - 1], c));
                    }
                }
                e[n]
            }
        }
    }

    pub fn render(&self, arg: &str, ctx: &FieldCtx) -> String {
        let q = (ctx.p() as u64).pow(self.sub_degree);
        match self.variant {
            LambdaVariant::Lambda1 => format!("Tr_{{{}/{q}}}(({arg})^{})", ctx.order(), self.n),
            LambdaVariant::Lambda2 => format!("lambda2_{{q={q},n={}}}({arg})", self.n),
        }
    }
}

impl FieldFn for LambdaSpec {
    fn apply(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        LambdaSpec::apply(self, ctx, x)
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        self.validate(ctx).map(|_| ())
    }
}

pub fn eval_lambda(ctx: &FieldCtx, spec: &LambdaSpec, x: Elem) -> Result<Elem> {
    spec.validate(ctx)?;
    Ok(spec.apply(ctx, x))
}
