//! Sparse polynomials with arbitrary-precision exponents.
//!
//! Text format: terms `c*x^e` joined by `+`, where `c` is an element literal
//! (decimal or `g^k`) and `e` is a decimal integer or a parenthesized
//! exponent expression such as `x^((q^2+q+1)*45)`. When parsing, `x`,
//! `x^e` and a bare constant `c` are accepted as shorthand.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr;
use crate::field::{Elem, FieldCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Elem,
    pub exp: BigUint,
}

#[derive(Clone, Debug)]
struct Reduced {
    coeff: Elem,
    /// Exponent mod p^n - 1.
    exp: u64,
    is_const: bool,
}

/// A polynomial over one field in canonical form: exponents strictly
/// increasing, coefficients nonzero.
#[derive(Clone, Debug)]
pub struct SparsePoly {
    ctx_id: u64,
    terms: Vec<Term>,
    reduced: Vec<Reduced>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx_id == other.ctx_id && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    /// Builds the canonical form: equal exponents are merged, zero
    /// coefficients dropped.
    pub fn new(ctx: &FieldCtx, terms: impl IntoIterator<Item = (Elem, BigUint)>) -> Self {
        let mut merged: BTreeMap<BigUint, Elem> = BTreeMap::new();
        for (c, e) in terms {
            let slot = merged.entry(e).or_insert(Elem::ZERO);
            *slot = ctx.add(*slot, c);
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        let qm1 = ctx.order() - 1;
        let reduced = terms
            .iter()
            .map(|t| Reduced {
                coeff: t.coeff,
                exp: (&t.exp % qm1).to_u64().unwrap_or(0),
                is_const: t.exp.is_zero(),
            })
            .collect();
        SparsePoly {
            ctx_id: ctx.id(),
            terms,
            reduced,
        }
    }

    /// Convenience constructor from `(coefficient literal, exponent)` pairs.
    pub fn from_pairs(ctx: &FieldCtx, pairs: &[(u32, u64)]) -> Self {
        Self::new(ctx, pairs.iter().map(|&(c, e)| (Elem(c), BigUint::from(e))))
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, std::iter::empty())
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, Elem::ONE, 1u32)
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        Self::monomial(ctx, c, 0u32)
    }

    pub fn monomial(ctx: &FieldCtx, c: Elem, e: impl Into<BigUint>) -> Self {
        Self::new(ctx, [(c, e.into())])
    }

    pub fn ctx_id(&self) -> u64 {
        self.ctx_id
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn check_ctx(&self, ctx: &FieldCtx) -> Result<()> {
        if self.ctx_id == ctx.id() {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    /// `sum coeff * x^exp`, with `0^0 = 1`.
    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Result<Elem> {
        self.check_ctx(ctx)?;
        if x.0 as u64 >= ctx.order() {
            return Err(Error::Parse(format!("element {x} out of range")));
        }
        Ok(self.eval_unchecked(ctx, x))
    }

    /// Evaluation without the context check; the caller guarantees `ctx`.
    pub fn eval_unchecked(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        if x.is_zero() {
            return self
                .reduced
                .iter()
                .filter(|t| t.is_const)
                .fold(Elem::ZERO, |acc, t| ctx.add(acc, t.coeff));
        }
        self.reduced
            .iter()
            .fold(Elem::ZERO, |acc, t| ctx.add(acc, ctx.mul(t.coeff, ctx.pow(x, t.exp))))
    }

    /// `x^r * self(x^s)`, expanded term by term.
    pub fn substitute_monomial(&self, ctx: &FieldCtx, r: &BigUint, s: &BigUint) -> SparsePoly {
        SparsePoly::new(ctx, self.terms.iter().map(|t| (t.coeff, r + s * &t.exp)))
    }

    pub fn add(&self, ctx: &FieldCtx, other: &SparsePoly) -> SparsePoly {
        SparsePoly::new(
            ctx,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|t| (t.coeff, t.exp.clone())),
        )
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elem) -> SparsePoly {
        SparsePoly::new(ctx, self.terms.iter().map(|t| (ctx.mul(c, t.coeff), t.exp.clone())))
    }

    /// Replaces (or inserts) the coefficient of `x^exp`.
    pub fn with_coeff(&self, ctx: &FieldCtx, exp: &BigUint, c: Elem) -> SparsePoly {
        SparsePoly::new(
            ctx,
            self.terms
                .iter()
                .filter(|t| &t.exp != exp)
                .map(|t| (t.coeff, t.exp.clone()))
                .chain(std::iter::once((c, exp.clone()))),
        )
    }

    /// True when every coefficient lies in GF(p^sub_degree).
    pub fn coeffs_in_subfield(&self, ctx: &FieldCtx, sub_degree: u32) -> Result<bool> {
        for t in &self.terms {
            if !ctx.in_subfield(t.coeff, sub_degree)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every exponent is a power of `q = p^sub_degree`.
    pub fn is_q_linearized(&self, ctx: &FieldCtx, sub_degree: u32) -> Result<bool> {
        let q = BigUint::from(ctx.subfield_order(sub_degree)?);
        Ok(self.terms.iter().all(|t| {
            let mut e = t.exp.clone();
            while &e % &q == BigUint::zero() && !e.is_zero() {
                e /= &q;
            }
            e == BigUint::from(1u32)
        }))
    }

    /// Parses the text format. `q` binds the symbol `q` in exponent
    /// expressions.
    pub fn parse(ctx: &FieldCtx, text: &str, q: Option<&BigUint>) -> Result<SparsePoly> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if text == "0" {
            return Ok(SparsePoly::zero(ctx));
        }
        let mut terms = Vec::new();
        for raw in split_top_level(text, '+')? {
            terms.push(parse_term(ctx, raw.trim(), q)?);
        }
        Ok(SparsePoly::new(ctx, terms))
    }
}

fn split_top_level(text: &str, sep: char) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {text:?}")));
    }
    out.push(&text[start..]);
    Ok(out)
}

fn parse_term(ctx: &FieldCtx, term: &str, q: Option<&BigUint>) -> Result<(Elem, BigUint)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff_text, mono) = match term.find('x') {
        None => (term, None),
        Some(pos) => {
            let head = term[..pos].trim();
            let coeff = match head.strip_suffix('*') {
                Some(c) => c.trim(),
                None if head.is_empty() => "1",
                None => return Err(Error::Parse(format!("expected '*' before x in {term:?}"))),
            };
            (coeff, Some(term[pos + 1..].trim()))
        }
    };
    let coeff = ctx.parse_elem(coeff_text)?;
    let exp = match mono {
        None => BigUint::zero(),
        Some("") => BigUint::from(1u32),
        Some(rest) => {
            let e = rest
                .strip_prefix('^')
                .ok_or_else(|| Error::Parse(format!("expected '^' after x in {term:?}")))?
                .trim();
            if e.starts_with('(') || e.chars().all(|c| c.is_ascii_digit()) {
                expr::eval_exponent(e, q)?
            } else {
                return Err(Error::Parse(format!("exponent {e:?} must be decimal or parenthesized")));
            }
        }
    };
    Ok((coeff, exp))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}*x^{}", t.coeff, t.exp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn canonical_form() {
        let f = make_field(2, 3, None).unwrap();
        let p = SparsePoly::from_pairs(&f, &[(1, 5), (1, 2), (1, 5), (0, 7), (3, 0)]);
        assert_eq!(p.to_string(), "3*x^0+1*x^2");
    }

    #[test]
    fn parse_and_print() {
        let f = make_field(2, 12, None).unwrap();
        let p = SparsePoly::parse(&f, "1*x^5+1*x^45+1*x^25", None).unwrap();
        assert_eq!(p.to_string(), "1*x^5+1*x^25+1*x^45");
        assert_eq!(SparsePoly::parse(&f, &p.to_string(), None).unwrap(), p);

        let q = BigUint::from(64u32);
        let big = SparsePoly::parse(&f, "x + x^((q^2+q+1)*45)", Some(&q)).unwrap();
        assert_eq!(big.terms()[1].exp, BigUint::from(187245u32));
        assert!(SparsePoly::parse(&f, "1*x^q", Some(&q)).is_err());
        assert!(SparsePoly::parse(&f, "2x^3", None).is_err());
        assert!(SparsePoly::parse(&f, "", None).is_err());
    }

    #[test]
    fn eval_examples() {
        let f = make_field(2, 12, None).unwrap();
        let h = SparsePoly::parse(&f, "1 + x^45 + x^25", None).unwrap();
        assert_eq!(h.eval(&f, Elem::ZERO).unwrap(), Elem::ONE);
        let x = SparsePoly::x(&f);
        for a in f.elements().step_by(97) {
            assert_eq!(x.eval(&f, a).unwrap(), a);
        }
        let other = make_field(2, 6, None).unwrap();
        assert_eq!(h.eval(&other, Elem::ONE), Err(Error::CtxMismatch));
    }

    #[test]
    fn linearized_detection() {
        let f = make_field(3, 2, None).unwrap();
        let psi = SparsePoly::parse(&f, "1*x^3+2*x^1", None).unwrap();
        assert!(psi.is_q_linearized(&f, 1).unwrap());
        let not = SparsePoly::parse(&f, "1*x^2", None).unwrap();
        assert!(!not.is_q_linearized(&f, 1).unwrap());
    }
}
