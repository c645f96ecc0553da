//! Decision procedures for the n-cycle criteria. Each one evaluates the
//! criterion's defining expression over the relevant subdomain (an image
//! set or a subgroup) and never builds the full functional power of `f`.
//!
//! Hypothesis failures come back as [`Error::HypothesisViolated`], kept
//! apart from a criterion that is merely false.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::map::{eval_table, image_set, FieldFn};
use crate::nt;
use crate::perm::PermMap;
use crate::poly::SparsePoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub holds: bool,
    /// Smallest failing point of the domain.
    pub witness: Option<Elem>,
    /// The criterion expression evaluated at the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Elem>,
    pub domain_size: u64,
    pub hypothesis_failures: Vec<String>,
    /// Set when the verdict is false for a reason other than a failing point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Side conditions evaluated along the way.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, bool>,
}

impl CriterionVerdict {
    fn from_scan(domain_size: usize, first: Option<(Elem, Elem)>) -> Self {
        CriterionVerdict {
            holds: first.is_none(),
            witness: first.map(|(y, _)| y),
            lhs: first.map(|(_, v)| v),
            domain_size: domain_size as u64,
            hypothesis_failures: Vec::new(),
            reason: None,
            checks: BTreeMap::new(),
        }
    }

    /// The report for a run whose hypotheses did not hold.
    pub fn hypotheses_failed(failures: Vec<String>) -> Self {
        CriterionVerdict {
            holds: false,
            witness: None,
            lhs: None,
            domain_size: 0,
            hypothesis_failures: failures,
            reason: Some("hypotheses violated".into()),
            checks: BTreeMap::new(),
        }
    }
}

/// First `y` (in the given order) where `expr(y) != want`, scanning in
/// parallel.
fn first_failure(domain: &[Elem], want: Elem, expr: impl Fn(Elem) -> Elem + Sync) -> Option<(Elem, Elem)> {
    domain.par_iter().find_map_first(|&y| {
        let v = expr(y);
        (v != want).then_some((y, v))
    })
}

fn hypotheses(failures: Vec<String>) -> Result<()> {
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(failures))
    }
}

/// Bijectivity of `g` from `domain` onto `domain`, returning a colliding or
/// escaping point.
fn permutes_set(ctx: &FieldCtx, domain: &[Elem], g: impl Fn(Elem) -> Elem) -> Option<Elem> {
    let mut member = vec![false; ctx.size()];
    for &y in domain {
        member[y.index()] = true;
    }
    let mut hit = vec![false; ctx.size()];
    for &y in domain {
        let z = g(y);
        if !member[z.index()] || hit[z.index()] {
            return Some(y);
        }
        hit[z.index()] = true;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgwReport {
    pub commutes: bool,
    pub g_bijective: bool,
    pub fibers_injective: bool,
    /// `g` bijective and `f` injective on every fiber.
    pub criterion: bool,
    pub f_bijective: bool,
    /// Whether `criterion == f_bijective`; only meaningful when `commutes`.
    pub consistent: bool,
    /// Two points of one fiber with the same image under `f`.
    pub fiber_witness: Option<(Elem, Elem)>,
}

/// Checks the commuting square `lambda_bar . f = g . lambda` and the two
/// conditions that together are equivalent to `f` being a bijection.
/// `s` and `s_bar`, when given, must equal the images of the two maps.
pub fn agw_commute_check(
    ctx: &FieldCtx,
    f: &dyn FieldFn,
    lambda: &dyn FieldFn,
    lambda_bar: &dyn FieldFn,
    g: &dyn FieldFn,
    s: Option<&[Elem]>,
    s_bar: Option<&[Elem]>,
) -> Result<AgwReport> {
    let ft = eval_table(ctx, f)?;
    let lt = eval_table(ctx, lambda)?;
    let lbt = eval_table(ctx, lambda_bar)?;
    g.check(ctx)?;
    let s_img = image_set(ctx, lambda)?;
    let sb_img = image_set(ctx, lambda_bar)?;
    for (given, img, name) in [(s, &s_img, "lambda"), (s_bar, &sb_img, "lambda_bar")] {
        if let Some(given) = given {
            let mut given = given.to_vec();
            given.sort_unstable();
            given.dedup();
            if &given != img {
                return Err(Error::NotSurjective(format!(
                    "{name} has {} image points, the target set has {}",
                    img.len(),
                    given.len()
                )));
            }
        }
    }
    if s_img.len() != sb_img.len() {
        return Err(Error::NotSurjective(format!(
            "#S = {} but #S_bar = {}",
            s_img.len(),
            sb_img.len()
        )));
    }

    let commutes = ctx
        .elements()
        .all(|x| Elem(lbt[ft[x.index()] as usize]) == g.apply(ctx, Elem(lt[x.index()])));

    let mut in_sbar = vec![false; ctx.size()];
    for y in &sb_img {
        in_sbar[y.index()] = true;
    }
    let mut hit = vec![false; ctx.size()];
    let g_bijective = s_img.iter().all(|&y| {
        let z = g.apply(ctx, y).index();
        let fresh = in_sbar[z] && !hit[z];
        hit[z] = true;
        fresh
    });

    // Fiber injectivity: no two points with equal lambda and equal f.
    let mut seen: std::collections::HashMap<(u32, u32), u32> = std::collections::HashMap::new();
    let mut fiber_witness = None;
    for x in 0..ctx.order() as u32 {
        let key = (lt[x as usize], ft[x as usize]);
        if let Some(&prev) = seen.get(&key) {
            fiber_witness = Some((Elem(prev), Elem(x)));
            break;
        }
        seen.insert(key, x);
    }
    let fibers_injective = fiber_witness.is_none();

    let mut image = vec![false; ctx.size()];
    let f_bijective = ft.iter().all(|&y| !std::mem::replace(&mut image[y as usize], true));
    let criterion = g_bijective && fibers_injective;
    Ok(AgwReport {
        commutes,
        g_bijective,
        fibers_injective,
        criterion,
        f_bijective,
        consistent: criterion == f_bijective,
        fiber_witness,
    })
}

/// `x^d` permutes GF(q) when `gcd(d, q-1) = 1`, and is then an n-cycle
/// exactly when `d^n = 1 (mod q-1)`.
pub fn monomial_ncycle(d: &BigUint, field_order_minus_1: u64, n: u64) -> Result<bool> {
    let m = BigUint::from(field_order_minus_1);
    if m.is_zero() {
        return Err(Error::bad("q - 1 must be positive"));
    }
    if !d.gcd(&m).is_one() {
        return Err(Error::NotPermutation(format!("gcd({d}, {field_order_minus_1}) != 1")));
    }
    Ok(d.modpow(&BigUint::from(n), &m) == BigUint::one() % &m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    /// `m | n i`.
    pub condition_holds: bool,
    /// Whether `f(x)^(q^i)` is an n-cycle, by exhaustion.
    pub twisted_ncycle: bool,
}

/// For `f` with coefficients in GF(q) that is an n-cycle over GF(q^m):
/// `f(x)^(q^i)` is again an n-cycle whenever `m | n i`.
pub fn frobenius_twist_ncycle(ctx: &FieldCtx, f: &SparsePoly, sub_degree: u32, i: u64, n: u64) -> Result<TwistReport> {
    let m = ctx.check_subfield(sub_degree)? as u64;
    if !f.coeffs_in_subfield(ctx, sub_degree)? {
        return Err(Error::bad("coefficients must lie in GF(q)"));
    }
    let base = PermMap::from_fn(ctx, f).map_err(|_| Error::PrereqNotNcycle(n))?;
    if !base.is_ncycle(n) {
        return Err(Error::PrereqNotNcycle(n));
    }
    let twisted = PermMap::from_fn(ctx, &|x: Elem| {
        ctx.frob_unchecked(f.eval_unchecked(ctx, x), sub_degree, i)
    })
    .expect("a power of a permutation is a permutation");
    Ok(TwistReport {
        condition_holds: (n * i) % m == 0,
        twisted_ncycle: twisted.is_ncycle(n),
    })
}

/// Criterion for `f(x) = x h(lambda(x))`: with `g(y) = y k(h(y))`,
/// `f` is an n-cycle iff `prod_{i<n} h(g^(i)(y)) = 1` on `lambda(F)`.
///
/// Hypotheses checked by exhaustion: `h(0) != 0`, `k(0) = 0`, `g` permutes
/// `lambda(F)`, and `lambda(a x) = k(a) lambda(x)` for every `a` in
/// `S = h(lambda(F)) + {0, 1}`. The point `y = 0` is checked only when
/// `lambda` has a nonzero root, since otherwise only `x = 0` maps there.
/// `checks["necessary"]` reports `prod_{i<n} k(h(g^(i)(y))) = 1`.
pub fn xh_lambda_criterion(
    ctx: &FieldCtx,
    h: &SparsePoly,
    lambda: &dyn FieldFn,
    k: &SparsePoly,
    n: u64,
) -> Result<CriterionVerdict> {
    h.check_ctx(ctx)?;
    k.check_ctx(ctx)?;
    if n == 0 {
        return Err(Error::bad("n must be positive"));
    }
    let lt = eval_table(ctx, lambda)?;
    let image = image_set(ctx, lambda)?;
    let hv = |y: Elem| h.eval_unchecked(ctx, y);
    let kv = |y: Elem| k.eval_unchecked(ctx, y);
    let g = |y: Elem| ctx.mul(y, kv(hv(y)));

    let mut failures = Vec::new();
    if hv(Elem::ZERO).is_zero() {
        failures.push("h(0) = 0".to_string());
    }
    if !kv(Elem::ZERO).is_zero() {
        failures.push("k(0) != 0".to_string());
    }
    if let Some(y) = permutes_set(ctx, &image, g) {
        failures.push(format!("g(y) = y k(h(y)) does not permute lambda(F) (at y = {y})"));
    }
    let mut s: Vec<Elem> = image.iter().map(|&y| hv(y)).collect();
    s.extend([Elem::ZERO, Elem::ONE]);
    s.sort_unstable();
    s.dedup();
    let scaling = s.par_iter().find_map_first(|&a| {
        let ka = kv(a);
        ctx.elements()
            .find(|&x| Elem(lt[ctx.mul(a, x).index()]) != ctx.mul(ka, Elem(lt[x.index()])))
            .map(|x| (a, x))
    });
    if let Some((a, x)) = scaling {
        failures.push(format!("lambda(a x) != k(a) lambda(x) at a = {a}, x = {x}"));
    }
    hypotheses(failures)?;

    let kernel_nontrivial = lt.iter().skip(1).any(|&v| v == 0);
    let domain: Vec<Elem> = image
        .iter()
        .copied()
        .filter(|y| !y.is_zero() || kernel_nontrivial)
        .collect();
    let product = |y: Elem, outer: &dyn Fn(Elem) -> Elem| {
        let mut cur = y;
        let mut acc = Elem::ONE;
        for _ in 0..n {
            acc = ctx.mul(acc, outer(hv(cur)));
            cur = g(cur);
        }
        acc
    };
    let first = first_failure(&domain, Elem::ONE, |y| product(y, &|v| v));
    let necessary = first_failure(&image, Elem::ONE, |y| product(y, &kv)).is_none();
    let mut verdict = CriterionVerdict::from_scan(domain.len(), first);
    verdict.checks.insert("necessary".into(), necessary);
    Ok(verdict)
}

/// Criterion for `f(x) = phi(x) + g(psi(x))` with q-linearized `phi`,
/// `psi`: with `fbar(x) = phi(x) + psi(g(x))`, `f` is an n-cycle iff
/// `sum_{k<n} phi^(n-1-k)(g(fbar^(k)(y))) = 0` on `psi(F)`.
///
/// Hypotheses: `phi`, `psi` q-linearized, `phi` an n-cycle, `phi` and `psi`
/// commute.
pub fn additive_criterion(
    ctx: &FieldCtx,
    phi: &SparsePoly,
    psi: &SparsePoly,
    g: &dyn FieldFn,
    sub_degree: u32,
    n: u64,
) -> Result<CriterionVerdict> {
    phi.check_ctx(ctx)?;
    psi.check_ctx(ctx)?;
    g.check(ctx)?;
    if n == 0 {
        return Err(Error::bad("n must be positive"));
    }
    let mut failures = Vec::new();
    if !phi.is_q_linearized(ctx, sub_degree)? {
        failures.push("phi is not a q-polynomial".to_string());
    }
    if !psi.is_q_linearized(ctx, sub_degree)? {
        failures.push("psi is not a q-polynomial".to_string());
    }
    let phi_perm = match PermMap::from_fn(ctx, phi) {
        Ok(p) if p.is_ncycle(n) => Some(p),
        Ok(_) => {
            failures.push(format!("phi is not an {n}-cycle"));
            None
        }
        Err(_) => {
            failures.push("phi is not a permutation".to_string());
            None
        }
    };
    if let Some(x) = ctx.elements().find(|&x| {
        phi.eval_unchecked(ctx, psi.eval_unchecked(ctx, x)) != psi.eval_unchecked(ctx, phi.eval_unchecked(ctx, x))
    }) {
        failures.push(format!("phi and psi do not commute at x = {x}"));
    }
    hypotheses(failures)?;
    let phi_perm = phi_perm.expect("checked above");

    let domain = image_set(ctx, psi)?;
    let fbar = |x: Elem| ctx.add(phi_perm.apply(x), psi.eval_unchecked(ctx, g.apply(ctx, x)));
    // phi is additive, so the sum folds Horner-style.
    let first = first_failure(&domain, Elem::ZERO, |y| {
        let mut cur = y;
        let mut acc = Elem::ZERO;
        for _ in 0..n {
            acc = ctx.add(phi_perm.apply(acc), g.apply(ctx, cur));
            cur = fbar(cur);
        }
        acc
    });
    Ok(CriterionVerdict::from_scan(domain.len(), first))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftParams {
    /// Frobenius index, `1 <= i <= m - 1`.
    pub i: u32,
    pub delta: Elem,
    pub sub_degree: u32,
}

impl ShiftParams {
    pub fn validate(&self, ctx: &FieldCtx) -> Result<u32> {
        let m = ctx.check_subfield(self.sub_degree)?;
        if self.i == 0 || self.i >= m {
            return Err(Error::bad(format!(
                "need 1 <= i <= m - 1 = {}, got i = {}",
                m - 1,
                self.i
            )));
        }
        if self.delta.0 as u64 >= ctx.order() {
            return Err(Error::bad(format!("delta {} out of range", self.delta)));
        }
        Ok(m)
    }

    /// `gcd(i, m)`.
    pub fn ell(&self, ctx: &FieldCtx) -> u32 {
        nt::gcd(self.i, ctx.n() / self.sub_degree)
    }

    /// `x^(q^i) - x + delta`.
    pub fn inner(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        ctx.add(
            ctx.sub(ctx.frob_unchecked(x, self.sub_degree, self.i as u64), x),
            self.delta,
        )
    }

    /// `S_delta`, sorted.
    pub fn s_delta(&self, ctx: &FieldCtx) -> Result<Vec<Elem>> {
        self.validate(ctx)?;
        let me = *self;
        image_set(ctx, &move |x: Elem| me.inner(ctx, x))
    }
}

/// Criterion for `f(x) = g(x^(q^i) - x + delta) + x`: with
/// `h(y) = g(y)^(q^i) - g(y) + y`, `f` is an n-cycle iff
/// `sum_{k<n} g(h^(k)(y)) = 0` on `S_delta`.
pub fn shift_criterion(ctx: &FieldCtx, g: &dyn FieldFn, params: &ShiftParams, n: u64) -> Result<CriterionVerdict> {
    g.check(ctx)?;
    if n == 0 {
        return Err(Error::bad("n must be positive"));
    }
    let domain = params.s_delta(ctx)?;
    let h = |y: Elem| {
        let gy = g.apply(ctx, y);
        ctx.add(
            ctx.sub(ctx.frob_unchecked(gy, params.sub_degree, params.i as u64), gy),
            y,
        )
    };
    if let Some(y) = domain.iter().find(|&&y| domain.binary_search(&h(y)).is_err()) {
        return Err(Error::hyp(format!("h does not map S_delta into itself (y = {y})")));
    }
    let first = first_failure(&domain, Elem::ZERO, |y| {
        let mut cur = y;
        let mut acc = Elem::ZERO;
        for _ in 0..n {
            acc = ctx.add(acc, g.apply(ctx, cur));
            cur = h(cur);
        }
        acc
    });
    Ok(CriterionVerdict::from_scan(domain.len(), first))
}

/// `(r, s)` for maps `x^r h(x^s)` over a field of order `Q`, with
/// `s | Q - 1`, `gcd(r, s) = 1` and `ell = (Q - 1) / s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RsParams {
    pub r: u64,
    pub s: u64,
    pub ell: u64,
}

impl RsParams {
    pub fn new(ctx: &FieldCtx, r: u64, s: u64) -> Result<Self> {
        let qm1 = ctx.order() - 1;
        if s == 0 || qm1 % s != 0 {
            return Err(Error::bad(format!("s = {s} does not divide q - 1 = {qm1}")));
        }
        if r == 0 || nt::gcd(r, s) != 1 {
            return Err(Error::bad(format!(
                "need r >= 1 and gcd(r, s) = 1, got r = {r}, s = {s}"
            )));
        }
        Ok(RsParams { r, s, ell: qm1 / s })
    }

    fn r_cubed_minus_1_over_s(&self) -> Option<BigUint> {
        let r3 = BigUint::from(self.r).pow(3u32);
        let s = BigUint::from(self.s);
        (&r3 % &s == BigUint::one() % &s).then(|| (r3 - 1u32) / s)
    }
}

/// `g(y) = y^r h(y)^s`.
fn rs_g(ctx: &FieldCtx, h: &SparsePoly, p: &RsParams, y: Elem) -> Elem {
    ctx.mul(ctx.pow(y, p.r), ctx.pow(h.eval_unchecked(ctx, y), p.s))
}

/// Triple-cycle criterion for `f(x) = x^r h(x^s)`: `r^3 = 1 (mod s)` and
/// `y^((r^3-1)/s) h(y)^(r^2) h(g(y))^r h(g(g(y))) = 1` on `mu_ell`.
/// `checks["g_cubed_identity"]` reports `g(g(g(y))) = y` on `mu_ell`.
pub fn rs_triple_criterion(ctx: &FieldCtx, h: &SparsePoly, params: &RsParams) -> Result<CriterionVerdict> {
    h.check_ctx(ctx)?;
    let params = RsParams::new(ctx, params.r, params.s)?;
    let mu = ctx.subgroup_mu(params.ell)?;
    let Some(e) = params.r_cubed_minus_1_over_s() else {
        let mut v = CriterionVerdict::from_scan(0, None);
        v.holds = false;
        v.reason = Some(format!("r^3 != 1 (mod s) for r = {}, s = {}", params.r, params.s));
        return Ok(v);
    };
    let r = BigUint::from(params.r);
    let r2 = &r * &r;
    let hv = |y: Elem| h.eval_unchecked(ctx, y);
    let g = |y: Elem| rs_g(ctx, h, &params, y);
    let first = first_failure(&mu, Elem::ONE, |y| {
        let gy = g(y);
        let ggy = g(gy);
        let a = ctx.mul(ctx.pow_big(y, &e), ctx.pow_big(hv(y), &r2));
        ctx.mul(a, ctx.mul(ctx.pow_big(hv(gy), &r), hv(ggy)))
    });
    let g3 = mu.par_iter().all(|&y| g(g(g(y))) == y);
    let mut v = CriterionVerdict::from_scan(mu.len(), first);
    v.checks.insert("g_cubed_identity".into(), g3);
    Ok(v)
}

/// The single-condition variant: given `h(y)^s = a y^(v-r)` on `mu_ell`,
/// with `v^3 = 1 (mod ell)` and `a^(v^2+v+1) = 1`, the map `x^r h(x^s)` is
/// a triple-cycle iff `y^((r^3-1)/s) h(y)^(r^2) h(a y^v)^r h(a^(v+1) y^(v^2)) = 1`
/// on `mu_ell`.
pub fn rs_single_criterion(
    ctx: &FieldCtx,
    h: &SparsePoly,
    params: &RsParams,
    a: Elem,
    v: u64,
) -> Result<CriterionVerdict> {
    h.check_ctx(ctx)?;
    let params = RsParams::new(ctx, params.r, params.s)?;
    let ell = params.ell;
    let mu = ctx.subgroup_mu(ell)?;
    let mut failures = Vec::new();
    let e = params.r_cubed_minus_1_over_s();
    if e.is_none() {
        failures.push("r^3 != 1 (mod s)".to_string());
    }
    let v_big = BigUint::from(v);
    if v_big.modpow(&BigUint::from(3u32), &BigUint::from(ell)) != BigUint::one() % ell {
        failures.push(format!("v^3 != 1 (mod {ell})"));
    }
    let v2 = &v_big * &v_big;
    if ctx.pow_big(a, &(&v2 + &v_big + 1u32)) != Elem::ONE {
        failures.push("a^(v^2+v+1) != 1".to_string());
    }
    let shift = v as i128 - params.r as i128;
    if let Some(&y) = mu
        .iter()
        .find(|&&y| ctx.pow(h.eval_unchecked(ctx, y), params.s) != ctx.mul(a, ctx.pow_signed(y, shift)))
    {
        failures.push(format!("h(y)^s != a y^(v-r) at y = {y}"));
    }
    hypotheses(failures)?;
    let e = e.expect("checked above");
    let r = BigUint::from(params.r);
    let r2 = &r * &r;
    let hv = |y: Elem| h.eval_unchecked(ctx, y);
    let av1 = ctx.pow_big(a, &(&v_big + 1u32));
    let first = first_failure(&mu, Elem::ONE, |y| {
        let t0 = ctx.mul(ctx.pow_big(y, &e), ctx.pow_big(hv(y), &r2));
        let t1 = ctx.pow_big(hv(ctx.mul(a, ctx.pow_big(y, &v_big))), &r);
        let t2 = hv(ctx.mul(av1, ctx.pow_big(y, &v2)));
        ctx.mul(t0, ctx.mul(t1, t2))
    });
    Ok(CriterionVerdict::from_scan(mu.len(), first))
}

/// Checks a claimed closed-form inverse: `f(f(x)) = inv(x)` and
/// `f(inv(x)) = x` everywhere, which together mean `f` is a triple-cycle
/// whose inverse is `inv`.
pub fn closed_inverse_check(ctx: &FieldCtx, f: &dyn FieldFn, inv: &dyn FieldFn) -> Result<CriterionVerdict> {
    let ft = eval_table(ctx, f)?;
    let it = eval_table(ctx, inv)?;
    let all: Vec<Elem> = ctx.elements().collect();
    let ff_matches = first_failure(&all, Elem::ZERO, |x| {
        ctx.sub(Elem(ft[ft[x.index()] as usize]), Elem(it[x.index()]))
    })
    .is_none();
    let first = first_failure(&all, Elem::ZERO, |x| {
        let a = ctx.sub(Elem(ft[ft[x.index()] as usize]), Elem(it[x.index()]));
        if a.is_zero() {
            ctx.sub(Elem(ft[it[x.index()] as usize]), x)
        } else {
            a
        }
    });
    let mut v = CriterionVerdict::from_scan(all.len(), first);
    v.checks.insert("square_is_inverse".into(), ff_matches);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{LambdaSpec, LambdaVariant};
    use crate::field::make_field;
    use crate::map::MapExpr;

    fn poly(ctx: &FieldCtx, text: &str) -> SparsePoly {
        SparsePoly::parse(ctx, text, None).unwrap()
    }

    #[test]
    fn monomial_examples() {
        assert!(monomial_ncycle(&BigUint::from(1u32), 6, 3).unwrap());
        assert!(monomial_ncycle(&BigUint::from(5u32), 6, 2).unwrap());
        assert!(!monomial_ncycle(&BigUint::from(5u32), 6, 3).unwrap());
        // x^q over GF(q^m) with q = 4, m = 3
        assert!(monomial_ncycle(&BigUint::from(4u32), 63, 3).unwrap());
        assert!(matches!(
            monomial_ncycle(&BigUint::from(2u32), 6, 2),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn agw_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let cube = poly(&f7, "x^3");
        let x5 = poly(&f7, "x^5");
        let r = agw_commute_check(&f7, &x5, &cube, &cube, &x5, None, None).unwrap();
        assert!(r.commutes && r.criterion && r.f_bijective && r.consistent);

        let x2 = poly(&f7, "x^2");
        let r = agw_commute_check(&f7, &x2, &cube, &cube, &x2, None, None).unwrap();
        assert!(r.commutes);
        assert!(!r.g_bijective);
        assert!(r.fibers_injective);
        assert!(!r.criterion && !r.f_bijective && r.consistent);

        let id = SparsePoly::x(&f7);
        let r = agw_commute_check(&f7, &id, &cube, &cube, &id, None, None).unwrap();
        assert!(r.criterion && r.f_bijective);

        let wrong = [Elem(0), Elem(1)];
        assert!(matches!(
            agw_commute_check(&f7, &id, &cube, &cube, &id, Some(&wrong), None),
            Err(Error::NotSurjective(_))
        ));
    }

    #[test]
    fn frobenius_twist_examples() {
        let f49 = make_field(7, 2, None).unwrap();
        // x^25 has coefficients in GF(7) and is an involution of GF(49).
        let f = poly(&f49, "x^25");
        let r = frobenius_twist_ncycle(&f49, &f, 1, 1, 2).unwrap();
        assert!(r.condition_holds && r.twisted_ncycle);
        assert!(frobenius_twist_ncycle(&f49, &f, 1, 0, 2).unwrap().condition_holds);
        // x^5 has order 4 here, so it is not an involution.
        assert_eq!(
            frobenius_twist_ncycle(&f49, &poly(&f49, "x^5"), 1, 1, 2),
            Err(Error::PrereqNotNcycle(2))
        );
        let f8 = make_field(2, 3, None).unwrap();
        let r = frobenius_twist_ncycle(&f8, &SparsePoly::x(&f8), 1, 1, 2).unwrap();
        assert!(!r.condition_holds);
    }

    #[test]
    fn xh_lambda_involution_corollary() {
        let ctx = make_field(5, 2, None).unwrap();
        let h = poly(&ctx, "1 + 3*x^4");
        let lam = MapExpr::Lambda(LambdaSpec::new(LambdaVariant::Lambda1, 2, 1));
        let k = poly(&ctx, "x^2");
        let v = xh_lambda_criterion(&ctx, &h, &lam, &k, 2).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.checks["necessary"], true);
        assert!(!xh_lambda_criterion(&ctx, &h, &lam, &k, 3).unwrap().holds);

        let trivial = xh_lambda_criterion(&ctx, &SparsePoly::constant(&ctx, Elem::ONE), &lam, &k, 3).unwrap();
        assert!(trivial.holds);
    }

    #[test]
    fn xh_lambda_hypothesis_failures() {
        let ctx = make_field(5, 2, None).unwrap();
        let lam = MapExpr::Lambda(LambdaSpec::new(LambdaVariant::Lambda1, 2, 1));
        let k = poly(&ctx, "x^2");
        match xh_lambda_criterion(&ctx, &poly(&ctx, "x"), &lam, &k, 2) {
            Err(Error::HypothesisViolated(w)) => assert!(w.iter().any(|s| s.contains("h(0)"))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn additive_example() {
        let ctx = make_field(3, 2, None).unwrap();
        let phi = SparsePoly::x(&ctx);
        let psi = poly(&ctx, "x^3 + 2*x");
        let g = MapExpr::trace(1, MapExpr::power(MapExpr::x(&ctx), 2u32));
        let v = additive_criterion(&ctx, &phi, &psi, &g, 1, 3).unwrap();
        assert!(v.holds);
        let v2 = additive_criterion(&ctx, &phi, &psi, &g, 1, 2).unwrap();
        assert!(!v2.holds && v2.witness.is_some());
        let zero = SparsePoly::zero(&ctx);
        assert!(additive_criterion(&ctx, &phi, &psi, &zero, 1, 1).unwrap().holds);
    }

    #[test]
    fn shift_example() {
        let ctx = make_field(3, 2, None).unwrap();
        let g = poly(&ctx, "x^4");
        for d in ctx.elements() {
            let params = ShiftParams {
                i: 1,
                delta: d,
                sub_degree: 1,
            };
            assert!(shift_criterion(&ctx, &g, &params, 3).unwrap().holds);
        }
        let params = ShiftParams {
            i: 0,
            delta: Elem::ZERO,
            sub_degree: 1,
        };
        assert!(matches!(
            shift_criterion(&ctx, &g, &params, 3),
            Err(Error::BadParams(_))
        ));
        // Same shape in characteristic 2 is not a triple-cycle.
        let f4 = make_field(2, 2, None).unwrap();
        let g = poly(&f4, "x^3");
        let params = ShiftParams {
            i: 1,
            delta: Elem::ONE,
            sub_degree: 1,
        };
        let v = shift_criterion(&f4, &g, &params, 3).unwrap();
        assert!(!v.holds && v.witness.is_some());
    }

    #[test]
    fn rs_triple_example() {
        let ctx = make_field(2, 12, None).unwrap();
        let h = poly(&ctx, "x^5 + x^45 + x^25");
        let params = RsParams::new(&ctx, 1, 63).unwrap();
        let v = rs_triple_criterion(&ctx, &h, &params).unwrap();
        assert!(v.holds);
        assert_eq!(v.domain_size, 65);
        assert_eq!(v.checks["g_cubed_identity"], true);

        assert!(RsParams::new(&ctx, 1, 64).is_err());
        assert!(RsParams::new(&ctx, 3, 63).is_err());

        let f7 = make_field(7, 1, None).unwrap();
        let one = SparsePoly::constant(&f7, Elem::ONE);
        // x^2 h(x^3) with r = 2: 8 != 1 mod 3
        let v = rs_triple_criterion(&f7, &one, &RsParams::new(&f7, 2, 3).unwrap()).unwrap();
        assert!(!v.holds && v.reason.is_some());
    }

    #[test]
    fn rs_single_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let one = SparsePoly::constant(&f7, Elem::ONE);
        let p = RsParams::new(&f7, 1, 1).unwrap();
        assert!(rs_single_criterion(&f7, &one, &p, Elem::ONE, 1).unwrap().holds);
        let bad = poly(&f7, "x + 2");
        assert!(matches!(
            rs_single_criterion(&f7, &bad, &p, Elem::ONE, 1),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn closed_inverse() {
        let f7 = make_field(7, 1, None).unwrap();
        // x -> 2x has order 3 with inverse 4x
        let f = poly(&f7, "2*x");
        assert!(closed_inverse_check(&f7, &f, &poly(&f7, "4*x")).unwrap().holds);
        assert!(!closed_inverse_check(&f7, &f, &poly(&f7, "3*x")).unwrap().holds);
    }
}
