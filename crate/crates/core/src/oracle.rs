//! Brute-force ground truth. The cycle walk here is written separately from
//! [`crate::perm`] so that the two can be checked against each other.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::constructions::{
    build_additive, build_jieguo, build_rs_2to3m, build_shift, build_trace_theta, build_xh_lambda, build_xq_h_alpha,
    search_k_2to3m, solve_jieguo_congruences, AdditiveVariant, Family, FamilyInstance, LambdaVariant, ShiftVariant,
    XhVariant,
};
use crate::criteria::CriterionVerdict;
use crate::error::{Error, Result};
use crate::field::{make_field, Elem, FieldCtx};
use crate::map::FieldFn;
use crate::nt;
use crate::perm::PermMap;
use crate::poly::SparsePoly;
use crate::walsh::{walsh_involution_test, WALSH_CAP};

/// Largest field the oracle will tabulate.
pub const ORACLE_CAP: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub bijective: bool,
    /// `None` when `f` is not a permutation.
    #[serde(serialize_with = "serialize_order")]
    pub order: Option<BigUint>,
    pub is_ncycle_at: BTreeMap<u64, bool>,
    /// First pair of distinct points with equal images, in literal order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<(Elem, Elem)>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn serialize_order<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(o) => crate::perm::serialize_big(o, s),
        None => s.serialize_str("not a permutation"),
    }
}

/// Tabulates `f`, then answers bijectivity, exact order and `f^(n) = id`
/// for each requested `n`.
pub fn exhaustive_verdict(ctx: &FieldCtx, f: &dyn FieldFn, ns: &[u64]) -> Result<OracleVerdict> {
    let start = Instant::now();
    let q = ctx.order();
    if q > ORACLE_CAP {
        return Err(Error::CapExceeded {
            size: q,
            cap: ORACLE_CAP,
        });
    }
    f.check(ctx)?;
    let table: Vec<u32> = (0..q as u32).into_par_iter().map(|x| f.apply(ctx, Elem(x)).0).collect();

    let mut preimage = vec![u32::MAX; table.len()];
    let mut collision = None;
    for (x, &y) in table.iter().enumerate() {
        let slot = &mut preimage[y as usize];
        if *slot != u32::MAX {
            collision = Some((Elem(*slot), Elem(x as u32)));
            break;
        }
        *slot = x as u32;
    }
    if collision.is_some() {
        return Ok(OracleVerdict {
            bijective: false,
            order: None,
            is_ncycle_at: ns.iter().map(|&n| (n, false)).collect(),
            collision,
            elapsed: start.elapsed(),
        });
    }

    let mut visited = vec![0u64; table.len().div_ceil(64)];
    let mut lengths: Vec<u64> = Vec::new();
    for start_pt in 0..table.len() {
        if visited[start_pt / 64] >> (start_pt % 64) & 1 == 1 {
            continue;
        }
        let mut len = 0u64;
        let mut cur = start_pt;
        loop {
            visited[cur / 64] |= 1 << (cur % 64);
            len += 1;
            cur = table[cur] as usize;
            if cur == start_pt {
                break;
            }
        }
        if !lengths.contains(&len) {
            lengths.push(len);
        }
    }
    let order = lengths
        .iter()
        .fold(BigUint::one(), |acc, &l| acc.lcm(&BigUint::from(l)));
    let is_ncycle_at = ns
        .iter()
        .map(|&n| (n, n >= 1 && lengths.iter().all(|&l| n % l == 0)))
        .collect();
    Ok(OracleVerdict {
        bijective: true,
        order: Some(order),
        is_ncycle_at,
        collision: None,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Agreement {
    Agree,
    Disagree,
    /// The criterion's hypotheses failed, so there is nothing to compare.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub family: Family,
    pub poly: String,
    pub claimed_n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secondary: Option<CriterionVerdict>,
    pub oracle: OracleVerdict,
    /// Walsh symmetry, computed for permutations within [`WALSH_CAP`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walsh_symmetric: Option<bool>,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
}

/// Runs the instance's criterion, the exhaustive oracle, the table-based
/// cycle structure and (within the cap) the Walsh test, and compares them.
pub fn cross_check(inst: &FamilyInstance) -> Result<CrossCheck> {
    let ctx = &inst.ctx;
    let n = inst.claimed_n;
    let oracle = exhaustive_verdict(ctx, &inst.f, &[n])?;
    let truth = oracle.is_ncycle_at[&n];
    let mut mismatches = Vec::new();

    let (criterion, criterion_error) = match inst.criterion() {
        Ok(v) => (Some(v), None),
        Err(e @ Error::HypothesisViolated(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    if let Some(v) = &criterion {
        if v.holds != truth {
            mismatches.push(format!("criterion says {}, oracle says {truth}", v.holds));
        }
    }
    let secondary = match inst.secondary_criterion() {
        Some(Ok(v)) => {
            if v.holds != truth {
                mismatches.push(format!(
                    "single-condition criterion says {}, oracle says {truth}",
                    v.holds
                ));
            }
            Some(v)
        }
        Some(Err(Error::HypothesisViolated(_))) | None => None,
        Some(Err(e)) => return Err(e),
    };

    let mut walsh_symmetric = None;
    if oracle.bijective {
        let perm = PermMap::from_fn(ctx, &inst.f)?;
        let report = perm.cycle_structure();
        if Some(&report.order) != oracle.order.as_ref() {
            mismatches.push(format!(
                "cycle walk order {} differs from oracle order {:?}",
                report.order, oracle.order
            ));
        }
        if ctx.order() <= WALSH_CAP {
            let sym = walsh_involution_test(ctx, &perm)?.symmetric;
            let involution = oracle.order.as_ref().is_some_and(|o| o <= &BigUint::from(2u32));
            if sym != involution {
                mismatches.push(format!("Walsh symmetry {sym} but involution {involution}"));
            }
            walsh_symmetric = Some(sym);
        }
    }

    let agreement = if !mismatches.is_empty() {
        Agreement::Disagree
    } else if criterion.is_none() {
        Agreement::Inconclusive
    } else {
        Agreement::Agree
    };
    Ok(CrossCheck {
        family: inst.family,
        poly: inst.poly_text(),
        claimed_n: n,
        criterion,
        criterion_error,
        secondary,
        oracle,
        walsh_symmetric,
        agreement,
        mismatches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialKind {
    Valid,
    Perturbed,
    Invalid,
}

/// One fuzz trial, written as a JSON line.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzRecord {
    pub family: Family,
    pub seed: u64,
    pub trial: u32,
    pub kind: TrialKind,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<Agreement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ncycle: Option<bool>,
    /// For invalid tuples: whether the constructor rejected them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl FuzzRecord {
    /// A failed trial is a disagreement or an invalid tuple that was
    /// accepted.
    pub fn failed(&self) -> bool {
        self.agreement == Some(Agreement::Disagree) || self.rejected == Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub family: Family,
    pub seed: u64,
    pub trials: u32,
    pub agree: u32,
    pub disagree: u32,
    pub inconclusive: u32,
    pub rejected: u32,
    pub accepted_invalid: u32,
    #[serde(skip)]
    pub records: Vec<FuzzRecord>,
}

impl FuzzSummary {
    pub fn clean(&self) -> bool {
        self.disagree == 0 && self.accepted_invalid == 0
    }
}

/// Seeded trials cycling through valid, perturbed and invalid parameter
/// tuples for one family.
pub fn random_family_fuzz(family: Family, seed: u64, trials: u32) -> Result<FuzzSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = FuzzSummary {
        family,
        seed,
        trials,
        agree: 0,
        disagree: 0,
        inconclusive: 0,
        rejected: 0,
        accepted_invalid: 0,
        records: Vec::new(),
    };
    for trial in 0..trials {
        let kind = [TrialKind::Valid, TrialKind::Perturbed, TrialKind::Invalid][trial as usize % 3];
        let mut rec = FuzzRecord {
            family,
            seed,
            trial,
            kind,
            field: String::new(),
            params: None,
            agreement: None,
            criterion_holds: None,
            oracle_ncycle: None,
            rejected: None,
            error: None,
        };
        match kind {
            TrialKind::Valid | TrialKind::Perturbed => {
                let base = sample_valid(family, &mut rng)?;
                let (inst, check) = if kind == TrialKind::Valid {
                    let check = cross_check(&base)?;
                    (base, check)
                } else {
                    perturbed_check(&base, &mut rng)?
                };
                rec.field = field_label(&inst.ctx);
                rec.params = Some(Value::Object(inst.params.clone()));
                rec.criterion_holds = check.criterion.as_ref().map(|v| v.holds);
                rec.oracle_ncycle = Some(check.oracle.is_ncycle_at[&inst.claimed_n]);
                rec.error = check
                    .criterion_error
                    .clone()
                    .or_else(|| check.mismatches.first().cloned());
                rec.agreement = Some(check.agreement);
                match check.agreement {
                    Agreement::Agree => summary.agree += 1,
                    Agreement::Disagree => summary.disagree += 1,
                    Agreement::Inconclusive => summary.inconclusive += 1,
                }
            }
            TrialKind::Invalid => {
                let (ctx, description, result) = sample_invalid(family, &mut rng)?;
                rec.field = field_label(&ctx);
                rec.params = Some(description);
                match result {
                    Ok(_) => {
                        rec.rejected = Some(false);
                        summary.accepted_invalid += 1;
                    }
                    Err(e) => {
                        rec.rejected = Some(true);
                        rec.error = Some(e.to_string());
                        summary.rejected += 1;
                    }
                }
            }
        }
        summary.records.push(rec);
    }
    Ok(summary)
}

/// Perturbs until the criterion's hypotheses hold, up to a few attempts.
fn perturbed_check(base: &FamilyInstance, rng: &mut ChaCha8Rng) -> Result<(FamilyInstance, CrossCheck)> {
    let mut last = None;
    for _ in 0..8 {
        let inst = base.perturbed(rng);
        let check = cross_check(&inst)?;
        if check.agreement != Agreement::Inconclusive {
            return Ok((inst, check));
        }
        last = Some((inst, check));
    }
    Ok(last.expect("at least one attempt"))
}

fn field_label(ctx: &FieldCtx) -> String {
    format!("GF({}^{})", ctx.p(), ctx.n())
}

/// `(p, n, q)` triples a family is sampled over.
fn fields_for(family: Family) -> &'static [(u32, u32, u64)] {
    match family {
        Family::ThetaCor => &[(5, 2, 5), (7, 2, 7), (2, 4, 4), (3, 4, 9), (2, 6, 8), (13, 2, 13)],
        Family::InvolutionCor => &[(5, 2, 5), (7, 2, 7), (3, 2, 3), (3, 3, 3)],
        Family::AbcCor => &[(5, 2, 5), (13, 2, 13), (5, 4, 25)],
        Family::CustomH => &[(5, 2, 5), (7, 2, 7), (2, 4, 4), (3, 4, 9), (3, 3, 3)],
        Family::AdditiveTraceG1 | Family::AdditivePowerG2 => {
            &[(3, 2, 3), (3, 3, 3), (2, 4, 4), (2, 6, 4), (2, 6, 8), (5, 2, 5)]
        }
        Family::CTraceQ2 => &[(3, 2, 3), (5, 2, 5), (7, 2, 7), (2, 4, 4), (2, 6, 8)],
        Family::XqGTrace => &[(3, 3, 3), (2, 6, 4), (5, 3, 5), (2, 9, 8)],
        Family::ShiftTraceG1 | Family::ShiftPowerG2 => {
            &[(2, 4, 2), (2, 6, 2), (2, 6, 4), (3, 4, 3), (3, 3, 3), (5, 2, 5)]
        }
        Family::Rs2to3m => &[(2, 9, 8)],
        Family::XqHAlpha | Family::TraceTheta => &[(2, 6, 4), (2, 12, 16)],
        Family::Jieguo => &[(2, 12, 64)],
    }
}

fn pick_field(family: Family, rng: &mut ChaCha8Rng) -> Result<(FieldCtx, u64, u32)> {
    let &(p, n, q) = fields_for(family).choose(rng).expect("nonempty");
    let ctx = make_field(p, n, None)?;
    let sd = (0..=n).find(|&d| (p as u64).pow(d) == q).expect("q is a power of p");
    Ok((ctx, q, sd))
}

/// lambda2 needs `n <= m`; otherwise lambda1 is the only choice.
fn random_lambda(rng: &mut ChaCha8Rng, n: u64, m: u32) -> LambdaVariant {
    if n > m as u64 || rng.gen_bool(0.5) {
        LambdaVariant::Lambda1
    } else {
        LambdaVariant::Lambda2
    }
}

fn random_unit(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Elem {
    Elem(rng.gen_range(1..ctx.order()) as u32)
}

/// A polynomial with 1 to 3 terms, exponents below `q^n - 1`.
fn random_poly(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> SparsePoly {
    let terms = rng.gen_range(1..=3);
    SparsePoly::new(
        ctx,
        (0..terms).map(|_| (random_unit(ctx, rng), BigUint::from(rng.gen_range(0..ctx.order() - 1)))),
    )
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn primitive_root_of_order(ctx: &FieldCtx, sd: u32, n: u64) -> Result<Elem> {
    let members = ctx.subfield_members(sd)?;
    members
        .into_iter()
        .find(|&t| {
            !t.is_zero()
                && ctx.pow(t, n) == Elem::ONE
                && nt::factorize(n).iter().all(|&(r, _)| ctx.pow(t, n / r) != Elem::ONE)
        })
        .ok_or_else(|| Error::bad(format!("no element of order {n}")))
}

/// `h` over GF(q) with `h(c) = values[c]` for every `c` in GF(q), by
/// `h(y) = sum_c v_c (1 - (y - c)^(q-1))` and
/// `(y - c)^(q-1) = sum_j c^(q-1-j) y^j`.
fn interpolate(ctx: &FieldCtx, q: u64, points: &[Elem], values: &[Elem]) -> SparsePoly {
    let mut coeffs = vec![Elem::ZERO; q as usize];
    for (&c, &v) in points.iter().zip(values) {
        coeffs[0] = ctx.add(coeffs[0], v);
        for (j, slot) in coeffs.iter_mut().enumerate() {
            let term = ctx.mul(v, ctx.pow(c, q - 1 - j as u64));
            *slot = ctx.sub(*slot, term);
        }
    }
    SparsePoly::new(ctx, coeffs.into_iter().enumerate().map(|(j, c)| (c, BigUint::from(j))))
}

/// Valid `(a, b, c)` for the abc family over GF(q).
fn abc_tuples(p: u64, q: u64) -> Vec<(i64, i64, u64)> {
    let mut out = Vec::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            if (a * a + b * b) % p as i64 != 0 || (2 * a * b) % p as i64 != 1 {
                continue;
            }
            for c in 1..q - 1 {
                if (4 * c) % (q - 1) == 0 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

fn sample_valid(family: Family, rng: &mut ChaCha8Rng) -> Result<FamilyInstance> {
    // Random choices can land on degenerate parameters; redraw those.
    let mut last_err = None;
    for _ in 0..64 {
        match try_valid(family, rng) {
            Ok(inst) => return Ok(inst),
            Err(e @ (Error::DegenerateH(_) | Error::BadParams(_))) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

fn try_valid(family: Family, rng: &mut ChaCha8Rng) -> Result<FamilyInstance> {
    let (ctx, q, sd) = pick_field(family, rng)?;
    let ctx = &ctx;
    let p = ctx.p() as u64;
    let m = ctx.n() / sd;
    match family {
        Family::ThetaCor => {
            let ns: Vec<u64> = divisors(q - 1).into_iter().filter(|&d| d > 1).collect();
            let n = *ns.choose(rng).expect("q > 2");
            let theta = primitive_root_of_order(ctx, sd, n)?;
            let theta = ctx.pow(theta, coprime_exponent(n, rng));
            build_xh_lambda(
                ctx,
                q,
                random_lambda(rng, n, m),
                XhVariant::ThetaCor { n: n as u32, theta },
            )
        }
        Family::InvolutionCor => build_xh_lambda(ctx, q, random_lambda(rng, 2, m), XhVariant::InvolutionCor),
        Family::AbcCor => {
            let tuples = abc_tuples(p, q);
            let &(a, b, c) = tuples.choose(rng).ok_or_else(|| Error::bad("no abc tuples"))?;
            build_xh_lambda(ctx, q, random_lambda(rng, 2, m), XhVariant::AbcCor { a, b, c })
        }
        Family::CustomH => {
            let n = *divisors(q - 1).choose(rng).expect("nonempty");
            let roots: Vec<Elem> = ctx
                .subfield_members(sd)?
                .into_iter()
                .filter(|&t| !t.is_zero() && ctx.pow(t, n) == Elem::ONE)
                .collect();
            let points = ctx.subfield_members(sd)?;
            let values: Vec<Elem> = points
                .iter()
                .map(|_| *roots.choose(rng).expect("1 is a root"))
                .collect();
            let h = interpolate(ctx, q, &points, &values);
            build_xh_lambda(ctx, q, random_lambda(rng, n, m), XhVariant::CustomH { n: n as u32, h })
        }
        Family::AdditiveTraceG1 | Family::AdditivePowerG2 => {
            let c = random_unit(ctx, rng);
            let psi = SparsePoly::new(ctx, [(c, BigUint::from(q)), (ctx.neg(c), BigUint::from(1u32))]);
            let h = random_poly(ctx, rng);
            if family == Family::AdditiveTraceG1 {
                build_additive(ctx, q, AdditiveVariant::TraceG1 { psi, h })
            } else {
                let unit = (ctx.order() - 1) / (q - 1);
                let s = BigUint::from(unit * rng.gen_range(1..q));
                build_additive(ctx, q, AdditiveVariant::PowerG2 { psi, h, s })
            }
        }
        Family::CTraceQ2 => {
            let cs: Vec<Elem> = ctx
                .nonzero_elements()
                .filter(|&c| ctx.add(c, ctx.frobenius(c, sd, 1).expect("valid")).is_zero())
                .collect();
            let c = *cs.choose(rng).expect("c + c^q = 0 has nonzero solutions");
            let s = rng.gen_range(0..ctx.order() - 1);
            build_additive(ctx, q, AdditiveVariant::CTraceQ2 { c, s })
        }
        Family::XqGTrace => {
            let zero_trace: Vec<Elem> = ctx
                .nonzero_elements()
                .filter(|&a| ctx.trace(a, sd).expect("valid").is_zero())
                .collect();
            let terms = rng.gen_range(1..=3);
            let g = SparsePoly::new(
                ctx,
                (0..terms).map(|_| {
                    (
                        *zero_trace.choose(rng).expect("nonempty"),
                        BigUint::from(rng.gen_range(0..ctx.order() - 1)),
                    )
                }),
            );
            build_additive(ctx, q, AdditiveVariant::XqGTrace { g })
        }
        Family::ShiftTraceG1 | Family::ShiftPowerG2 => {
            let delta = Elem(rng.gen_range(0..ctx.order()) as u32);
            let h = random_poly(ctx, rng);
            if family == Family::ShiftTraceG1 {
                let is: Vec<u32> = (1..m).filter(|i| m % i == 0).collect();
                let i = *is.choose(rng).expect("m >= 2");
                build_shift(ctx, q, i, delta, ShiftVariant::TraceG1 { h })
            } else {
                let i = rng.gen_range(1..m);
                let qi = q.pow(i);
                let unit = (ctx.order() - 1) / nt::gcd(ctx.order() - 1, qi - 1);
                let s = BigUint::from(unit * rng.gen_range(1..=3u64));
                build_shift(ctx, q, i, delta, ShiftVariant::PowerG2 { h, s })
            }
        }
        Family::Rs2to3m => {
            let k = *search_k_2to3m(q)?.choose(rng).expect("nonempty");
            build_rs_2to3m(ctx, q, k)
        }
        Family::XqHAlpha => {
            let alpha = *cube_roots(ctx).choose(rng).expect("three roots");
            build_xq_h_alpha(ctx, q, alpha)
        }
        Family::Jieguo => {
            let pair = *solve_jieguo_congruences(q)?.choose(rng).expect("nonempty");
            build_jieguo(ctx, q, pair.t, pair.m)
        }
        Family::TraceTheta => {
            let roots: Vec<Elem> = cube_roots(ctx).into_iter().filter(|&t| t != Elem::ONE).collect();
            build_trace_theta(ctx, q, *roots.choose(rng).expect("two roots"))
        }
    }
}

fn coprime_exponent(n: u64, rng: &mut ChaCha8Rng) -> u64 {
    let ks: Vec<u64> = (1..=n).filter(|&k| nt::gcd(k, n) == 1).collect();
    *ks.choose(rng).expect("1 is coprime")
}

fn cube_roots(ctx: &FieldCtx) -> Vec<Elem> {
    ctx.nonzero_elements().filter(|&a| ctx.pow(a, 3) == Elem::ONE).collect()
}

fn sample_invalid(family: Family, rng: &mut ChaCha8Rng) -> Result<(FieldCtx, Value, Result<FamilyInstance>)> {
    let (ctx, q, sd) = pick_field(family, rng)?;
    let c = &ctx;
    let p = c.p() as u64;
    let m = c.n() / sd;
    let (desc, result) = match family {
        Family::ThetaCor => {
            // n | q - 1 with a theta of the wrong order
            let ns: Vec<u64> = divisors(q - 1).into_iter().filter(|&d| d > 1).collect();
            let n = *ns.choose(rng).expect("q > 2");
            (
                format!("n = {n}, theta = 1"),
                build_xh_lambda(
                    c,
                    q,
                    random_lambda(rng, n, m),
                    XhVariant::ThetaCor {
                        n: n as u32,
                        theta: Elem::ONE,
                    },
                ),
            )
        }
        Family::InvolutionCor => {
            let ctx2 = make_field(2, 4, None)?;
            let r = build_xh_lambda(&ctx2, 4, random_lambda(rng, 2, 2), XhVariant::InvolutionCor);
            return Ok((ctx2, Value::String("q = 4 (even)".into()), r));
        }
        Family::AbcCor => {
            let valid = abc_tuples(p, q);
            let (a, b, cc) = loop {
                let t = (
                    rng.gen_range(0..p as i64),
                    rng.gen_range(0..p as i64),
                    rng.gen_range(0..q),
                );
                if !valid.contains(&t) {
                    break t;
                }
            };
            (
                format!("a = {a}, b = {b}, c = {cc}"),
                build_xh_lambda(c, q, random_lambda(rng, 2, m), XhVariant::AbcCor { a, b, c: cc }),
            )
        }
        Family::CustomH => {
            // h(y) = y takes the value 0, which is no root of unity
            let h = SparsePoly::x(c);
            let n = *divisors(q - 1).choose(rng).expect("nonempty");
            (
                format!("h = x, n = {n}"),
                build_xh_lambda(c, q, random_lambda(rng, n, m), XhVariant::CustomH { n: n as u32, h }),
            )
        }
        Family::AdditiveTraceG1 | Family::AdditivePowerG2 => {
            let h = random_poly(c, rng);
            if family == Family::AdditiveTraceG1 {
                // psi = x does not vanish on GF(q)
                (
                    "psi = x".to_string(),
                    build_additive(
                        c,
                        q,
                        AdditiveVariant::TraceG1 {
                            psi: SparsePoly::x(c),
                            h,
                        },
                    ),
                )
            } else {
                let unit = (c.order() - 1) / (q - 1);
                let s = loop {
                    let s = rng.gen_range(1..c.order());
                    if s % unit != 0 {
                        break s;
                    }
                };
                let psi = SparsePoly::new(
                    c,
                    [(Elem::ONE, BigUint::from(q)), (c.neg(Elem::ONE), BigUint::from(1u32))],
                );
                (
                    format!("s = {s}"),
                    build_additive(
                        c,
                        q,
                        AdditiveVariant::PowerG2 {
                            psi,
                            h,
                            s: BigUint::from(s),
                        },
                    ),
                )
            }
        }
        Family::CTraceQ2 => {
            let cs: Vec<Elem> = c
                .elements()
                .filter(|&x| x.is_zero() || !c.add(x, c.frobenius(x, sd, 1).expect("valid")).is_zero())
                .collect();
            let cc = *cs.choose(rng).expect("nonempty");
            (
                format!("c = {cc}"),
                build_additive(c, q, AdditiveVariant::CTraceQ2 { c: cc, s: 1 }),
            )
        }
        Family::XqGTrace => {
            let bad: Vec<Elem> = c
                .nonzero_elements()
                .filter(|&a| !c.trace(a, sd).expect("valid").is_zero())
                .collect();
            let a = *bad.choose(rng).expect("trace is onto");
            let g = SparsePoly::monomial(c, a, rng.gen_range(0..c.order() - 1));
            (
                format!("g = {g}"),
                build_additive(c, q, AdditiveVariant::XqGTrace { g }),
            )
        }
        Family::ShiftTraceG1 | Family::ShiftPowerG2 => {
            let h = random_poly(c, rng);
            if family == Family::ShiftTraceG1 {
                // i = 0 or i = m are outside 1 <= i <= m - 1
                let i = if rng.gen_bool(0.5) { 0 } else { m };
                (
                    format!("i = {i}"),
                    build_shift(c, q, i, Elem::ZERO, ShiftVariant::TraceG1 { h }),
                )
            } else {
                let i = rng.gen_range(1..m);
                let unit = (c.order() - 1) / nt::gcd(c.order() - 1, q.pow(i) - 1);
                let s = loop {
                    let s = rng.gen_range(1..c.order());
                    if s % unit != 0 {
                        break s;
                    }
                };
                (
                    format!("i = {i}, s = {s}"),
                    build_shift(c, q, i, Elem::ZERO, ShiftVariant::PowerG2 { h, s: BigUint::from(s) }),
                )
            }
        }
        Family::Rs2to3m => {
            let valid = search_k_2to3m(q)?;
            let k = loop {
                let k = rng.gen_range(0..7 * q);
                if !valid.contains(&k) {
                    break k;
                }
            };
            (format!("k = {k}"), build_rs_2to3m(c, q, k))
        }
        Family::XqHAlpha => {
            let roots = cube_roots(c);
            let others: Vec<Elem> = c.elements().filter(|a| !roots.contains(a)).collect();
            let alpha = *others.choose(rng).expect("nonempty");
            (format!("alpha = {alpha}"), build_xq_h_alpha(c, q, alpha))
        }
        Family::Jieguo => {
            let (t, mm) = loop {
                let t = rng.gen_range(0..=q);
                let mm = rng.gen_range(0..=q);
                if !crate::constructions::jieguo_congruences_hold(q, t, mm) {
                    break (t, mm);
                }
            };
            (format!("t = {t}, m = {mm}"), build_jieguo(c, q, t, mm))
        }
        Family::TraceTheta => {
            let roots = cube_roots(c);
            let candidates: Vec<Elem> = c
                .elements()
                .filter(|&a| a == Elem::ONE || !roots.contains(&a))
                .collect();
            let theta = *candidates.choose(rng).expect("nonempty");
            (format!("theta = {theta}"), build_trace_theta(c, q, theta))
        }
    };
    Ok((ctx.clone(), Value::String(format!("q = {q}, {desc}")), result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm_from_poly;

    #[test]
    fn verdict_examples() {
        let f7 = make_field(7, 1, None).unwrap();
        let x5 = SparsePoly::from_pairs(&f7, &[(1, 5)]);
        let v = exhaustive_verdict(&f7, &x5, &[2, 3]).unwrap();
        assert!(v.bijective);
        assert_eq!(v.order, Some(BigUint::from(2u32)));
        assert_eq!(v.is_ncycle_at, BTreeMap::from([(2, true), (3, false)]));

        let id = exhaustive_verdict(&f7, &SparsePoly::x(&f7), &[1, 2, 5]).unwrap();
        assert_eq!(id.order, Some(BigUint::one()));
        assert!(id.is_ncycle_at.values().all(|&b| b));

        let sq = exhaustive_verdict(&f7, &SparsePoly::from_pairs(&f7, &[(1, 2)]), &[2]).unwrap();
        assert!(!sq.bijective);
        // 3^2 = 4^2 = 2 is the first repeat in literal order
        assert_eq!(sq.collision, Some((Elem(3), Elem(4))));
        assert_eq!(
            serde_json::to_value(&sq).unwrap()["order"],
            Value::String("not a permutation".into())
        );
    }

    #[test]
    fn order_matches_cycle_structure() {
        let ctx = make_field(3, 4, None).unwrap();
        for d in [1u64, 3, 7, 13, 27, 41] {
            let f = SparsePoly::from_pairs(&ctx, &[(1, d)]);
            let v = exhaustive_verdict(&ctx, &f, &[]).unwrap();
            let r = perm_from_poly(&ctx, &f).unwrap().cycle_structure();
            assert_eq!(v.order.unwrap(), r.order);
        }
    }

    #[test]
    fn cross_check_agrees_and_detects_perturbation() {
        let ctx = make_field(2, 6, None).unwrap();
        let omega = cube_roots(&ctx).into_iter().find(|&t| t != Elem::ONE).unwrap();
        let inst = build_trace_theta(&ctx, 4, omega).unwrap();
        let check = cross_check(&inst).unwrap();
        assert_eq!(check.agreement, Agreement::Agree);
        assert_eq!(check.walsh_symmetric, Some(false));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (_, pc) = perturbed_check(&inst, &mut rng).unwrap();
        assert_eq!(pc.agreement, Agreement::Agree);
    }

    #[test]
    fn walsh_skipped_above_cap() {
        let ctx = make_field(2, 18, None).unwrap();
        let inst = build_rs_2to3m(&ctx, 64, 45).unwrap();
        let check = cross_check(&inst).unwrap();
        assert_eq!(check.walsh_symmetric, None);
        assert_eq!(check.agreement, Agreement::Agree);
    }

    #[test]
    fn fuzz_is_reproducible() {
        let a = random_family_fuzz(Family::InvolutionCor, 0, 9).unwrap();
        let b = random_family_fuzz(Family::InvolutionCor, 0, 9).unwrap();
        assert!(a.clean(), "{:?}", a.records);
        assert_eq!(
            serde_json::to_string(&a.records).unwrap(),
            serde_json::to_string(&b.records).unwrap()
        );
        assert!(random_family_fuzz(Family::AbcCor, 0, 0).unwrap().records.is_empty());
    }
}
