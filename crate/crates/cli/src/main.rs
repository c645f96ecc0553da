use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use ncycle::constructions::{
    build_additive, build_jieguo, build_rs_2to3m, build_shift, build_trace_theta, build_xh_lambda, build_xq_h_alpha,
    search_k_2to3m, solve_jieguo_congruences, AdditiveVariant, LambdaSpec, LambdaVariant, ShiftVariant, XhVariant,
};
use ncycle::criteria::{self, CriterionVerdict, RsParams, ShiftParams};
use ncycle::expr::eval_exponent;
use ncycle::field::DEFAULT_CAP;
use ncycle::nt;
use ncycle::oracle::{cross_check, exhaustive_verdict, random_family_fuzz, Agreement};
use ncycle::perm::PermMap;
use ncycle::walsh::{walsh_coefficient, walsh_involution_test};
use ncycle::{Error, Family, FamilyInstance, FieldCtx, SparsePoly};

#[derive(Parser)]
#[command(
    name = "ncyc",
    version,
    about = "Build and verify n-cycle permutations of finite fields"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// CSV instead of JSON where a report has a tabular form.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(p^n).
    Field(FieldArgs),
    /// Build a member of a family.
    Construct(ConstructArgs),
    /// Exhaustively check bijectivity and f^(n) = id.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        /// n to test; may be repeated.
        #[arg(long = "cycle", required = true)]
        cycles: Vec<u64>,
        /// Binds `q` in exponent expressions.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Cycle structure and exact order of a permutation polynomial.
    Order {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Evaluate one of the n-cycle criteria.
    Criterion {
        #[command(subcommand)]
        which: CriterionCmd,
    },
    /// Parameter searches.
    Search {
        #[command(subcommand)]
        which: SearchCmd,
    },
    /// Walsh coefficients and the involution symmetry test.
    Walsh {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        check_involution: bool,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
    },
    /// Seeded cross-checks of a family against the oracle.
    Fuzz {
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        trials: u32,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    /// Modulus coefficients, low degree first, including the leading 1.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    /// Defaults to the field the family lives in, when that is fixed by q.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long)]
    q: u64,
    /// lambda1 or lambda2.
    #[arg(long, default_value = "lambda1")]
    lambda: LambdaVariant,
    /// The n of an n-cycle, for theta_cor and custom_h.
    #[arg(long)]
    cycle: Option<u32>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    g: Option<String>,
    /// Exponent; may use q, e.g. "(q^2+q+1)*3".
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Also run the criterion and the exhaustive oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum CriterionCmd {
    /// x^d is an n-cycle over GF(p^n).
    Monomial {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: String,
        #[arg(long)]
        cycle: u64,
    },
    /// x h(lambda(x)).
    XhLambda {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: String,
        #[arg(long, default_value = "lambda1")]
        lambda: LambdaVariant,
        /// Degree of lambda; defaults to the cycle length.
        #[arg(long)]
        lambda_n: Option<u32>,
        /// Defaults to x^lambda_n.
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        cycle: u64,
    },
    /// phi(x) + g(psi(x)).
    Additive {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        cycle: u64,
    },
    /// g(x^(q^i) - x + delta) + x.
    Shift {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value = "0")]
        delta: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        cycle: u64,
    },
    /// x^r h(x^s) is a triple-cycle.
    RsTriple {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        h: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: String,
    },
    /// x^r h(x^s) with h(y)^s = a y^(v-r).
    RsSingle {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        h: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        v: u64,
    },
    /// f(x)^(q^i) composed with f, for f over GF(q).
    Twist {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        cycle: u64,
    },
    /// f(f(x)) = inv(x) and f(inv(x)) = x.
    ClosedInverse {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        inv: String,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Solutions (t, m) of the congruences modulo q + 1.
    Jieguo {
        #[arg(long)]
        q: u64,
    },
    /// Valid k for x(1 + x^(k(q^2+q+1)) + x^(2k(q^2+q+1))).
    K2to3m {
        #[arg(long)]
        q: u64,
    },
}

/// What the process should exit with, besides the report.
enum Outcome {
    Ok,
    False,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn cap() -> anyhow::Result<u64> {
    match std::env::var("NCYC_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("NCYC_CAP must be an integer, got {v:?}")).into()),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn make_ctx(p: u32, n: u32, modulus: Option<&[u32]>) -> anyhow::Result<FieldCtx> {
    Ok(FieldCtx::build(p, n, modulus, cap()?)?)
}

impl FieldArgs {
    fn ctx(&self) -> anyhow::Result<FieldCtx> {
        make_ctx(self.p, self.n, self.modulus.as_deref())
    }
}

fn poly(ctx: &FieldCtx, text: &str, q: Option<u64>) -> anyhow::Result<SparsePoly> {
    let q = q.map(BigUint::from);
    Ok(SparsePoly::parse(ctx, text, q.as_ref())?)
}

fn exponent(text: &str, q: Option<u64>) -> anyhow::Result<BigUint> {
    let q = q.map(BigUint::from);
    Ok(eval_exponent(text, q.as_ref())?)
}

fn small_exponent(text: &str, q: Option<u64>) -> anyhow::Result<u64> {
    let e = exponent(text, q)?;
    u64::try_from(&e).map_err(|_| bad(format!("exponent {e} is too large")).into())
}

fn sub_degree(ctx: &FieldCtx, q: u64) -> anyhow::Result<u32> {
    match nt::prime_power(q) {
        Some((p, d)) if p == ctx.p() as u64 => {
            ctx.check_subfield(d)?;
            Ok(d)
        }
        _ => Err(bad(format!("q = {q} is not a power of p = {}", ctx.p())).into()),
    }
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_verdict(v: &CriterionVerdict) -> anyhow::Result<Outcome> {
    emit(v)?;
    Ok(if v.holds { Outcome::Ok } else { Outcome::False })
}

/// Criterion runs whose hypotheses fail still print a verdict.
fn verdict(result: ncycle::Result<CriterionVerdict>) -> anyhow::Result<Outcome> {
    match result {
        Ok(v) => emit_verdict(&v),
        Err(Error::HypothesisViolated(f)) => emit_verdict(&CriterionVerdict::hypotheses_failed(f)),
        Err(e) => Err(e.into()),
    }
}

fn required<T: Clone>(v: &Option<T>, flag: &str, family: Family) -> anyhow::Result<T> {
    v.clone().ok_or_else(|| bad(format!("{family} needs --{flag}")).into())
}

fn construct(args: &ConstructArgs) -> anyhow::Result<FamilyInstance> {
    let fam = args.family;
    let q = args.q;
    let (qp, qe) = nt::prime_power(q).ok_or_else(|| bad(format!("q = {q} is not a prime power")))?;
    let default_m = match fam {
        Family::Jieguo | Family::CTraceQ2 => Some(2),
        Family::Rs2to3m | Family::XqHAlpha | Family::TraceTheta | Family::XqGTrace => Some(3),
        _ => None,
    };
    let (p, n) = match (args.p, args.n, default_m) {
        (Some(p), Some(n), _) => (p, n),
        (None, None, Some(m)) => (qp as u32, qe * m),
        _ => return Err(bad(format!("{fam} needs --p and --n")).into()),
    };
    let ctx = &make_ctx(p, n, args.modulus.as_deref())?;
    let elem = |flag: &str, v: &Option<String>| -> anyhow::Result<ncycle::Elem> {
        Ok(ctx.parse_elem(&required(v, flag, fam)?)?)
    };
    let text_poly =
        |flag: &str, v: &Option<String>| -> anyhow::Result<SparsePoly> { poly(ctx, &required(v, flag, fam)?, Some(q)) };
    let s_big = || -> anyhow::Result<BigUint> { exponent(&required(&args.s, "s", fam)?, Some(q)) };
    let inst = match fam {
        Family::ThetaCor => build_xh_lambda(
            ctx,
            q,
            args.lambda,
            XhVariant::ThetaCor {
                n: required(&args.cycle, "cycle", fam)?,
                theta: elem("theta", &args.theta)?,
            },
        )?,
        Family::InvolutionCor => build_xh_lambda(ctx, q, args.lambda, XhVariant::InvolutionCor)?,
        Family::AbcCor => build_xh_lambda(
            ctx,
            q,
            args.lambda,
            XhVariant::AbcCor {
                a: required(&args.a, "a", fam)?,
                b: required(&args.b, "b", fam)?,
                c: small_exponent(&required(&args.c, "c", fam)?, Some(q))?,
            },
        )?,
        Family::CustomH => build_xh_lambda(
            ctx,
            q,
            args.lambda,
            XhVariant::CustomH {
                n: required(&args.cycle, "cycle", fam)?,
                h: text_poly("h", &args.h)?,
            },
        )?,
        Family::AdditiveTraceG1 => build_additive(
            ctx,
            q,
            AdditiveVariant::TraceG1 {
                psi: text_poly("psi", &args.psi)?,
                h: text_poly("h", &args.h)?,
            },
        )?,
        Family::AdditivePowerG2 => build_additive(
            ctx,
            q,
            AdditiveVariant::PowerG2 {
                psi: text_poly("psi", &args.psi)?,
                h: text_poly("h", &args.h)?,
                s: s_big()?,
            },
        )?,
        Family::CTraceQ2 => build_additive(
            ctx,
            q,
            AdditiveVariant::CTraceQ2 {
                c: elem("c", &args.c)?,
                s: small_exponent(&required(&args.s, "s", fam)?, Some(q))?,
            },
        )?,
        Family::XqGTrace => build_additive(
            ctx,
            q,
            AdditiveVariant::XqGTrace {
                g: text_poly("g", &args.g)?,
            },
        )?,
        Family::ShiftTraceG1 => build_shift(
            ctx,
            q,
            required(&args.i, "i", fam)?,
            elem("delta", &args.delta.clone().or(Some("0".into())))?,
            ShiftVariant::TraceG1 {
                h: text_poly("h", &args.h)?,
            },
        )?,
        Family::ShiftPowerG2 => build_shift(
            ctx,
            q,
            required(&args.i, "i", fam)?,
            elem("delta", &args.delta.clone().or(Some("0".into())))?,
            ShiftVariant::PowerG2 {
                h: text_poly("h", &args.h)?,
                s: s_big()?,
            },
        )?,
        Family::Rs2to3m => build_rs_2to3m(ctx, q, required(&args.k, "k", fam)?)?,
        Family::XqHAlpha => build_xq_h_alpha(ctx, q, elem("alpha", &args.alpha)?)?,
        Family::Jieguo => build_jieguo(ctx, q, required(&args.t, "t", fam)?, required(&args.m, "m", fam)?)?,
        Family::TraceTheta => build_trace_theta(ctx, q, elem("theta", &args.theta)?)?,
    };
    Ok(inst)
}

#[derive(Serialize)]
struct ConstructReport<'a> {
    instance: &'a FamilyInstance,
    check: ncycle::oracle::CrossCheck,
}

#[derive(Serialize)]
struct FieldReport {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    order: u64,
    generator: u32,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Field(f) => {
            let ctx = f.ctx()?;
            let d = ctx.describe();
            emit(&FieldReport {
                p: d.p,
                n: d.n,
                modulus: d.modulus,
                order: ctx.order(),
                generator: ctx.generator().0,
            })?;
            Ok(Outcome::Ok)
        }
        Command::Construct(args) => {
            let inst = construct(&args)?;
            if !args.verify {
                emit(&inst)?;
                return Ok(Outcome::Ok);
            }
            let check = cross_check(&inst)?;
            let good = check.agreement != Agreement::Disagree
                && check.oracle.is_ncycle_at[&inst.claimed_n]
                && check.criterion.as_ref().is_some_and(|v| v.holds);
            emit(&ConstructReport { instance: &inst, check })?;
            Ok(if good { Outcome::Ok } else { Outcome::False })
        }
        Command::Verify {
            field,
            poly: text,
            cycles,
            q,
        } => {
            let ctx = field.ctx()?;
            let f = poly(&ctx, &text, q)?;
            let v = exhaustive_verdict(&ctx, &f, &cycles)?;
            eprintln!("oracle: {:?}", v.elapsed);
            emit(&v)?;
            let good = v.bijective && v.is_ncycle_at.values().all(|&b| b);
            Ok(if good { Outcome::Ok } else { Outcome::False })
        }
        Command::Order { field, poly: text, q } => {
            let ctx = field.ctx()?;
            let f = poly(&ctx, &text, q)?;
            let perm = match PermMap::from_fn(&ctx, &f) {
                Ok(p) => p,
                Err(Error::NotBijective { a, b }) => {
                    emit(&serde_json::json!({ "bijective": false, "collision": [a, b] }))?;
                    return Ok(Outcome::False);
                }
                Err(e) => return Err(e.into()),
            };
            let r = perm.cycle_structure();
            if cli.csv {
                let mut out = std::io::stdout().lock();
                writeln!(out, "order,fixed_points,cycle_length,count")?;
                for (len, count) in &r.cycle_type {
                    writeln!(out, "{},{},{len},{count}", r.order, r.fixed_points)?;
                }
            } else {
                emit(&r)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Criterion { which } => run_criterion(which),
        Command::Search { which } => {
            match which {
                SearchCmd::Jieguo { q } => {
                    let pairs = solve_jieguo_congruences(q)?;
                    if cli.csv {
                        let mut out = std::io::stdout().lock();
                        writeln!(out, "t,m,degenerate")?;
                        for p in &pairs {
                            writeln!(out, "{},{},{}", p.t, p.m, p.degenerate)?;
                        }
                    } else {
                        emit(&pairs)?;
                    }
                }
                SearchCmd::K2to3m { q } => {
                    let ks = search_k_2to3m(q)?;
                    if cli.csv {
                        let mut out = std::io::stdout().lock();
                        writeln!(out, "k")?;
                        for k in &ks {
                            writeln!(out, "{k}")?;
                        }
                    } else {
                        emit(&ks)?;
                    }
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Walsh {
            field,
            poly: text,
            check_involution,
            u,
            v,
        } => {
            let ctx = field.ctx()?;
            let perm = PermMap::from_fn(&ctx, &poly(&ctx, &text, None)?)?;
            if check_involution {
                let sym = walsh_involution_test(&ctx, &perm)?;
                emit(&sym)?;
                return Ok(if sym.symmetric { Outcome::Ok } else { Outcome::False });
            }
            let (Some(u), Some(v)) = (u, v) else {
                return Err(bad("walsh needs --check-involution or both --u and --v").into());
            };
            let w = walsh_coefficient(&ctx, &perm, ctx.parse_elem(&u)?, ctx.parse_elem(&v)?)?;
            emit(&w)?;
            Ok(Outcome::Ok)
        }
        Command::Fuzz { family, seed, trials } => {
            let start = Instant::now();
            let summary = random_family_fuzz(family, seed, trials)?;
            let mut out = std::io::stdout().lock();
            for r in &summary.records {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
            serde_json::to_writer(&mut out, &summary)?;
            writeln!(out)?;
            eprintln!("fuzz: {:?}", start.elapsed());
            Ok(if summary.clean() { Outcome::Ok } else { Outcome::False })
        }
    }
}

fn run_criterion(which: CriterionCmd) -> anyhow::Result<Outcome> {
    match which {
        CriterionCmd::Monomial { field, d, cycle } => {
            let ctx = field.ctx()?;
            let d = exponent(&d, None)?;
            let holds = criteria::monomial_ncycle(&d, ctx.order() - 1, cycle)?;
            emit(&serde_json::json!({ "d": d.to_string(), "n": cycle, "holds": holds }))?;
            Ok(if holds { Outcome::Ok } else { Outcome::False })
        }
        CriterionCmd::XhLambda {
            field,
            q,
            h,
            lambda,
            lambda_n,
            k,
            cycle,
        } => {
            let ctx = field.ctx()?;
            let sd = sub_degree(&ctx, q)?;
            let ln = lambda_n.unwrap_or(cycle as u32);
            let spec = LambdaSpec::new(lambda, ln, sd);
            spec.validate(&ctx)?;
            let k = match k {
                Some(t) => poly(&ctx, &t, Some(q))?,
                None => SparsePoly::monomial(&ctx, ncycle::Elem::ONE, ln),
            };
            let h = poly(&ctx, &h, Some(q))?;
            verdict(criteria::xh_lambda_criterion(&ctx, &h, &spec, &k, cycle))
        }
        CriterionCmd::Additive {
            field,
            q,
            phi,
            psi,
            g,
            cycle,
        } => {
            let ctx = field.ctx()?;
            let sd = sub_degree(&ctx, q)?;
            let (phi, psi, g) = (
                poly(&ctx, &phi, Some(q))?,
                poly(&ctx, &psi, Some(q))?,
                poly(&ctx, &g, Some(q))?,
            );
            verdict(criteria::additive_criterion(&ctx, &phi, &psi, &g, sd, cycle))
        }
        CriterionCmd::Shift {
            field,
            q,
            i,
            delta,
            g,
            cycle,
        } => {
            let ctx = field.ctx()?;
            let params = ShiftParams {
                i,
                delta: ctx.parse_elem(&delta)?,
                sub_degree: sub_degree(&ctx, q)?,
            };
            let g = poly(&ctx, &g, Some(q))?;
            verdict(criteria::shift_criterion(&ctx, &g, &params, cycle))
        }
        CriterionCmd::RsTriple { field, h, r, s } => {
            let ctx = field.ctx()?;
            let params = RsParams::new(&ctx, r, small_exponent(&s, None)?)?;
            let h = poly(&ctx, &h, None)?;
            verdict(criteria::rs_triple_criterion(&ctx, &h, &params))
        }
        CriterionCmd::RsSingle { field, h, r, s, a, v } => {
            let ctx = field.ctx()?;
            let params = RsParams::new(&ctx, r, small_exponent(&s, None)?)?;
            let h = poly(&ctx, &h, None)?;
            let a = ctx.parse_elem(&a)?;
            verdict(criteria::rs_single_criterion(&ctx, &h, &params, a, v))
        }
        CriterionCmd::Twist { field, q, f, i, cycle } => {
            let ctx = field.ctx()?;
            let sd = sub_degree(&ctx, q)?;
            let f = poly(&ctx, &f, Some(q))?;
            let r = criteria::frobenius_twist_ncycle(&ctx, &f, sd, i, cycle)?;
            emit(&r)?;
            Ok(if r.twisted_ncycle { Outcome::Ok } else { Outcome::False })
        }
        CriterionCmd::ClosedInverse { field, f, inv } => {
            let ctx = field.ctx()?;
            let (f, inv) = (poly(&ctx, &f, None)?, poly(&ctx, &inv, None)?);
            verdict(criteria::closed_inverse_check(&ctx, &f, &inv))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(
            Error::NotBijective { .. }
            | Error::NotPermutation(_)
            | Error::PrereqNotNcycle(_)
            | Error::HypothesisViolated(_)
            | Error::HValueNotRootOfUnity { .. }
            | Error::KernelViolation { .. }
            | Error::DegenerateH(_)
            | Error::NotSurjective(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = run(cli).context("ncyc");
    eprintln!("elapsed: {:?}", start.elapsed());
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
