//! Turns parsed arguments into a JSON document.

use logalg::algebra::field::prime_power;
use logalg::algebra::parse::{parse_poly, parse_poly_list, parse_xpoly};
use logalg::algebra::{FieldCtx, Poly};
use logalg::drinfeld::DrinfeldModule;
use logalg::frobenius::{frobenius_data, unit_count};
use logalg::json::{self, Body, Document, ExpJson, MuJson, VerifyJson};
use logalg::logalg::{e_strategy, log_algebraic_poly_with, stopping_index, LogAlgebra, MuTable, MARGIN};
use logalg::lvalues::{DirichletChar, LEvaluator};
use logalg::verify::{self, VerifyConfig};
use logalg::{Error, Result};

use crate::{Cli, Command, Global, VerifyArgs};

pub struct Outcome {
    pub doc: Document,
    /// False when a verification failed.
    pub passed: bool,
}

/// 1 when the mathematics failed a check, 2 for anything the caller can fix.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) | Error::InternalInconsistency(_) => 1,
        _ => 2,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn field_ctx(g: &Global) -> Result<FieldCtx> {
    let q = g.q.ok_or_else(|| usage("--q is required"))?;
    let (p, n) = prime_power(q).ok_or_else(|| usage(format!("--q {q} is not a prime power")))?;
    let modulus = match &g.fq_modulus {
        Some(s) => Some(
            s.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| usage(format!("--fq-modulus: bad coefficient '{c}'"))))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    FieldCtx::build(p, n, g.k, modulus.map(|m| (m, None)))
}

fn module(g: &Global, ctx: &FieldCtx) -> Result<DrinfeldModule> {
    let kappa = g.kappa.as_deref().ok_or_else(|| usage("--kappa is required"))?;
    DrinfeldModule::new(&ctx.base, parse_poly_list(&ctx.base, kappa)?)
}

fn configure_pool(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        if n == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InternalInconsistency(format!("thread pool: {e}")))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    configure_pool(g.jobs)?;
    if let Command::Verify(v) = &cli.command {
        return run_verify(g, v);
    }
    let ctx = field_ctx(g)?;
    let phi = module(g, &ctx)?;
    let body = match &cli.command {
        Command::Charpoly { f } => {
            let f = parse_poly(&ctx.base, f)?;
            let data = frobenius_data(&phi, &f)?;
            Body::Charpoly(json::charpoly(&data, &unit_count(&phi, &f)?))
        }
        Command::Mu { a, depth } => run_mu(&phi, a.as_deref(), *depth)?,
        Command::Logalg { beta, strategy } => {
            let beta = parse_xpoly(&ctx.base, beta)?;
            if !beta.is_integral() {
                return Err(usage("--beta must have coefficients in F_q[T]"));
            }
            let strategy = e_strategy(strategy)?;
            let depth = stopping_index(&phi, &beta) + MARGIN;
            let alg = LogAlgebra::new(&phi, depth, beta.degree().unwrap_or(0) as u32)?;
            Body::Logalg(json::logalg(&log_algebraic_poly_with(&alg, &beta, strategy.as_ref())?)?)
        }
        Command::Lvalue { dual, s, character, depth } => run_lvalue(g, &ctx, &phi, *dual, *s, character.as_deref(), *depth)?,
        Command::Verify(_) => unreachable!("handled above"),
    };
    Ok(Outcome { doc: Document::new(Some(json::module(&ctx, &phi)), body), passed: true })
}

fn run_mu(phi: &DrinfeldModule, a: Option<&str>, depth: Option<usize>) -> Result<Body> {
    let field = phi.field();
    let list = match a {
        Some(s) => {
            let list = parse_poly_list(field, s)?;
            if let Some(bad) = list.iter().find(|p| !p.is_monic()) {
                return Err(usage(format!("--a: {bad} is not monic")));
            }
            Some(list)
        }
        None => None,
    };
    let depth = match (&list, depth) {
        (_, Some(d)) => d,
        (Some(l), None) => l.iter().filter_map(Poly::degree).max().unwrap_or(0),
        (None, None) => 3,
    };
    let mu = MuTable::build(phi, depth)?;
    let monics = match list {
        Some(l) => l,
        None => (0..=depth)
            .flat_map(|d| (0..mu.level(d).len() as u64).map(move |c| Poly::from_monic_code(field, d, c)))
            .collect(),
    };
    let values = monics.iter().map(|a| Ok((json::poly(a), json::poly(mu.get(a)?)))).collect::<Result<_>>()?;
    Ok(Body::Mu(MuJson { depth, values }))
}

fn run_lvalue(
    g: &Global,
    ctx: &FieldCtx,
    phi: &DrinfeldModule,
    dual: bool,
    s: i64,
    character: Option<&str>,
    depth: Option<usize>,
) -> Result<Body> {
    let ev = match depth {
        Some(d) => LEvaluator::new(phi, ctx, d)?,
        None => LEvaluator::with_budget(phi, ctx)?,
    };
    let Some(spec) = character else {
        let l = ev.goss_l(dual, s, g.prec)?;
        let mut out = json::lvalue(if dual { "dual" } else { "plain" }, s, None, &l)?;
        if dual && s == 0 {
            let unit = ev.taelman_unit(g.prec)?;
            out.exp = Some(ExpJson { series: json::series(&unit.value), nearest_a: json::poly(&unit.a), dist: unit.dist.into() });
        }
        return Ok(Body::Lvalue(out));
    };
    if !dual || s != 0 {
        return Err(usage("--char is only supported for the dual value at s = 0"));
    }
    let (p, index) = spec.rsplit_once(',').ok_or_else(|| usage("--char expects P,INDEX"))?;
    let modulus = parse_poly(&ctx.base, p)?;
    let index = index.trim().parse::<u64>().map_err(|_| usage(format!("--char: bad index '{index}'")))?;
    let chi = DirichletChar::new(ctx, &modulus, index)?;
    let l = ev.twisted_l(&chi, g.prec)?;
    Ok(Body::Lvalue(json::lvalue("twisted", 0, Some((json::poly(&modulus), index)), &l)?))
}

fn run_verify(g: &Global, v: &VerifyArgs) -> Result<Outcome> {
    let d = VerifyConfig::default();
    let cfg = VerifyConfig {
        qmax: v.qmax.unwrap_or(d.qmax),
        dmax: v.dmax.unwrap_or(d.dmax),
        rmax: v.rmax.unwrap_or(d.rmax),
        samples: v.samples.unwrap_or(d.samples),
        corpus: v.corpus.unwrap_or(d.corpus),
        mu_depth: v.mu_depth.unwrap_or(d.mu_depth),
        seed: g.seed,
        prec: g.prec,
        tolerance: v.tolerance.unwrap_or(d.tolerance),
    };
    let names: Vec<&str> = if v.suite == "all" {
        verify::suites().iter().map(|s| s.name()).collect()
    } else {
        vec![v.suite.as_str()]
    };
    let reports = names.iter().map(|n| verify::run_suite(n, &cfg)).collect::<Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    for r in &reports {
        eprintln!("{}: {} ({} cases, {} checks)", r.suite, if r.passed { "pass" } else { "FAIL" }, r.cases.len(), r.checks);
    }
    Ok(Outcome { doc: Document::new(None, Body::Verify(VerifyJson { config: cfg, passed, reports })), passed })
}
