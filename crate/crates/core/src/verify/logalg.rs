//! Integrality and vanishing of E_i(β) on a corpus of modules, and the two identities that
//! relate the f-coprime sums S_i^*, E_i^* to S_i, E_i.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::factor::irreducibles_of_degree;
use crate::algebra::{Poly, XPoly};
use crate::drinfeld::{star, DrinfeldModule};
use crate::error::Result;
use crate::frobenius::frobenius_data;
use crate::logalg::{log_algebraic_poly_with, stopping_index, EStrategy, ExpSum, LogAlgebra, LogRecursion, MARGIN};

/// Largest deg κ_j used for (q, r) in the corpus. The full range deg κ ≤ q is kept where the
/// stopping index stays small enough for the μ sieve; rank 3 is trimmed.
pub fn corpus_degree_cap(q: u64, r: usize) -> usize {
    match (q, r) {
        (2, 3) => 1,
        (3, 3) | (5, 3) => 2,
        (_, 3..) => 1,
        _ => q as usize,
    }
}

/// β ∈ {1, x, x², x + θ}.
pub fn corpus_betas(phi: &DrinfeldModule) -> Vec<(&'static str, XPoly)> {
    let f = phi.field();
    let x = XPoly::x(f);
    vec![
        ("1", XPoly::one(f)),
        ("x", x.clone()),
        ("x^2", x.pow(2)),
        ("x+T", x.add_x(&XPoly::from_poly_terms(f, [(0, Poly::theta(f))]))),
    ]
}

/// The defining sum over K[x] raises S_j to q^i-th powers, so it is only used as a second
/// opinion while q^(i_max + MARGIN) stays below this.
const EXP_SUM_LIMIT: u64 = 3125;

/// Runs the integral recursion on every corpus β (it asserts integrality and vanishing past
/// i_max) and, where affordable, compares with the defining sum.
pub fn check_corpus_module(phi: &DrinfeldModule) -> Result<Case> {
    let betas = corpus_betas(phi);
    let depth = betas.iter().map(|(_, b)| stopping_index(phi, b)).max().unwrap_or(0) + MARGIN;
    let alg = LogAlgebra::new(phi, depth, 2)?;
    let mut notes = Vec::new();
    let mut ok = true;
    let mut checks = 0;
    for (name, beta) in &betas {
        let a = log_algebraic_poly_with(&alg, beta, &LogRecursion)?;
        checks += a.e.len() as u64;
        let n = (a.i_max + MARGIN) as u32;
        let cross = phi.q().checked_pow(n).is_some_and(|v| v <= EXP_SUM_LIMIT);
        if cross {
            let b = log_algebraic_poly_with(&alg, beta, &ExpSum)?;
            ok &= a.e == b.e;
            checks += 1;
        }
        notes.push(format!(
            "beta={name}: i_max={} deg_z={} (bound {}){}",
            a.i_max,
            a.z_degree(),
            a.z_degree_bound(),
            if cross { ", exp-sum agrees" } else { "" }
        ));
    }
    Ok(Case::new(format!("q={} {phi:?}", phi.q()), ok, checks, notes.join("; ")))
}

pub struct LogAlgSuite;

impl Suite for LogAlgSuite {
    fn name(&self) -> &'static str {
        "logalg"
    }

    fn describe(&self) -> &'static str {
        "E_i(beta) in A[x] and E_i = 0 for i_max < i <= i_max + 2, beta in {1, x, x^2, x+T}, q in {2,3,5}, r <= 3"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(2);
        let mut groups = Vec::new();
        for q in [2u64, 3, 5].into_iter().filter(|&q| q <= cfg.qmax) {
            let f = gen::field(q)?;
            for r in 1..=cfg.rmax.min(3) {
                groups.push((f.clone(), r, corpus_degree_cap(q, r)));
            }
        }
        let mods: Vec<DrinfeldModule> =
            (0..cfg.corpus).map(|n| &groups[n % groups.len()]).map(|(f, r, dk)| gen::module(&mut rng, f, *r, *dk)).collect();
        let cases = run_cases(&mods, |m| format!("q={} {m:?}", m.q()), check_corpus_module);
        Ok(SuiteReport::new(self.name(), cases))
    }
}

/// Σ_j c_j x^j ↦ f^ℓ ⋆ (·) on every term.
fn star_pow(f: &Poly, l: usize, p: &XPoly) -> XPoly {
    star(&f.pow(l as u64), p)
}

/// f S_i^* = f S_i − Σ_ℓ b_ℓ (f^ℓ ⋆ S_(i−ℓd)) and the bracket expansion of E_i^*, for i ≤ imax.
pub fn check_star_identities(phi: &DrinfeldModule, f: &Poly, beta: &XPoly, imax: usize) -> Result<Case> {
    let field = phi.field();
    let n = field.degree();
    let (r, d) = (phi.rank(), f.degree().expect("prime"));
    let alg = LogAlgebra::new(phi, imax, beta.degree().unwrap_or(0) as u32)?;
    let data = frobenius_data(phi, f)?;
    let mut ok = data.b(1) == *alg.mu().get(f)?;
    let mut checks = 1;
    let s = |i: i64| alg.s(beta, i);
    let e: Vec<XPoly> = ExpSum.coefficients(&alg, beta, imax)?;
    let e_at = |i: i64| if i < 0 { XPoly::zero(field) } else { e[i as usize].clone() };
    for i in 0..=imax as i64 {
        let lhs = alg.s_star(beta, i, f)?.scale_poly(f);
        let mut rhs = s(i)?.scale_poly(f);
        for l in 1..=r {
            let prev = s(i - (l * d) as i64)?;
            rhs = rhs.sub_x(&star_pow(f, l, &prev).scale_poly(&data.b(l)));
        }
        ok &= lhs == rhs;

        let lhs = alg.e_star(beta, i as usize, f)?;
        let mut rhs = XPoly::zero(field);
        for k in 0..=(r * d) as i64 {
            let c = phi.brac(f, k);
            if !c.is_zero() {
                rhs = rhs.add_x(&e_at(i - k).pow_char_power(n * k as u32).scale_poly(&c));
            }
        }
        for l in 1..=r {
            let bl = data.b(l);
            for k in (l * d) as i64..=(r * d) as i64 {
                let c = phi.brac(&bl, k - (l * d) as i64);
                let inner = e_at(i - k);
                if c.is_zero() || inner.is_zero() {
                    continue;
                }
                let t = star_pow(f, l, &inner.pow_char_power(n * (k as u32 - (l * d) as u32)));
                rhs = rhs.sub_x(&t.scale_poly(&c));
            }
        }
        ok &= lhs == rhs;
        checks += 2;
    }
    Ok(Case::new(format!("q={} {phi:?} f={f} beta={beta}", phi.q()), ok, checks, format!("r0={} b={:?}", data.r0, data.b.iter().map(|b| b.to_string()).collect::<Vec<_>>())))
}

pub struct StarSums;

impl Suite for StarSums {
    fn name(&self) -> &'static str {
        "starsums"
    }

    fn describe(&self) -> &'static str {
        "f S_i^* = f S_i - sum_l f^l * (b_l S_(i-ld)) and the bracket expansion of E_i^*, i <= 2"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(3);
        let fields = gen::fields(cfg.qmax)?;
        let mut jobs = Vec::new();
        for _ in 0..cfg.samples {
            let field = fields.choose(&mut rng).expect("at least F_2");
            let r = rng.gen_range(1..=cfg.rmax);
            let phi = gen::module(&mut rng, field, r, 2);
            let d = rng.gen_range(1..=cfg.dmax.min(2));
            let f = irreducibles_of_degree(field, d).choose(&mut rng).expect("irreducibles exist").clone();
            let beta = corpus_betas(&phi).choose(&mut rng).expect("nonempty").1.clone();
            jobs.push((phi, f, beta));
        }
        let cases = run_cases(&jobs, |(p, f, b)| format!("q={} {p:?} f={f} beta={b}", p.q()), |(p, f, b)| check_star_identities(p, f, b, 2));
        Ok(SuiteReport::new(self.name(), cases))
    }
}
