//! ∞-adic checks: exp_φ(L(φ^∨, 0)) lands in A, and exp_φ(L(φ^∨, χ, 0)·ξ^m) = ℰ_φ(x^m, 1)|_(x=ξ).

use rand::Rng;

use super::golden::golden_module;
use super::{gen, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::{FieldCtx, Poly, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::laurent::Magnitude;
use crate::lvalues::{torsion_check, LEvaluator};

fn fmt_mag(m: Magnitude, q: u64, e: u32) -> String {
    match m {
        Magnitude::Zero => "0".into(),
        Magnitude::Exact(v) if e == 1 => format!("{q}^{v}"),
        Magnitude::AtMost(v) if e == 1 => format!("<= {q}^{v}"),
        Magnitude::Exact(v) => format!("{q}^({v}/{e})"),
        Magnitude::AtMost(v) => format!("<= {q}^({v}/{e})"),
    }
}

/// exp_φ(L(φ/A)) at `prec`; passes when the nearest element of A is within q^(−tol), and when
/// `expect` is given, equals it.
pub fn taelman_case(phi: &DrinfeldModule, prec: i64, tol: i64, expect: Option<&Poly>) -> Result<Case> {
    let ctx = FieldCtx::from_q(phi.q(), 1)?;
    let unit = LEvaluator::with_budget(phi, &ctx)?.taelman_unit(prec)?;
    let mut ok = unit.dist.at_most(-tol);
    if let Some(a) = expect {
        ok &= unit.a == *a;
    }
    let note = format!(
        "exp(L) ~ {} at distance {}; depth {}, last block {}, certified tail {}",
        unit.a,
        fmt_mag(unit.dist, phi.q(), 1),
        unit.l.depth,
        fmt_mag(unit.l.last_block(), phi.q(), 1),
        fmt_mag(Magnitude::AtMost(unit.l.certified_error()), phi.q(), 1),
    );
    Ok(Case::new(format!("q={} {phi:?}", phi.q()), ok, 1 + expect.is_some() as u64, note))
}

pub struct Taelman;

impl Suite for Taelman {
    fn name(&self) -> &'static str {
        "taelman"
    }

    fn describe(&self) -> &'static str {
        "exp(L(phi^v, 0)) within q^-tolerance of A; for the q = 5 family it is 1 + b5"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(7);
        let golden = golden_module()?;
        let f5 = golden.field().clone();
        let mut jobs = vec![(golden, Some(Poly::from_ints(&f5, &[2])))];
        let qs: Vec<u64> = [2u64, 3, 5].into_iter().filter(|&q| q <= cfg.qmax).collect();
        for n in 0..(cfg.samples / 2).max(1) {
            let f = gen::field(qs[n % qs.len()])?;
            let r = rng.gen_range(1..=cfg.rmax.min(2));
            jobs.push((gen::module(&mut rng, &f, r, 2), None));
        }
        let (prec, tol) = (cfg.prec, cfg.tolerance);
        // the sums are parallel inside, so instances run one at a time
        let cases = jobs
            .iter()
            .map(|(phi, a)| taelman_case(phi, prec, tol, a.as_ref()).unwrap_or_else(|e| Case::failed(format!("q={} {phi:?}", phi.q()), &e)))
            .collect();
        Ok(SuiteReport::new(self.name(), cases))
    }
}

/// Both sides of the torsion identity at ℘ = θ + c and index m; `expect` pins the exact special
/// point ℰ_φ(x^m, 1) mod ρ_℘.
pub fn torsion_case(phi: &DrinfeldModule, c: i64, m: u64, prec: i64, tol: i64, expect: Option<&XPoly>) -> Result<Case> {
    let ctx = FieldCtx::from_q(phi.q(), 2)?;
    let f = phi.field();
    let modulus = Poly::from_ints(f, &[c, 1]);
    let ev = LEvaluator::with_budget(phi, &ctx)?;
    let rep = torsion_check(&ev, m, &modulus, prec)?;
    let mut ok = rep.passes(tol) && rep.special_point_distance.at_most(-tol * rep.e as i64);
    if let Some(sp) = expect {
        ok &= rep.special_point.to_xpoly() == *sp;
    }
    let note = format!(
        "special point {}; |lhs - rhs| {}; |special point - rhs| {}; depth {}",
        rep.special_point,
        fmt_mag(rep.distance, phi.q(), rep.e),
        fmt_mag(rep.special_point_distance, phi.q(), rep.e),
        rep.lvalue.depth
    );
    Ok(Case::new(format!("q={} {phi:?} p={modulus} m={m}", phi.q()), ok, 2 + expect.is_some() as u64, note))
}

pub struct Torsion;

impl Suite for Torsion {
    fn name(&self) -> &'static str {
        "torsion"
    }

    fn describe(&self) -> &'static str {
        "exp(L(phi^v, chi, 0) xi) = E(x, 1) at x = xi for deg-1 moduli; q = 5 family gives (1 - b4 - b5 T) xi"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(8);
        let golden = golden_module()?;
        let f5 = golden.field().clone();
        // (1 − b_4 − b_5θ)ξ with b_4 = 2, b_5 = 1
        let sp = XPoly::from_poly_terms(&f5, [(1, Poly::from_ints(&f5, &[-1, -1]))]);
        let mut jobs = vec![(golden, 0, 1, Some(sp))];
        for q in [3u64, 5].into_iter().filter(|&q| q <= cfg.qmax) {
            let f = gen::field(q)?;
            jobs.push((DrinfeldModule::carlitz(&f), 0, 1, Some(XPoly::x(&f))));
        }
        if cfg.qmax >= 5 {
            for _ in 0..(cfg.samples / 5).max(1) {
                let phi = gen::module(&mut rng, &f5, 2, 5);
                let c = rng.gen_range(0..5);
                let m = rng.gen_range(1..=4);
                jobs.push((phi, c, m, None));
            }
        }
        let (prec, tol) = (cfg.prec, cfg.tolerance);
        let cases = jobs
            .iter()
            .map(|(phi, c, m, sp)| {
                torsion_case(phi, *c, *m, prec, tol, sp.as_ref()).unwrap_or_else(|e| Case::failed(format!("q={} {phi:?} c={c} m={m}", phi.q()), &e))
            })
            .collect();
        Ok(SuiteReport::new(self.name(), cases))
    }
}
