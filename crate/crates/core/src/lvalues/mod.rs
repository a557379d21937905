//! ∞-adic L-values: the Taelman value L(φ/A) = L(φ^∨, 0), Goss series at integer points,
//! Dirichlet twists, and the torsion identities tying them to ℰ_φ.
//!
//! Values are partial Dirichlet sums over deg a ≤ N. Two error figures come with every value:
//! the truncation floor q^(−prec) of the stored series, and a certified bound on the omitted
//! blocks derived from the degree bounds on the coefficients. The latter decays only like
//! q^(−N/r), so at desk-scale N it is far weaker than the floor; the observed size of the last
//! summed block is reported alongside as the practical convergence indicator.

pub mod character;
pub mod cyclotomic;
mod dirichlet;
pub mod euler;
pub mod nu;
pub mod torsion;

use std::sync::{Arc, Mutex};

pub use character::DirichletChar;
pub use cyclotomic::{special_point, CyclotomicElem};
pub use euler::{euler_vs_dirichlet, EulerCheck};
pub use nu::NuTable;
pub use torsion::{torsion_check, TorsionReport};

use crate::algebra::sieve::MonicSieve;
use crate::algebra::{FieldCtx, Poly};
use crate::drinfeld::{exp_eval, DrinfeldModule};
use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, Magnitude};
use crate::logalg::MuTable;

/// Monic polynomials summed per L-value at most; fixes the default depth per q.
pub const SUM_BUDGET: u64 = 300_000;

/// Largest N with #{monic a : deg a ≤ N} ≤ SUM_BUDGET.
pub fn budget_depth(q: u64) -> usize {
    let mut total = 0u64;
    let mut n = 0usize;
    let mut level = 1u64;
    loop {
        total = total.saturating_add(level);
        if total > SUM_BUDGET {
            return n.saturating_sub(1);
        }
        n += 1;
        level = level.saturating_mul(q);
    }
}

#[derive(Clone, Debug)]
pub struct LValue {
    /// Σ_{deg a ≤ depth}, exact above θ^(−prec).
    pub series: LaurentSeries,
    pub depth: usize,
    pub prec: i64,
    /// The omitted blocks total at most q^tail_bound (certified).
    pub tail_bound: i64,
    /// Size of each summed degree block.
    pub blocks: Vec<Magnitude>,
}

impl LValue {
    /// Size of the deepest summed block: the practical gauge of the omitted tail.
    pub fn last_block(&self) -> Magnitude {
        self.blocks.last().copied().unwrap_or(Magnitude::Zero)
    }

    /// Exponent of the certified overall error: max(−prec, tail_bound).
    pub fn certified_error(&self) -> i64 {
        self.tail_bound.max(-self.prec)
    }
}

/// Which Dirichlet series is being summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// Σ μ(a)/a^(s+1) = L(φ^∨, s).
    Dual,
    /// Σ ν(a)/a^s = L(φ, s).
    NonDual { good: bool },
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Certified size bound for the degree-i block.
fn block_bound(kind: Kind, r: i64, s: i64, i: i64) -> i64 {
    match kind {
        Kind::Dual => -ceil_div(i, r) - s * i,
        Kind::NonDual { good: true } => i.div_euclid(r) - s * i,
        Kind::NonDual { good: false } => (1 - s) * i,
    }
}

/// Bound on everything past depth n; the block bounds are non-increasing in i.
fn tail_bound(kind: Kind, r: i64, s: i64, n: usize) -> i64 {
    block_bound(kind, r, s, n as i64 + 1)
}

/// Everything needed to evaluate L-values of one Drinfeld module at a fixed depth.
pub struct LEvaluator {
    phi: DrinfeldModule,
    ctx: FieldCtx,
    sieve: Arc<MonicSieve>,
    mu: Mutex<Option<Arc<MuTable>>>,
    nu: Mutex<Option<Arc<NuTable>>>,
}

impl LEvaluator {
    pub fn new(phi: &DrinfeldModule, ctx: &FieldCtx, depth: usize) -> Result<LEvaluator> {
        if ctx.base != *phi.field() {
            return Err(Error::RingMismatch);
        }
        let sieve = Arc::new(MonicSieve::build(phi.field(), depth)?);
        Ok(LEvaluator { phi: phi.clone(), ctx: ctx.clone(), sieve, mu: Mutex::new(None), nu: Mutex::new(None) })
    }

    /// Depth from [`budget_depth`].
    pub fn with_budget(phi: &DrinfeldModule, ctx: &FieldCtx) -> Result<LEvaluator> {
        LEvaluator::new(phi, ctx, budget_depth(phi.q()))
    }

    /// Reuses an existing μ table (and its sieve).
    pub fn from_mu(phi: &DrinfeldModule, ctx: &FieldCtx, mu: Arc<MuTable>) -> Result<LEvaluator> {
        if ctx.base != *phi.field() {
            return Err(Error::RingMismatch);
        }
        let sieve = mu.sieve().clone();
        Ok(LEvaluator { phi: phi.clone(), ctx: ctx.clone(), sieve, mu: Mutex::new(Some(mu)), nu: Mutex::new(None) })
    }

    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn depth(&self) -> usize {
        self.sieve.depth()
    }

    pub fn mu(&self) -> Result<Arc<MuTable>> {
        let mut slot = self.mu.lock().expect("mu lock");
        if slot.is_none() {
            *slot = Some(Arc::new(MuTable::on_sieve(&self.phi, self.sieve.clone())?));
        }
        Ok(slot.clone().expect("filled"))
    }

    pub fn nu(&self) -> Result<Arc<NuTable>> {
        let mut slot = self.nu.lock().expect("nu lock");
        if slot.is_none() {
            *slot = Some(Arc::new(NuTable::build(&self.phi, self.sieve.clone())?));
        }
        Ok(slot.clone().expect("filled"))
    }

    /// Smallest depth whose certified tail is below the floor, capped at the sieve depth.
    fn depth_for(&self, kind: Kind, s: i64, prec: i64) -> usize {
        let r = self.phi.rank() as i64;
        (0..self.depth()).find(|&n| tail_bound(kind, r, s, n) <= -prec).unwrap_or(self.depth())
    }

    fn sum(&self, kind: Kind, s: i64, chi: Option<&DirichletChar>, prec: i64) -> Result<LValue> {
        if prec < 1 {
            return Err(Error::InvalidArgument(format!("precision must be positive, got {prec}")));
        }
        if let Some(c) = chi {
            if c.ctx().ext != self.ctx.ext || c.ctx().base != self.ctx.base {
                return Err(Error::RingMismatch);
            }
        }
        let depth = self.depth_for(kind, s, prec);
        let out = match kind {
            Kind::Dual => {
                let mu = self.mu()?;
                dirichlet::dirichlet_sum(&self.ctx, &self.sieve, mu.values(), (s + 1) as u32, chi, depth, prec)
            }
            Kind::NonDual { .. } => {
                let nu = self.nu()?;
                dirichlet::dirichlet_sum(&self.ctx, &self.sieve, nu.values(), s as u32, chi, depth, prec)
            }
        };
        let r = self.phi.rank() as i64;
        Ok(LValue { series: out.series, depth, prec, tail_bound: tail_bound(kind, r, s, depth), blocks: out.blocks })
    }

    /// L(φ/A) = L(φ^∨, 0) = Σ μ(a)/a. Its absolute value is 1.
    pub fn taelman_l(&self, prec: i64) -> Result<LValue> {
        let l = self.goss_l(true, 0, prec)?;
        check_unit_size(&l, "L(phi^v, 0)")?;
        Ok(l)
    }

    /// L(φ^∨, s) for s ≥ 0 when `dual`, else L(φ, s) for s ≥ 1.
    pub fn goss_l(&self, dual: bool, s: i64, prec: i64) -> Result<LValue> {
        if dual {
            if s < 0 {
                return Err(Error::ConvergenceRange { s, range: "the dual series converges for s >= 0" });
            }
            self.sum(Kind::Dual, s, None, prec)
        } else {
            if s < 1 {
                return Err(Error::ConvergenceRange { s, range: "the series converges for s >= 1" });
            }
            // a constant κ_r means good reduction at every prime, not just the summed ones
            let good = self.phi.kappa(self.phi.rank()).degree() == Some(0);
            self.sum(Kind::NonDual { good }, s, None, prec)
        }
    }

    /// L(φ^∨, χ, 0) = Σ χ(a)μ(a)/a, valued in F_{q^k}((1/θ)).
    pub fn twisted_l(&self, chi: &DirichletChar, prec: i64) -> Result<LValue> {
        let l = self.sum(Kind::Dual, 0, Some(chi), prec)?;
        check_unit_size(&l, "L(phi^v, chi, 0)")?;
        Ok(l)
    }

    /// exp_φ(L(φ/A)) and the element of A nearest to it.
    pub fn taelman_unit(&self, prec: i64) -> Result<TaelmanUnit> {
        let l = self.taelman_l(prec)?;
        let value = exp_eval(&self.phi, &self.ctx, &l.series, prec)?;
        let (a, dist) = value.nearest_a()?;
        let coeffs = a
            .coeffs()
            .iter()
            .map(|&c| self.ctx.restrict(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InternalInconsistency("exp of a real L-value left F_q".into()))?;
        Ok(TaelmanUnit { a: Poly::from_coeffs(&self.ctx.base, coeffs), dist, value, l })
    }
}

fn check_unit_size(l: &LValue, what: &str) -> Result<()> {
    if l.series.magnitude() != Magnitude::Exact(0) {
        return Err(Error::TheoremViolation(format!("|{what}| = {:?}, expected 1", l.series.magnitude())));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct TaelmanUnit {
    /// Nearest element of A to exp_φ(L(φ/A)).
    pub a: Poly,
    /// |exp_φ(L) − a|.
    pub dist: Magnitude,
    pub value: LaurentSeries,
    pub l: LValue,
}

/// ⌊max_j q^j (d_0/(q−1) − j/r)⌋: exp_φ(u) with |u| = 1 has size at most q to this power.
pub fn unit_degree_bound(phi: &DrinfeldModule) -> i64 {
    let (q, r, d0) = (phi.q() as i64, phi.rank() as i64, phi.d0() as i64);
    let mut best = 0i64;
    let mut qj = 1i64;
    // the bracket is negative once j > r·d0/(q−1)
    for j in 0..=(r * d0 / (q - 1) + 1) {
        let num = qj * (d0 * r - j * (q - 1));
        best = best.max(num.div_euclid(r * (q - 1)));
        qj *= q;
    }
    best
}

/// L(φ/A) with the default depth.
pub fn taelman_l(phi: &DrinfeldModule, ctx: &FieldCtx, prec: i64) -> Result<LValue> {
    LEvaluator::with_budget(phi, ctx)?.taelman_l(prec)
}

/// Goss L-value with the default depth.
pub fn goss_l(phi: &DrinfeldModule, ctx: &FieldCtx, dual: bool, s: i64, prec: i64) -> Result<LValue> {
    LEvaluator::with_budget(phi, ctx)?.goss_l(dual, s, prec)
}

/// Twisted L-value with the default depth.
pub fn twisted_l(phi: &DrinfeldModule, chi: &DirichletChar, prec: i64) -> Result<LValue> {
    LEvaluator::with_budget(phi, chi.ctx())?.twisted_l(chi, prec)
}

/// Taelman unit with the default depth.
pub fn taelman_unit(phi: &DrinfeldModule, ctx: &FieldCtx, prec: i64) -> Result<TaelmanUnit> {
    LEvaluator::with_budget(phi, ctx)?.taelman_unit(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::monic_of_degree;
    use crate::algebra::{Fe, RatFunc};
    use crate::drinfeld::carlitz_l;

    #[test]
    fn budget_depths() {
        assert_eq!(budget_depth(2), 17);
        assert_eq!(budget_depth(3), 11);
        assert_eq!(budget_depth(5), 7);
    }

    #[test]
    fn tail_bounds() {
        assert_eq!(tail_bound(Kind::Dual, 2, 0, 7), -4);
        assert_eq!(tail_bound(Kind::Dual, 1, 1, 3), -8);
        assert_eq!(tail_bound(Kind::NonDual { good: true }, 2, 1, 4), -3);
        assert_eq!(tail_bound(Kind::NonDual { good: false }, 2, 2, 4), -5);
    }

    #[test]
    fn carlitz_is_log_of_one() {
        // Σ_a 1/a = log_C(1) = Σ_i (−1)^i / L_i
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let f = &ctx.base;
        let ev = LEvaluator::new(&DrinfeldModule::carlitz(f), &ctx, 6).unwrap();
        let l = ev.taelman_l(40).unwrap();
        let mut log1 = RatFunc::zero(f);
        for i in 0..=6 {
            let term = RatFunc::new(Poly::one(f), carlitz_l(f, i)).unwrap();
            log1 = if i % 2 == 0 { log1.add_rf(&term) } else { log1.sub_rf(&term) };
        }
        assert_eq!(l.series, LaurentSeries::embed(&ctx, &log1, 1, 40));
        assert_eq!(l.tail_bound, -7);
        let unit = ev.taelman_unit(40).unwrap();
        assert!(unit.a.is_one());
        assert!(unit.dist.at_most(-40));
    }

    #[test]
    fn golden_unit() {
        let ctx = FieldCtx::from_q(5, 1).unwrap();
        let f = &ctx.base;
        let g = Poly::from_ints(f, &[0, 0, 0, 0, 2, 1]);
        let phi = DrinfeldModule::new(f, vec![g, Poly::theta(f)]).unwrap();
        let ev = LEvaluator::new(&phi, &ctx, 5).unwrap();
        let unit = ev.taelman_unit(30).unwrap();
        // 1 + b_5 with b_5 the θ^5 coefficient of g
        assert_eq!(unit.a, Poly::constant(f, f.from_int(2)));
        assert!(unit.dist.at_most(-30), "{:?}", unit.dist);
        assert!(unit.a.degree().unwrap() as i64 <= unit_degree_bound(&phi));
    }

    #[test]
    fn dual_series_term_by_term() {
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let f = &ctx.base;
        let phi = DrinfeldModule::new(f, vec![Poly::from_ints(f, &[1, 1]), Poly::from_ints(f, &[2, 0, 1])]).unwrap();
        let ev = LEvaluator::new(&phi, &ctx, 4).unwrap();
        let mu = ev.mu().unwrap();
        for s in 0..=2i64 {
            let got = ev.goss_l(true, s, 15).unwrap();
            let mut exact = RatFunc::zero(f);
            for d in 0..=got.depth {
                for a in monic_of_degree(f, d) {
                    exact = exact.add_rf(&RatFunc::new(mu.get(&a).unwrap().clone(), a.pow(s as u64 + 1)).unwrap());
                }
            }
            assert_eq!(got.series, LaurentSeries::embed(&ctx, &exact, 1, 15));
        }
        assert_eq!(ev.goss_l(true, 0, 20).unwrap().series, ev.taelman_l(20).unwrap().series);
    }

    #[test]
    fn convergence_range() {
        let ctx = FieldCtx::from_q(2, 1).unwrap();
        let ev = LEvaluator::new(&DrinfeldModule::carlitz(&ctx.base), &ctx, 3).unwrap();
        assert!(matches!(ev.goss_l(false, 0, 10), Err(Error::ConvergenceRange { s: 0, .. })));
        assert!(matches!(ev.goss_l(true, -1, 10), Err(Error::ConvergenceRange { s: -1, .. })));
        assert!(ev.goss_l(false, 2, 10).is_ok());
    }

    #[test]
    fn trivial_twist_drops_multiples() {
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let f = &ctx.base;
        let phi = DrinfeldModule::new(f, vec![Poly::theta(f), Poly::one(f)]).unwrap();
        let ev = LEvaluator::new(&phi, &ctx, 5).unwrap();
        let t = Poly::theta(f);
        let chi = DirichletChar::new(&ctx, &t, 0).unwrap();
        let got = ev.twisted_l(&chi, 20).unwrap();
        let mu = ev.mu().unwrap();
        let mut exact = RatFunc::zero(f);
        for d in 0..=got.depth {
            for a in monic_of_degree(f, d).filter(|a| a.coeff(0) != Fe::ZERO) {
                exact = exact.add_rf(&RatFunc::new(mu.get(&a).unwrap().clone(), a).unwrap());
            }
        }
        assert_eq!(got.series, LaurentSeries::embed(&ctx, &exact, 1, 20));
    }
}
