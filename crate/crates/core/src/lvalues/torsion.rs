//! exp_φ(ξ^m · L(φ^∨, χ_m, 0)) = ℰ_φ(x^m, 1)|_(x = ξ) for a root ξ of C_℘(x)/x, deg ℘ = 1.
//!
//! With ℘ = θ + c, C_a acts on ξ as multiplication by a(−c), so χ_m(a) = a(−c)^m is the
//! character of index m relative to the root −c.

use super::cyclotomic::{eval_at, special_point_of};
use super::{CyclotomicElem, DirichletChar, LEvaluator, LValue};
use crate::algebra::XPoly;
use crate::algebra::{Poly, RatFunc};
use crate::drinfeld::exp_eval;
use crate::error::{Error, Result};
use crate::laurent::{torsion_root_deg1, LaurentSeries, Magnitude};
use crate::logalg::{log_algebraic_poly, LogAlgResult};

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub modulus: Poly,
    pub m: u64,
    /// Ramification index of the series below (q − 1).
    pub e: u32,
    pub lvalue: LValue,
    /// exp_φ(ξ^m · L).
    pub lhs: LaurentSeries,
    /// ℰ_φ(x^m, 1) at x = ξ.
    pub rhs: LaurentSeries,
    /// |lhs − rhs| in units of 1/e.
    pub distance: Magnitude,
    pub special_point: CyclotomicElem,
    /// |special_point(ξ) − rhs|, which must vanish to precision.
    pub special_point_distance: Magnitude,
    pub logalg: LogAlgResult,
}

impl TorsionReport {
    /// True when the two sides agree to q^(−threshold).
    pub fn passes(&self, threshold: i64) -> bool {
        self.distance.at_most(-threshold * self.e as i64)
    }
}

/// Both sides at precision q^(−prec), for deg ℘ = 1 and 1 ≤ m ≤ q − 1.
pub fn torsion_check(ev: &LEvaluator, m: u64, modulus: &Poly, prec: i64) -> Result<TorsionReport> {
    let (phi, ctx) = (ev.phi(), ev.ctx());
    let q = phi.q();
    if modulus.degree() != Some(1) || !modulus.is_monic() {
        return Err(Error::Unsupported("numeric torsion values need a monic modulus of degree 1".into()));
    }
    if m == 0 || m > q - 1 {
        return Err(Error::InvalidArgument(format!("m = {m} must lie in 1..={}", q - 1)));
    }
    let e = (q - 1) as u32;
    let prec_e = prec * e as i64;

    let beta = XPoly::monomial(RatFunc::one(phi.field()), m);
    let logalg = log_algebraic_poly(phi, &beta)?;
    let total = logalg.e.iter().fold(XPoly::zero(phi.field()), |acc, x| acc.add_x(x));
    let special_point = special_point_of(&logalg, modulus)?;

    // ξ must carry enough digits for the largest term c(θ)ξ^k on the right
    let spread = total
        .integral_terms()
        .ok_or_else(|| Error::TheoremViolation("E_i(x^m) left A[x]".into()))?
        .iter()
        .map(|(k, c)| c.degree().unwrap_or(0) as i64 * e as i64 + *k as i64)
        .max()
        .unwrap_or(0)
        .max(m as i64);
    let xi = torsion_root_deg1(ctx, modulus.coeff(0), prec_e + spread + e as i64)?;

    let chi = DirichletChar::new(ctx, modulus, m % (q - 1))?;
    let lvalue = ev.twisted_l(&chi, prec + 1)?;
    let u = lvalue.series.rescale(e)?.mul(&xi.pow(m)).truncate(-prec_e);
    let lhs = exp_eval(phi, ctx, &u, prec_e)?;
    let rhs = eval_at(ctx, &total, &xi, prec_e)?;
    let distance = lhs.distance(&rhs);
    let special_point_distance = special_point.eval(ctx, &xi, prec_e).distance(&rhs);
    Ok(TorsionReport {
        modulus: modulus.clone(),
        m,
        e,
        lvalue,
        lhs,
        rhs,
        distance,
        special_point,
        special_point_distance,
        logalg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldCtx;
    use crate::drinfeld::DrinfeldModule;

    #[test]
    fn carlitz_theta() {
        let ctx = FieldCtx::from_q(3, 2).unwrap();
        let c = DrinfeldModule::carlitz(&ctx.base);
        let ev = LEvaluator::new(&c, &ctx, 6).unwrap();
        let rep = torsion_check(&ev, 1, &Poly::theta(&ctx.base), 20).unwrap();
        assert!(rep.passes(20), "{:?}", rep.distance);
        assert!(rep.special_point_distance.at_most(-20 * rep.e as i64));
    }

    #[test]
    fn shifted_prime() {
        let ctx = FieldCtx::from_q(3, 2).unwrap();
        let f = &ctx.base;
        let phi = DrinfeldModule::new(f, vec![Poly::from_ints(f, &[1, 1]), Poly::one(f)]).unwrap();
        let ev = LEvaluator::new(&phi, &ctx, 8).unwrap();
        let rep = torsion_check(&ev, 2, &Poly::from_ints(f, &[1, 1]), 15).unwrap();
        assert!(rep.passes(15), "{:?}", rep.distance);
    }
}
