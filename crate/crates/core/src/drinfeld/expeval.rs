//! Evaluating exp_φ at an ∞-adic point.

use super::DrinfeldModule;
use crate::algebra::FieldCtx;
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

/// Hard ceiling on the number of exponential terms; beyond it the q^j-sized exponents stop fitting anyway.
const MAX_TERMS: usize = 48;

/// Number J of terms α_j u^(q^j), j < J, needed so every omitted term has size at most q^(-prec/e),
/// where |u| = q^(lead/e). Uses |α_j| ≤ q^(q^j(d_0/(q−1) − j/r)).
pub fn exp_term_count(phi: &DrinfeldModule, e: u32, lead: i64, prec: i64) -> usize {
    let (q, r, d0) = (phi.q() as i128, phi.rank() as i128, phi.d0() as i128);
    let (e, m, prec) = (e as i128, lead as i128, prec as i128);
    let mut qj: i128 = 1;
    for j in 0..MAX_TERMS {
        // −(exponent of the j-th term)·r(q−1) in e-units
        let slope = j as i128 * (q - 1) * e - r * d0 * e - r * (q - 1) * m;
        if slope > 0 && qj.saturating_mul(slope) >= prec * r * (q - 1) {
            return j;
        }
        qj = qj.saturating_mul(q);
    }
    MAX_TERMS
}

/// exp_φ(u) = Σ_j α_j u^(q^j) with error at most q^(-prec/e). Works for any size of u, since
/// exp_φ is entire.
pub fn exp_eval(phi: &DrinfeldModule, ctx: &FieldCtx, u: &LaurentSeries, prec: i64) -> Result<LaurentSeries> {
    let e = u.e();
    let Some(m) = u.lead() else {
        return Ok(u.truncate(-prec));
    };
    let count = exp_term_count(phi, e, m, prec);
    if count >= MAX_TERMS {
        return Err(Error::ResourceLimit(format!("exp_phi needs more than {MAX_TERMS} terms at |u| = q^({m}/{e})")));
    }
    let alpha = phi.exp_coeffs(count.saturating_sub(1))?;
    let step = ctx.n();
    let mut acc = LaurentSeries::zero(&ctx.ext, e);
    let mut upow = u.clone();
    let mut qj: i64 = 1;
    for (j, a) in alpha.iter().enumerate().take(count) {
        if j > 0 {
            upow = upow.frobenius_pow(step);
            qj = qj.checked_mul(ctx.q() as i64).ok_or_else(|| Error::ResourceLimit("exponent overflow in exp_phi".into()))?;
        }
        let a_prec = prec.saturating_add(m.saturating_mul(qj));
        let term = LaurentSeries::embed(ctx, a, e, a_prec).mul(&upow).truncate(-prec);
        acc = acc.add(&term);
    }
    Ok(acc.truncate(-prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fe, Poly};

    fn log_eval(phi: &DrinfeldModule, ctx: &FieldCtx, z: &LaurentSeries, terms: usize, prec: i64) -> LaurentSeries {
        let beta = phi.log_coeffs(terms);
        let mut acc = LaurentSeries::zero(&ctx.ext, z.e());
        let mut zp = z.clone();
        let lead = z.lead().unwrap();
        let mut qi = 1i64;
        for (i, b) in beta.iter().enumerate() {
            if i > 0 {
                zp = zp.frobenius_pow(ctx.n());
                qi *= ctx.q() as i64;
            }
            acc = acc.add(&LaurentSeries::embed(ctx, b, z.e(), prec + lead * qi).mul(&zp).truncate(-prec));
        }
        acc.truncate(-prec)
    }

    #[test]
    fn exp_inverts_log_near_zero() {
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let f = &ctx.base;
        let phi = DrinfeldModule::carlitz(f);
        let z = LaurentSeries::monomial(&ctx.ext, 1, Fe::ONE, -1).add(&LaurentSeries::monomial(&ctx.ext, 1, Fe::ONE, -3));
        let u = log_eval(&phi, &ctx, &z, 6, 40);
        let back = exp_eval(&phi, &ctx, &u, 30).unwrap();
        assert!(back.distance(&z).at_most(-30), "{back} vs {z}");
    }

    #[test]
    fn functional_equation_for_large_argument() {
        // exp(θu) = φ_θ(exp u), with |u| > 1
        let ctx = FieldCtx::from_q(2, 1).unwrap();
        let f = &ctx.base;
        let phi = DrinfeldModule::new(f, vec![Poly::theta(f), Poly::one(f)]).unwrap();
        let u = LaurentSeries::monomial(&ctx.ext, 1, Fe::ONE, 2).add(&LaurentSeries::monomial(&ctx.ext, 1, Fe::ONE, -1));
        let prec = 40;
        let theta = LaurentSeries::monomial(&ctx.ext, 1, Fe::ONE, 1);
        let lhs = exp_eval(&phi, &ctx, &theta.mul(&u), prec).unwrap();
        let ex = exp_eval(&phi, &ctx, &u, prec + 20).unwrap();
        // φ_θ(y) = θy + θy^2 + y^4
        let rhs = theta.mul(&ex).add(&theta.mul(&ex.frobenius())).add(&ex.frobenius_pow(2));
        assert!(lhs.distance(&rhs).at_most(-prec + 1), "{lhs} vs {rhs}");
    }

    #[test]
    fn term_count_grows_with_size() {
        let f = crate::algebra::FiniteField::prime(3).unwrap();
        let phi = DrinfeldModule::carlitz(&f);
        assert!(exp_term_count(&phi, 1, 5, 20) > exp_term_count(&phi, 1, -1, 20));
    }
}
