//! Rank-2 modules over F_5 with deg g, deg Δ ≤ 5: ℰ(1, z) = z + b_5 z^5 and
//! ℰ(x, z) = xz + (b_5 x^5 − b_4 x) z^5, with b_i the θ^i coefficient of g.

use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::{Field, Poly, RatFunc, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::logalg::{log_algebraic_poly_with, stopping_index, LogAlgebra, LogRecursion, MARGIN};

/// φ_θ = θ + (θ^5 + 2θ^4)τ + θτ^2 over F_5.
pub fn golden_module() -> Result<DrinfeldModule> {
    let f = gen::field(5)?;
    DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[0, 0, 0, 0, 2, 1]), Poly::theta(&f)])
}

/// The two predicted polynomials, as lists E_0, E_1.
pub fn predicted(phi: &DrinfeldModule) -> (Vec<XPoly>, Vec<XPoly>) {
    let f: &Field = phi.field();
    let q = phi.q();
    let g = phi.kappa(1);
    let bq = Poly::constant(f, g.coeff(q as usize));
    let bq1 = Poly::constant(f, g.coeff(q as usize - 1));
    let one = vec![XPoly::one(f), XPoly::constant(RatFunc::from(bq.clone()))];
    let x = vec![XPoly::x(f), XPoly::from_poly_terms(f, [(1, -&bq1), (q, bq)])];
    (one, x)
}

/// Compares a computed coefficient list with a prediction padded by zeros.
pub(crate) fn matches(got: &[XPoly], want: &[XPoly]) -> bool {
    got.len() >= want.len() && got.iter().enumerate().all(|(i, e)| match want.get(i) {
        Some(w) => e == w,
        None => e.is_zero(),
    })
}

fn check(phi: &DrinfeldModule) -> Result<Case> {
    let f = phi.field();
    let depth = stopping_index(phi, &XPoly::x(f)) + MARGIN;
    let alg = LogAlgebra::new(phi, depth, 1)?;
    let (one, x) = predicted(phi);
    let e1 = log_algebraic_poly_with(&alg, &XPoly::one(f), &LogRecursion)?;
    let ex = log_algebraic_poly_with(&alg, &XPoly::x(f), &LogRecursion)?;
    let ok = matches(&e1.e, &one) && matches(&ex.e, &x);
    Ok(Case::new(format!("{phi:?}"), ok, 2, format!("E(1,z) = {e1}; E(x,z) = {ex}")))
}

pub struct Golden;

impl Suite for Golden {
    fn name(&self) -> &'static str {
        "golden"
    }

    fn describe(&self) -> &'static str {
        "q = 5 rank-2 family with deg g, deg Delta <= 5: E(1,z) = z + b5 z^5 and E(x,z) = xz + (b5 x^5 - b4 x) z^5"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let f = gen::field(5)?;
        let mut rng = cfg.rng(1);
        let mut mods = vec![golden_module()?];
        mods.extend((0..cfg.samples).map(|_| gen::module(&mut rng, &f, 2, 5)));
        let cases = run_cases(&mods, |m| format!("{m:?}"), check);
        Ok(SuiteReport::new(self.name(), cases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_instance() {
        let case = check(&golden_module().unwrap()).unwrap();
        assert!(case.ok, "{}", case.note);
        assert_eq!(case.note, "E(1,z) = z + z^5; E(x,z) = x*z + (x^5+3*x)*z^5");
    }

    #[test]
    fn detects_a_wrong_prediction() {
        let phi = golden_module().unwrap();
        let (one, _) = predicted(&phi);
        assert!(!matches(&[XPoly::one(phi.field())], &one));
        assert!(matches(&[one[0].clone(), one[1].clone(), XPoly::zero(phi.field())], &one));
    }
}
