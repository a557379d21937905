//! The ring A[x]/(ρ_℘) with ρ_℘(x) = C_℘(x)/x, home of the ℘-torsion point ξ and of the
//! special points ℰ_φ(x^m, 1) reduced at x = ξ.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{FieldCtx, Poly, RatFunc, XPoly};
use crate::drinfeld::{carlitz_act, DrinfeldModule};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::logalg::{log_algebraic_poly, LogAlgResult};

/// An element Σ_{j < q^d − 1} c_j x^j of A[x]/(ρ_℘).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElem {
    modulus: Poly,
    coeffs: Vec<Poly>,
}

/// Lower terms of ρ_℘: ρ_℘ = x^(q^d − 1) + Σ_{j<d} c_j x^(q^j − 1).
fn rho_tail(modulus: &Poly) -> Result<(u64, Vec<(u64, Poly)>)> {
    let c = carlitz_act(modulus.field(), modulus);
    let terms = c.integral_terms().ok_or_else(|| Error::InternalInconsistency("C_p is not integral".into()))?;
    let top = c.degree().expect("nonzero") - 1;
    let tail = terms.into_iter().filter(|(e, _)| *e - 1 < top).map(|(e, p)| (e - 1, p)).collect();
    Ok((top, tail))
}

impl CyclotomicElem {
    /// Reduces an element of A[x] modulo ρ_℘.
    pub fn reduce(modulus: &Poly, p: &XPoly) -> Result<CyclotomicElem> {
        if !modulus.is_monic() || modulus.degree() == Some(0) {
            return Err(Error::InvalidArgument(format!("{modulus} is not a monic nonconstant modulus")));
        }
        let mut terms: BTreeMap<u64, Poly> =
            p.integral_terms().ok_or_else(|| Error::InvalidArgument(format!("{p} is not in A[x]")))?;
        let (top, tail) = rho_tail(modulus)?;
        // x^top ≡ −Σ c_j x^(q^j − 1), applied to the largest exponent until all are below top
        while let Some((&e, _)) = terms.last_key_value().filter(|(&e, _)| e >= top) {
            let c = terms.remove(&e).expect("present");
            for (k, ck) in &tail {
                let slot = terms.entry(e - top + k).or_insert_with(|| Poly::zero(modulus.field()));
                *slot = &*slot - &(&c * ck);
                if slot.is_zero() {
                    terms.remove(&(e - top + k));
                }
            }
        }
        let mut coeffs = vec![Poly::zero(modulus.field()); top as usize];
        for (e, c) in terms {
            coeffs[e as usize] = c;
        }
        Ok(CyclotomicElem { modulus: modulus.clone(), coeffs })
    }

    /// ξ itself, the class of x.
    pub fn xi(modulus: &Poly) -> Result<CyclotomicElem> {
        CyclotomicElem::reduce(modulus, &XPoly::x(modulus.field()))
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// c_j for j < q^d − 1.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn to_xpoly(&self) -> XPoly {
        let f = self.modulus.field();
        XPoly::from_poly_terms(f, self.coeffs.iter().enumerate().map(|(j, c)| (j as u64, c.clone())))
    }

    pub fn mul(&self, o: &CyclotomicElem) -> Result<CyclotomicElem> {
        if self.modulus != o.modulus {
            return Err(Error::RingMismatch);
        }
        CyclotomicElem::reduce(&self.modulus, &self.to_xpoly().mul_x(&o.to_xpoly()))
    }

    /// Value at a numerical ξ (any root of ρ_℘ in a Laurent field). The caller supplies ξ to
    /// enough precision; the result is truncated at q^(−prec/e).
    pub fn eval(&self, ctx: &FieldCtx, xi: &LaurentSeries, prec: i64) -> LaurentSeries {
        eval_at(ctx, &self.to_xpoly(), xi, prec).expect("integral by construction")
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_xpoly())
    }
}

/// Σ c_j(θ) ξ^j for p ∈ A[x], truncated at q^(−prec/e).
pub(crate) fn eval_at(ctx: &FieldCtx, p: &XPoly, xi: &LaurentSeries, prec: i64) -> Result<LaurentSeries> {
    let terms = p.integral_terms().ok_or_else(|| Error::InvalidArgument(format!("{p} is not in A[x]")))?;
    let e = xi.e();
    let mut acc = LaurentSeries::zero(&ctx.ext, e).truncate(-prec);
    let mut pow = LaurentSeries::constant(&ctx.ext, e, crate::algebra::Fe::ONE);
    let mut at = 0u64;
    for (k, c) in terms {
        pow = pow.mul(&xi.pow(k - at));
        at = k;
        acc = acc.add(&LaurentSeries::embed_poly(ctx, &c, e).mul(&pow).truncate(-prec));
    }
    Ok(acc)
}

/// ℰ_φ(x^m, 1) = Σ_i E_i(x^m) reduced modulo ρ_℘: an exact element of A[ξ].
pub fn special_point(phi: &DrinfeldModule, m: u64, modulus: &Poly) -> Result<(CyclotomicElem, LogAlgResult)> {
    let d = modulus.degree().unwrap_or(0) as u32;
    let top = phi.q().checked_pow(d).map(|v| v - 1).unwrap_or(u64::MAX);
    if m == 0 || m > top {
        return Err(Error::InvalidArgument(format!("m = {m} must lie in 1..={top}")));
    }
    let beta = XPoly::monomial(RatFunc::one(phi.field()), m);
    let res = log_algebraic_poly(phi, &beta)?;
    Ok((special_point_of(&res, modulus)?, res))
}

/// Reduction of an already computed ℰ_φ(β, 1).
pub fn special_point_of(res: &LogAlgResult, modulus: &Poly) -> Result<CyclotomicElem> {
    let total = res.e.iter().fold(XPoly::zero(modulus.field()), |acc, e| acc.add_x(e));
    CyclotomicElem::reduce(modulus, &total)
}
