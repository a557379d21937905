//! Coefficients ν(a) of the non-dual series L(φ, s) = Σ ν(a) a^(−s) = ∏_f Q_f(f^(−s))^(−1).

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::sieve::MonicSieve;
use crate::algebra::Poly;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::frobenius::frobenius_unchecked;

#[derive(Debug)]
pub struct NuTable {
    sieve: Arc<MonicSieve>,
    nu: Vec<Poly>,
    /// True when every prime up to the depth has full reduction rank.
    good: bool,
}

/// 1/Q_f(X) = Σ_m ν(f^m) X^m, checking deg ν(f^m) ≤ m·d/r_0.
fn prime_powers(phi: &DrinfeldModule, f: &Poly, top: usize) -> Result<(Vec<Poly>, usize)> {
    let fd = frobenius_unchecked(phi, f)?;
    let q = fd.q_poly();
    let d = fd.d;
    let mut out = vec![Poly::one(phi.field())];
    for m in 1..=top {
        let mut v = Poly::zero(phi.field());
        for (l, c) in q.iter().enumerate().skip(1).take(m) {
            v = &v - &(c * &out[m - l]);
        }
        if let Some(deg) = v.degree() {
            if fd.r0 == 0 || deg * fd.r0 > m * d {
                return Err(Error::TheoremViolation(format!("deg nu({f}^{m}) = {deg} exceeds its bound")));
            }
        }
        out.push(v);
    }
    Ok((out, fd.r0))
}

impl NuTable {
    /// Needs the full characteristic polynomial at every prime, so it is costlier than μ.
    pub fn build(phi: &DrinfeldModule, sieve: Arc<MonicSieve>) -> Result<NuTable> {
        let n = sieve.depth();
        let per_prime: Vec<(Vec<Poly>, usize)> = sieve
            .primes()
            .par_iter()
            .map(|f| prime_powers(phi, f, n / f.degree().expect("prime")))
            .collect::<Result<_>>()?;
        let good = per_prime.iter().all(|(_, r0)| *r0 == phi.rank());
        let powers: Vec<Vec<Poly>> = per_prime.into_iter().map(|p| p.0).collect();
        let nu = sieve.tabulate(Poly::one(phi.field()), &powers, |x, y| x * y);
        Ok(NuTable { sieve, nu, good })
    }

    pub fn sieve(&self) -> &Arc<MonicSieve> {
        &self.sieve
    }

    pub fn values(&self) -> &[Poly] {
        &self.nu
    }

    pub fn good_reduction(&self) -> bool {
        self.good
    }

    pub fn get(&self, a: &Poly) -> Result<&Poly> {
        if !a.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = a.degree().expect("monic");
        if d > self.sieve.depth() {
            return Err(Error::MuTableTooShallow { need: d, have: self.sieve.depth() });
        }
        Ok(&self.nu[self.sieve.index(d, a.monic_code() as usize)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::monic_of_degree;
    use crate::algebra::FiniteField;

    #[test]
    fn carlitz_nu_is_a() {
        // P_f = X − f, so Q_f(X) = 1 − f X and ν(a) = a
        let f = FiniteField::prime(3).unwrap();
        let sieve = Arc::new(MonicSieve::build(&f, 4).unwrap());
        let t = NuTable::build(&DrinfeldModule::carlitz(&f), sieve).unwrap();
        assert!(t.good_reduction());
        for d in 0..=4 {
            for a in monic_of_degree(&f, d) {
                assert_eq!(t.get(&a).unwrap(), &a);
            }
        }
    }

    #[test]
    fn degree_bound_rank_two() {
        let f = FiniteField::prime(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[1, 2, 1]), Poly::from_ints(&f, &[2])]).unwrap();
        let sieve = Arc::new(MonicSieve::build(&f, 5).unwrap());
        let t = NuTable::build(&phi, sieve).unwrap();
        for d in 0..=5 {
            for a in monic_of_degree(&f, d) {
                assert!(t.get(&a).unwrap().degree().is_none_or(|g| 2 * g <= d));
            }
        }
    }
}
