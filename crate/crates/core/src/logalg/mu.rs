//! The multiplicative coefficients μ(a) of L(φ^∨, s−1), tabulated for all monic a up to a degree.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::sieve::MonicSieve;
use crate::algebra::{Field, Poly};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::frobenius::{frobenius_unchecked, hasse_unchecked, FrobeniusData};

#[derive(Debug)]
struct Prime {
    /// μ(f^m) for m = 0..=N/deg f.
    powers: Vec<Poly>,
    data: Option<Arc<FrobeniusData>>,
}

/// μ(a) for every monic a with deg a ≤ N, indexed by (degree, monic code).
#[derive(Debug)]
pub struct MuTable {
    sieve: Arc<MonicSieve>,
    rank: usize,
    mu: Vec<Poly>,
    primes: Vec<Prime>,
}

impl MuTable {
    /// Sieves μ up to degree n: Hasse invariants at primes, the R_f recursion at prime powers,
    /// multiplicativity elsewhere. Degree bounds are asserted on every entry.
    pub fn build(phi: &DrinfeldModule, n: usize) -> Result<MuTable> {
        let sieve = Arc::new(MonicSieve::build(phi.field(), n)?);
        MuTable::on_sieve(phi, sieve)
    }

    pub fn on_sieve(phi: &DrinfeldModule, sieve: Arc<MonicSieve>) -> Result<MuTable> {
        let n = sieve.depth();
        let primes: Vec<Prime> =
            sieve.primes().par_iter().map(|f| prime_entry(phi, f, n)).collect::<Result<_>>()?;
        let powers: Vec<Vec<Poly>> = primes.iter().map(|p| p.powers.clone()).collect();
        let mu = sieve.tabulate(Poly::one(phi.field()), &powers, |x, y| if x.is_zero() { x.clone() } else { x * y });
        let table = MuTable { sieve, rank: phi.rank(), mu, primes };
        table.check_degrees()?;
        Ok(table)
    }

    fn check_degrees(&self) -> Result<()> {
        let r = self.rank;
        for d in 0..=self.depth() {
            for (code, m) in self.level(d).iter().enumerate() {
                if let Some(dm) = m.degree() {
                    if dm * r > (r - 1) * d {
                        let a = Poly::from_monic_code(self.field(), d, code as u64);
                        return Err(Error::TheoremViolation(format!("deg mu({a}) = {dm} exceeds (1 - 1/r) deg a")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        self.sieve.field()
    }

    pub fn sieve(&self) -> &Arc<MonicSieve> {
        &self.sieve
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Largest degree covered.
    pub fn depth(&self) -> usize {
        self.sieve.depth()
    }

    /// Every μ(a), indexed like the sieve.
    pub fn values(&self) -> &[Poly] {
        &self.mu
    }

    /// μ over A_(i+), indexed by monic code.
    pub fn level(&self, i: usize) -> &[Poly] {
        &self.mu[self.sieve.level_range(i)]
    }

    pub fn get(&self, a: &Poly) -> Result<&Poly> {
        if !a.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = a.degree().expect("monic");
        self.require(d)?;
        Ok(&self.mu[self.sieve.index(d, a.monic_code() as usize)])
    }

    pub fn require(&self, i: usize) -> Result<()> {
        if i > self.depth() {
            return Err(Error::MuTableTooShallow { need: i, have: self.depth() });
        }
        Ok(())
    }

    /// Degree of the largest prime factor of the monic a with the given degree and code (0 for a = 1).
    pub fn largest_prime_degree(&self, d: usize, code: usize) -> usize {
        self.sieve.largest_prime_degree(self.sieve.index(d, code))
    }

    /// Irreducible monic polynomials up to the table depth, in (degree, code) order.
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.sieve.primes().iter()
    }

    fn prime_index(&self, f: &Poly) -> Option<usize> {
        self.sieve.primes().iter().position(|p| p == f)
    }

    /// μ(f^m) for m = 0..=depth/deg f.
    pub fn prime_powers(&self, f: &Poly) -> Option<&[Poly]> {
        self.prime_index(f).map(|i| self.primes[i].powers.as_slice())
    }

    /// Frobenius data gathered during the sieve (only primes whose square fits under the depth).
    pub fn frobenius(&self, f: &Poly) -> Option<Arc<FrobeniusData>> {
        self.prime_index(f).and_then(|i| self.primes[i].data.clone())
    }
}

fn prime_entry(phi: &DrinfeldModule, f: &Poly, n: usize) -> Result<Prime> {
    let field = phi.field();
    let d = f.degree().expect("prime");
    let top = n / d;
    let hasse = hasse_unchecked(phi, f);
    let mut powers = vec![Poly::one(field), hasse.clone()];
    let mut data = None;
    if top >= 2 {
        let fd = Arc::new(frobenius_unchecked(phi, f)?);
        if fd.b(1) != hasse {
            return Err(Error::InternalInconsistency(format!("Hasse invariant and b_1 disagree at f = {f}")));
        }
        // μ(f^m) = Σ_ℓ b_ℓ f^(ℓ−1) μ(f^(m−ℓ))
        let weights: Vec<Poly> = (1..=fd.r0)
            .scan(Poly::one(field), |fp, l| {
                let w = &fd.b(l) * fp;
                *fp = &*fp * f;
                Some(w)
            })
            .collect();
        for m in 2..=top {
            let mut s = Poly::zero(field);
            for (l, w) in weights.iter().enumerate() {
                if l < m {
                    s = &s + &(w * &powers[m - l - 1]);
                }
            }
            powers.push(s);
        }
        let r0 = fd.r0;
        for (m, pm) in powers.iter().enumerate().skip(1) {
            if let Some(deg) = pm.degree() {
                if r0 == 0 || deg * r0 > (r0 - 1) * m * d {
                    return Err(Error::TheoremViolation(format!("deg mu({f}^{m}) = {deg} exceeds its bound")));
                }
            }
        }
        data = Some(fd);
    }
    powers.truncate(top + 1);
    Ok(Prime { powers, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::{factor_monic, monic_of_degree};
    use crate::algebra::FiniteField;

    #[test]
    fn carlitz_is_all_ones() {
        let f = FiniteField::prime(2).unwrap();
        let t = MuTable::build(&DrinfeldModule::carlitz(&f), 8).unwrap();
        for d in 0..=8 {
            assert!(t.level(d).iter().all(|m| m.is_one()));
        }
    }

    #[test]
    fn degree_one_primes_and_multiplicativity() {
        let f5 = FiniteField::prime(5).unwrap();
        let g = Poly::from_ints(&f5, &[0, 0, 0, 0, 2, 1]);
        let phi = DrinfeldModule::new(&f5, vec![g.clone(), Poly::theta(&f5)]).unwrap();
        let t = MuTable::build(&phi, 3).unwrap();
        for c in 0..5 {
            let f = Poly::from_ints(&f5, &[c, 1]);
            assert_eq!(t.get(&f).unwrap(), &Poly::constant(&f5, g.eval(f5.from_int(-c))));
        }
        // μ(a) = Π μ(f^e) from the factorization
        for a in monic_of_degree(&f5, 3) {
            let expect = factor_monic(&a)
                .unwrap()
                .iter()
                .fold(Poly::one(&f5), |acc, (p, e)| &acc * &t.prime_powers(p).unwrap()[*e]);
            assert_eq!(t.get(&a).unwrap(), &expect, "a = {a}");
        }
    }

    #[test]
    fn too_shallow() {
        let f = FiniteField::prime(3).unwrap();
        let t = MuTable::build(&DrinfeldModule::carlitz(&f), 2).unwrap();
        let a = Poly::theta(&f).pow(3);
        assert!(matches!(t.get(&a), Err(Error::MuTableTooShallow { need: 3, have: 2 })));
    }

    #[test]
    fn smoothness() {
        let f = FiniteField::prime(2).unwrap();
        let t = MuTable::build(&DrinfeldModule::carlitz(&f), 4).unwrap();
        // θ²(θ+1)² is 1-smooth; θ⁴+θ+1 is prime
        let a = Poly::from_ints(&f, &[0, 0, 1, 0, 1]);
        assert_eq!(t.largest_prime_degree(4, a.monic_code() as usize), 1);
        let b = Poly::from_ints(&f, &[1, 1, 0, 0, 1]);
        assert_eq!(t.largest_prime_degree(4, b.monic_code() as usize), 4);
        assert_eq!(t.primes().count(), 2 + 1 + 2 + 3);
    }
}
