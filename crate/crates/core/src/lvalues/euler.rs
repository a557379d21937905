//! Finite Euler product against the sieved Dirichlet sum, exactly in K.
//!
//! Restricted to primes of degree ≤ B and to total degree ≤ N, the product ∏_f R_f(f^(−s))^(−1)
//! equals Σ μ(a)/a^s over B-smooth monic a of degree ≤ N. The local factors here come from
//! expanding 1/R_f as a geometric series, not from the recursion the sieve uses.

use crate::algebra::factor::irreducibles_of_degree;
use crate::algebra::{Poly, RatFunc};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::frobenius::frobenius_data;
use crate::logalg::MuTable;

#[derive(Clone, Debug)]
pub struct EulerCheck {
    pub bound: usize,
    pub depth: usize,
    pub s: u32,
    /// Degree-graded pieces of the truncated product.
    pub euler: Vec<RatFunc>,
    /// Degree-graded pieces of the smooth Dirichlet sum.
    pub dirichlet: Vec<RatFunc>,
}

impl EulerCheck {
    pub fn euler_total(&self) -> RatFunc {
        sum(&self.euler)
    }

    pub fn dirichlet_total(&self) -> RatFunc {
        sum(&self.dirichlet)
    }

    /// Equal piece by piece and, as printed, in total.
    pub fn agrees(&self) -> bool {
        self.euler == self.dirichlet && self.euler_total().to_string() == self.dirichlet_total().to_string()
    }
}

fn sum(v: &[RatFunc]) -> RatFunc {
    v.iter().skip(1).fold(v[0].clone(), |acc, x| acc.add_rf(x))
}

/// Σ_k (1 − R)^k through x^m, with R(0) = 1.
fn geometric_inverse(r: &[Poly], m: usize) -> Vec<Poly> {
    let field = r[0].field();
    let g: Vec<Poly> = std::iter::once(Poly::zero(field)).chain(r.iter().skip(1).map(|c| -c)).collect();
    let mul = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::zero(field); m + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take((m + 1).saturating_sub(i)) {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    };
    let mut power = vec![Poly::zero(field); m + 1];
    power[0] = Poly::one(field);
    let mut total = power.clone();
    // g has no constant term, so g^k starts at x^k
    for _ in 1..=m {
        power = mul(&power, &g);
        for (t, p) in total.iter_mut().zip(&power) {
            *t = &*t + p;
        }
    }
    total
}

pub fn euler_vs_dirichlet(phi: &DrinfeldModule, mu: &MuTable, bound: usize, depth: usize, s: u32) -> Result<EulerCheck> {
    mu.require(depth)?;
    if bound == 0 || s == 0 {
        return Err(Error::InvalidArgument("need a prime-degree bound and s >= 1".into()));
    }
    let field = phi.field();
    let zero = RatFunc::zero(field);
    let mut euler = vec![zero.clone(); depth + 1];
    euler[0] = RatFunc::one(field);
    for d in 1..=bound.min(depth) {
        for f in irreducibles_of_degree(field, d) {
            let data = frobenius_data(phi, &f)?;
            let top = depth / d;
            let local = geometric_inverse(&data.r_poly(), top);
            let mut next = vec![zero.clone(); depth + 1];
            for (deg, acc) in euler.iter().enumerate() {
                if acc.is_zero() {
                    continue;
                }
                for (m, c) in local.iter().enumerate() {
                    if deg + m * d > depth || c.is_zero() {
                        continue;
                    }
                    let factor = RatFunc::new(c.clone(), f.pow(m as u64 * s as u64))?;
                    next[deg + m * d] = next[deg + m * d].add_rf(&acc.mul_rf(&factor));
                }
            }
            euler = next;
        }
    }
    let mut dirichlet = vec![zero; depth + 1];
    for (deg, slot) in dirichlet.iter_mut().enumerate() {
        for (code, m) in mu.level(deg).iter().enumerate() {
            if m.is_zero() || mu.largest_prime_degree(deg, code) > bound {
                continue;
            }
            let a = Poly::from_monic_code(field, deg, code as u64);
            *slot = slot.add_rf(&RatFunc::new(m.clone(), a.pow(s as u64))?);
        }
    }
    Ok(EulerCheck { bound, depth, s, euler, dirichlet })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    #[test]
    fn geometric_matches_recursion() {
        let f = FiniteField::prime(3).unwrap();
        let r = vec![Poly::one(&f), Poly::from_ints(&f, &[1, 1]), Poly::from_ints(&f, &[0, 2])];
        let inv = geometric_inverse(&r, 6);
        // R · (1/R) = 1 through x^6
        for n in 0..=6 {
            let mut c = Poly::zero(&f);
            for (j, rj) in r.iter().enumerate().take(n + 1) {
                c = &c + &(rj * &inv[n - j]);
            }
            assert_eq!(c.is_one(), n == 0, "n = {n}");
            assert!(n == 0 || c.is_zero());
        }
    }

    #[test]
    fn agrees_rank_two() {
        let f = FiniteField::prime(2).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[1, 1]), Poly::from_ints(&f, &[0, 0, 1])]).unwrap();
        let mu = MuTable::build(&phi, 6).unwrap();
        for (b, s) in [(1, 1), (2, 1), (3, 2)] {
            let check = euler_vs_dirichlet(&phi, &mu, b, 6, s).unwrap();
            assert!(check.agrees(), "B = {b}, s = {s}");
        }
    }
}
