//! Seeded random inputs for the suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::prime_power;
use crate::algebra::{Fe, Field, FieldCtx, Poly, RatFunc, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;

/// Base fields F_q for the prime powers 2 ≤ q ≤ qmax.
pub fn fields(qmax: u64) -> Result<Vec<Field>> {
    (2..=qmax).filter(|&q| prime_power(q).is_some()).map(field).collect()
}

pub fn field(q: u64) -> Result<Field> {
    Ok(FieldCtx::from_q(q, 1)?.base)
}

pub fn elem(rng: &mut ChaCha8Rng, f: &Field) -> Fe {
    Fe(rng.gen_range(0..f.size()))
}

pub fn nonzero_elem(rng: &mut ChaCha8Rng, f: &Field) -> Fe {
    Fe(rng.gen_range(1..f.size()))
}

/// Uniform polynomial of degree ≤ d (possibly zero).
pub fn poly(rng: &mut ChaCha8Rng, f: &Field, d: usize) -> Poly {
    Poly::from_coeffs(f, (0..=d).map(|_| elem(rng, f)).collect())
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, f: &Field, d: usize) -> Poly {
    loop {
        let p = poly(rng, f, d);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Monic of degree exactly d.
pub fn monic(rng: &mut ChaCha8Rng, f: &Field, d: usize) -> Poly {
    let mut c: Vec<Fe> = (0..d).map(|_| elem(rng, f)).collect();
    c.push(Fe::ONE);
    Poly::from_coeffs(f, c)
}

/// φ of rank r with every κ_j of degree ≤ dk and κ_r ≠ 0.
pub fn module(rng: &mut ChaCha8Rng, f: &Field, r: usize, dk: usize) -> DrinfeldModule {
    let mut kappa: Vec<Poly> = (1..r).map(|_| poly(rng, f, dk)).collect();
    kappa.push(nonzero_poly(rng, f, dk));
    DrinfeldModule::new(f, kappa).expect("leading coefficient is nonzero")
}

/// Like `module`, but with d_0 = max deg κ_j equal to dk exactly.
pub fn module_with_d0(rng: &mut ChaCha8Rng, f: &Field, r: usize, dk: usize) -> DrinfeldModule {
    loop {
        let phi = module(rng, f, r, dk);
        if phi.d0() == dk {
            return phi;
        }
    }
}

/// Element of A_(f)[x] of x-degree ≤ m whose coefficients have f-coprime denominators.
pub fn local_xpoly(rng: &mut ChaCha8Rng, f: &Poly, m: u64, dc: usize) -> XPoly {
    let field = f.field();
    let mut out = XPoly::zero(field);
    for e in 0..=m {
        let num = poly(rng, field, dc);
        let den = loop {
            let dd = rng.gen_range(0..=2);
            let d = monic(rng, field, dd);
            if d.gcd(f).is_one() {
                break d;
            }
        };
        out.add_term(e, &RatFunc::new(num, den).expect("monic denominator"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn seeded_and_well_formed() {
        let f = field(4).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (x, y) = (module(&mut a, &f, 3, 2), module(&mut b, &f, 3, 2));
            assert_eq!(x, y);
            assert_eq!(x.rank(), 3);
            assert!(x.d0() <= 2);
        }
        assert_eq!(module_with_d0(&mut a, &f, 2, 3).d0(), 3);
        let p = Poly::from_ints(&field(3).unwrap(), &[1, 0, 1]);
        let x = local_xpoly(&mut a, &p, 2, 1);
        assert!(x.terms().values().all(|c| c.den().gcd(&p).is_one()));
        assert_eq!(fields(5).unwrap().iter().map(|f| f.size()).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
    }
}
