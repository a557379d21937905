//! Irreducibility, factorization and enumeration of monic polynomials over F_q.

use super::field::{Fe, Field};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

fn prime_divisors(n: usize) -> Vec<usize> {
    crate::algebra::field::prime_factors(n as u64).into_iter().map(|v| v as usize).collect()
}

/// T^(q^k) mod f.
fn frob_power(f: &Poly, k: usize) -> Poly {
    let q = f.field().size() as u64;
    let mut x = Poly::theta(f.field()).rem(f).expect("nonzero");
    for _ in 0..k {
        x = x.pow_mod(q, f);
    }
    x
}

/// Rabin's test.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let t = Poly::theta(f.field());
    if !(&frob_power(f, d) - &t).rem(f)?.is_zero() {
        return Ok(false);
    }
    for l in prime_divisors(d) {
        let h = &frob_power(f, d / l) - &t;
        if !f.gcd(&h).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(a: &Poly) -> Poly {
    let f = a.field();
    let p = f.characteristic() as usize;
    // c^(1/p) = c^(p^(m-1)) in F_(p^m)
    let e = (f.characteristic() as u64).pow(f.degree() - 1);
    let c = a.coeffs().iter().step_by(p).map(|&x| f.pow(x, e)).collect();
    Poly::from_coeffs(f, c)
}

/// Squarefree decomposition: list of (squarefree factor, multiplicity).
fn squarefree(a: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let da = a.derivative();
    if da.is_zero() {
        let p = a.field().characteristic() as usize;
        for (g, m) in squarefree(&pth_root(a)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = a.gcd(&da);
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("divides");
        i += 1;
    }
    if !c.is_one() {
        let p = a.field().characteristic() as usize;
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial: (product of all degree-d factors, d).
fn distinct_degree(a: &Poly) -> Vec<(Poly, usize)> {
    let q = a.field().size() as u64;
    let t = Poly::theta(a.field());
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = t.rem(&rest).expect("nonzero");
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&(&h - &t));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.degree().filter(|&x| x > 0) {
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct degree-d irreducibles by trial division.
fn equal_degree(a: &Poly, d: usize) -> Vec<Poly> {
    let mut rest = a.clone();
    let mut out = Vec::new();
    let count = (a.field().size() as u64).pow(d as u32);
    for code in 0..count {
        if rest.degree() == Some(d) {
            out.push(rest.clone());
            break;
        }
        if rest.is_one() {
            break;
        }
        let cand = Poly::from_monic_code(a.field(), d, code);
        if let Some(qt) = rest.div_exact(&cand) {
            out.push(cand);
            rest = qt;
        }
    }
    out
}

/// Factorization of a monic polynomial into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor_monic(a: &Poly) -> Result<Vec<(Poly, usize)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    for (sf, m) in squarefree(a) {
        for (g, d) in distinct_degree(&sf) {
            for fac in equal_degree(&g, d) {
                out.push((fac, m));
            }
        }
    }
    out.sort();
    // merge duplicates (a factor may appear in several squarefree parts only once,
    // but keep this robust)
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (f, m) in out {
        match merged.last_mut() {
            Some((g, n)) if *g == f => *n += m,
            _ => merged.push((f, m)),
        }
    }
    Ok(merged)
}

/// The q^i monic polynomials of degree i, constant coefficient varying fastest.
pub fn monic_of_degree(field: &Field, i: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.size() as u64).pow(i as u32);
    (0..count).map(move |code| Poly::from_monic_code(field, i, code))
}

/// Monic irreducibles of degree d in enumeration order.
pub fn irreducibles_of_degree(field: &Field, d: usize) -> Vec<Poly> {
    monic_of_degree(field, d).filter(|f| is_irreducible(f).unwrap_or(false)).collect()
}

/// Representative of degree < deg f congruent to `a` modulo f.
pub fn canonical_rep(a: &Poly, f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    a.rem(f)
}

/// Representative of a fraction with f-coprime denominator.
pub fn canonical_rep_rf(a: &RatFunc, f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.is_integral() {
        return a.num().rem(f);
    }
    let inv = a.den().inv_mod(f).ok_or_else(|| Error::NotInvertible(f.to_string()))?;
    Ok(a.num().mul_mod(&inv, f))
}

/// Roots of a polynomial in its coefficient field, in code order.
pub fn roots(a: &Poly) -> Vec<Fe> {
    a.field().elements().filter(|&x| a.eval(x).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;

    #[test]
    fn irreducibility_examples() {
        let f = FiniteField::prime(2).unwrap();
        assert!(is_irreducible(&Poly::from_ints(&f, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&Poly::from_ints(&f, &[0, 1, 1])).unwrap());
        assert!(is_irreducible(&Poly::theta(&f)).unwrap());
        assert_eq!(is_irreducible(&Poly::zero(&f)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn factor_examples() {
        let f = FiniteField::prime(2).unwrap();
        let fac = factor_monic(&Poly::from_ints(&f, &[0, 1, 1])).unwrap();
        assert_eq!(fac, vec![(Poly::theta(&f), 1), (Poly::from_ints(&f, &[1, 1]), 1)]);
        let g = Poly::from_ints(&f, &[1, 1, 1]);
        assert_eq!(factor_monic(&g).unwrap(), vec![(g, 1)]);
        assert!(factor_monic(&Poly::one(&f)).unwrap().is_empty());
        assert_eq!(factor_monic(&Poly::from_ints(&f, &[1, 0, 1, 1])).map(|v| v.len()).unwrap(), 1);
    }

    #[test]
    fn factor_recombines_exhaustively() {
        for (q, maxd) in [(2u32, 8usize), (3, 6), (5, 4)] {
            let f = FiniteField::prime(q).unwrap();
            for d in 0..=maxd {
                for a in monic_of_degree(&f, d) {
                    let fac = factor_monic(&a).unwrap();
                    let prod = fac.iter().fold(Poly::one(&f), |acc, (g, m)| &acc * &g.pow(*m as u64));
                    assert_eq!(prod, a);
                    assert!(fac.iter().all(|(g, _)| is_irreducible(g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn factor_over_f4() {
        let f = FiniteField::new(2, 2, None).unwrap();
        for a in monic_of_degree(&f, 4) {
            let fac = factor_monic(&a).unwrap();
            let prod = fac.iter().fold(Poly::one(&f), |acc, (g, m)| &acc * &g.pow(*m as u64));
            assert_eq!(prod, a);
        }
        // p-th powers over F_4 exercise the root extraction
        let a = Poly::from_coeffs(&f, vec![f.u(), Fe::ONE]).pow(4);
        assert_eq!(factor_monic(&a).unwrap(), vec![(Poly::from_coeffs(&f, vec![f.u(), Fe::ONE]), 4)]);
    }

    #[test]
    fn enumeration() {
        let f2 = FiniteField::prime(2).unwrap();
        let v: Vec<String> = monic_of_degree(&f2, 1).map(|a| a.to_string()).collect();
        assert_eq!(v, ["T", "T+1"]);
        let all: Vec<Poly> = monic_of_degree(&f2, 2).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0].to_string(), "T^2");
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(monic_of_degree(&f3, 0).map(|a| a.to_string()).collect::<Vec<_>>(), ["1"]);
        for i in 0..=6 {
            assert_eq!(monic_of_degree(&f3, i).count(), 3usize.pow(i as u32));
        }
        // irreducible counts match the necklace formula
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(irreducibles_of_degree(&f5, 1).len(), 5);
        assert_eq!(irreducibles_of_degree(&f5, 2).len(), 10);
        assert_eq!(irreducibles_of_degree(&f5, 3).len(), 40);
    }

    #[test]
    fn canonical_rep_examples() {
        let f = FiniteField::prime(2).unwrap();
        let m = Poly::from_ints(&f, &[1, 1, 1]);
        assert_eq!(canonical_rep(&Poly::from_ints(&f, &[0, 0, 1]), &m).unwrap(), Poly::from_ints(&f, &[1, 1]));
        assert!(canonical_rep(&m, &m).unwrap().is_zero());
        let inv_t = RatFunc::new(Poly::one(&f), Poly::theta(&f)).unwrap();
        assert!(canonical_rep_rf(&inv_t, &Poly::from_ints(&f, &[1, 1])).unwrap().is_one());
        assert!(matches!(canonical_rep_rf(&inv_t, &Poly::theta(&f)), Err(Error::NotInvertible(_))));
    }
}
