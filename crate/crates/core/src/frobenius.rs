//! Frobenius data at a prime f: reduction rank, the coefficients b_ℓ, the unit c_f and the
//! characteristic polynomial P_f with its reciprocal variants.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::factor::is_irreducible;
use crate::algebra::{Fe, Field, Poly, RatFunc};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::twisted::{CoeffRing, ResidueRing, TwistedPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    pub f: Poly,
    pub d: usize,
    pub r0: usize,
    /// b_1..b_r (zero beyond r0).
    pub b: Vec<Poly>,
    /// c_f ∈ F_q^×; 1 when r0 = 0 (no unit is defined there).
    pub c_f: Fe,
    /// a_0, …, a_(r0−1), 1.
    pub p: Vec<Poly>,
}

impl FrobeniusData {
    pub fn b(&self, l: usize) -> Poly {
        if l == 0 {
            return Poly::zero(self.f.field());
        }
        self.b.get(l - 1).cloned().unwrap_or_else(|| Poly::zero(self.f.field()))
    }

    /// Q_f(x) = x^r0 P_f(1/x).
    pub fn q_poly(&self) -> Vec<Poly> {
        self.p.iter().rev().cloned().collect()
    }

    /// Q_f^∨(x) = P_f(x)/P_f(0).
    pub fn q_dual(&self) -> Vec<RatFunc> {
        let a0 = &self.p[0];
        self.p.iter().map(|c| RatFunc::new(c.clone(), a0.clone()).expect("a_0 nonzero")).collect()
    }

    /// R_f(x) = Q_f^∨(f x) = 1 − b_1 x − b_2 f x² − … − b_r0 f^(r0−1) x^r0, in A[x].
    pub fn r_poly(&self) -> Vec<Poly> {
        let mut out = vec![Poly::one(self.f.field())];
        let mut fpow = Poly::one(self.f.field());
        for l in 1..=self.r0 {
            out.push(-&(&self.b(l) * &fpow));
            fpow = &fpow * &self.f;
        }
        out
    }

    /// c_f·P_f(1) = f − Σ b_ℓ, which must be |φ̄(F_f)|.
    pub fn unit_count_from_p(&self) -> Poly {
        (1..=self.r0).fold(self.f.clone(), |acc, l| &acc - &self.b(l))
    }
}

/// Largest j with f ∤ κ_j, or 0.
pub fn reduction_rank(phi: &DrinfeldModule, f: &Poly) -> Result<usize> {
    check_prime(f)?;
    Ok(rank_at(phi, f))
}

fn rank_at(phi: &DrinfeldModule, f: &Poly) -> usize {
    (1..=phi.rank()).rev().find(|&j| !f.divides(&phi.kappa(j))).unwrap_or(0)
}

fn check_prime(f: &Poly) -> Result<()> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_irreducible(f)? {
        return Err(Error::Reducible(f.to_string()));
    }
    Ok(())
}

/// ⟨f⟩_d mod f, which is μ(f).
pub fn hasse_mu_prime(phi: &DrinfeldModule, f: &Poly) -> Result<Poly> {
    check_prime(f)?;
    Ok(hasse_unchecked(phi, f))
}

pub(crate) fn hasse_unchecked(phi: &DrinfeldModule, f: &Poly) -> Poly {
    let d = f.degree().expect("nonzero");
    let ring = ResidueRing::new(f).expect("monic");
    phi.phi_bar_of(f, &ring, d).coeff(d as i64)
}

/// Full Frobenius data at the prime f, from the congruence φ̄_f = Σ_ℓ φ̄_(b_ℓ) τ^(ℓd) in F_f[τ].
pub fn frobenius_data(phi: &DrinfeldModule, f: &Poly) -> Result<FrobeniusData> {
    check_prime(f)?;
    frobenius_unchecked(phi, f)
}

/// Solves for b_1..b_upto (upto may exceed r0, which a test uses to see the extra ones vanish).
pub(crate) fn solve_b(phi: &DrinfeldModule, f: &Poly, upto: usize) -> Vec<Poly> {
    let d = f.degree().expect("nonzero");
    let ring = ResidueRing::new(f).expect("monic");
    let kmax = phi.rank() * d;
    let phi_f = phi.phi_bar_of(f, &ring, kmax);
    let mut b: Vec<Poly> = Vec::with_capacity(upto);
    let mut phi_b: Vec<TwistedPoly<ResidueRing>> = Vec::with_capacity(upto);
    for l in 1..=upto {
        let mut v = phi_f.coeff((l * d) as i64);
        for j in 1..l {
            v = &v - &phi_b[j - 1].coeff(((l - j) * d) as i64);
        }
        let v = ring.from_poly(&v);
        phi_b.push(phi.phi_bar_of(&v, &ring, kmax));
        b.push(v);
    }
    b
}

pub(crate) fn frobenius_unchecked(phi: &DrinfeldModule, f: &Poly) -> Result<FrobeniusData> {
    let field = phi.field();
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let r = phi.rank();
    let r0 = rank_at(phi, f);
    if r0 == 0 {
        return Ok(FrobeniusData {
            f: f.clone(),
            d,
            r0,
            b: vec![Poly::zero(field); r],
            c_f: Fe::ONE,
            p: vec![Poly::one(field)],
        });
    }
    let mut b = solve_b(phi, f, r0);
    b.resize(r, Poly::zero(field));
    verify_congruence(phi, f, &b)?;

    let last = &b[r0 - 1];
    if last.degree() != Some(0) {
        return Err(Error::InternalInconsistency(format!("b_{r0} = {last} is not a nonzero constant at f = {f}")));
    }
    for (l, bl) in b.iter().enumerate().take(r0) {
        if let Some(deg) = bl.degree() {
            if deg * r0 > (r0 - l - 1) * d {
                return Err(Error::InternalInconsistency(format!("deg b_{} = {deg} exceeds its bound at f = {f}", l + 1)));
            }
        }
    }
    let c_f = field.neg(last.coeff(0));
    let cinv = field.inv(c_f).expect("unit");
    let mut p = Vec::with_capacity(r0 + 1);
    p.push(f.scale(cinv));
    for bl in b.iter().take(r0 - 1) {
        p.push(bl.scale(field.neg(cinv)));
    }
    p.push(Poly::one(field));
    Ok(FrobeniusData { f: f.clone(), d, r0, b, c_f, p })
}

/// Checks ⟨f⟩_k ≡ Σ_ℓ ⟨b_ℓ⟩_(k−ℓd) (mod f) for every 0 ≤ k ≤ rd.
fn verify_congruence(phi: &DrinfeldModule, f: &Poly, b: &[Poly]) -> Result<()> {
    let d = f.degree().expect("nonzero");
    let ring = ResidueRing::new(f)?;
    let kmax = phi.rank() * d;
    let lhs = phi.phi_bar_of(f, &ring, kmax);
    let mut rhs = TwistedPoly::zero(&ring);
    for (l, bl) in b.iter().enumerate() {
        let shifted = phi.phi_bar_of(bl, &ring, kmax).tmul_trunc(&TwistedPoly::tau(&ring, (l + 1) * d), kmax)?;
        rhs = rhs.add(&shifted);
    }
    if lhs != rhs {
        return Err(Error::InternalInconsistency(format!("bracket congruence fails at f = {f}")));
    }
    Ok(())
}

/// The monic characteristic polynomial (in θ) of the F_q-linear map φ̄_θ on F_f ≅ F_q^d: the
/// Fitting-ideal generator |φ̄(F_f)|. Independent of the congruence route.
pub fn unit_count(phi: &DrinfeldModule, f: &Poly) -> Result<Poly> {
    check_prime(f)?;
    let field = phi.field();
    let d = f.degree().expect("nonzero");
    let ring = ResidueRing::new(f)?;
    let op = phi.phi_bar_theta(&ring);
    let mut m = vec![vec![Fe::ZERO; d]; d];
    for col in 0..d {
        let y = Poly::monomial(field, Fe::ONE, col);
        let mut img = ring.zero();
        for (k, c) in op.coeffs().iter().enumerate() {
            img = ring.add(&img, &ring.mul(c, &ring.frob(&y, k as u32)));
        }
        for (row, slot) in m.iter_mut().enumerate() {
            slot[col] = img.coeff(row);
        }
    }
    Ok(charpoly(field, m))
}

/// Cross-checks the matrix oracle against c_f·P_f(1).
pub fn check_unit_count(phi: &DrinfeldModule, data: &FrobeniusData) -> Result<Poly> {
    let oracle = unit_count(phi, &data.f)?;
    let via_p = data.unit_count_from_p();
    if oracle != via_p {
        return Err(Error::InternalInconsistency(format!("|phi(F_f)| = {oracle} but c_f P_f(1) = {via_p} at f = {}", data.f)));
    }
    Ok(oracle)
}

/// det(X − M) via reduction to upper Hessenberg form.
pub fn charpoly(field: &Field, mut h: Vec<Vec<Fe>>) -> Poly {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = field.inv(h[m][m - 1]).expect("nonzero pivot");
        for i in m + 1..n {
            let u = field.mul(h[i][m - 1], inv);
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = field.mul(u, h[m][j]);
                h[i][j] = field.sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = field.mul(u, row[i]);
                row[m] = field.add(row[m], t);
            }
        }
    }
    let x = Poly::theta(field);
    let mut p: Vec<Poly> = vec![Poly::one(field)];
    for m in 1..=n {
        let mut cur = &(&x - &Poly::constant(field, h[m - 1][m - 1])) * &p[m - 1];
        let mut t = Fe::ONE;
        for i in 1..m {
            t = field.mul(t, h[m - i][m - i - 1]);
            let c = field.mul(t, h[m - i - 1][m - 1]);
            cur = &cur - &p[m - i - 1].scale(c);
        }
        p.push(cur);
    }
    p.pop().expect("nonempty")
}

/// Frobenius data per prime, shared across threads.
#[derive(Default)]
pub struct FrobeniusCache {
    map: Mutex<HashMap<Poly, Arc<FrobeniusData>>>,
}

impl FrobeniusCache {
    pub fn new() -> FrobeniusCache {
        FrobeniusCache::default()
    }

    /// Data at a prime known to be irreducible (not rechecked).
    pub fn get(&self, phi: &DrinfeldModule, f: &Poly) -> Result<Arc<FrobeniusData>> {
        if let Some(v) = self.map.lock().expect("cache lock").get(f) {
            return Ok(v.clone());
        }
        // computed outside the lock; a racing insert stores an identical value
        let v = Arc::new(frobenius_unchecked(phi, f)?);
        self.map.lock().expect("cache lock").entry(f.clone()).or_insert(v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::irreducibles_of_degree;
    use crate::algebra::FiniteField;

    fn p(f: &Field, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    #[test]
    fn carlitz_data() {
        let f2 = FiniteField::prime(2).unwrap();
        let c = DrinfeldModule::carlitz(&f2);
        let f = p(&f2, &[1, 1, 1]);
        let data = frobenius_data(&c, &f).unwrap();
        assert_eq!(data.r0, 1);
        assert_eq!(data.b, vec![Poly::one(&f2)]);
        assert_eq!(data.p, vec![-&f, Poly::one(&f2)]);
        assert_eq!(unit_count(&c, &f).unwrap(), p(&f2, &[0, 1, 1]));
        assert_eq!(check_unit_count(&c, &data).unwrap(), &f - &Poly::one(&f2));
        assert_eq!(hasse_mu_prime(&c, &f).unwrap(), Poly::one(&f2));
    }

    #[test]
    fn rank_two_degree_one() {
        // b_1 = g(−c) at f = θ + c
        let f5 = FiniteField::prime(5).unwrap();
        let g = p(&f5, &[0, 0, 0, 0, 2, 1]);
        let delta = p(&f5, &[0, 1]);
        let phi = DrinfeldModule::new(&f5, vec![g.clone(), delta]).unwrap();
        for c in 1..5 {
            let f = p(&f5, &[c, 1]);
            let data = frobenius_data(&phi, &f).unwrap();
            let expect = Poly::constant(&f5, g.eval(f5.from_int(-c)));
            assert_eq!(data.b[0], expect);
            check_unit_count(&phi, &data).unwrap();
        }
        // θ divides both g and Δ
        let data = frobenius_data(&phi, &p(&f5, &[0, 1])).unwrap();
        assert_eq!(data.r0, 0);
        check_unit_count(&phi, &data).unwrap();
        // θ | Δ only: rank 1 at θ
        let phi1 = DrinfeldModule::new(&f5, vec![p(&f5, &[1, 1]), p(&f5, &[0, 1])]).unwrap();
        let data = frobenius_data(&phi1, &p(&f5, &[0, 1])).unwrap();
        assert_eq!(data.r0, 1);
        check_unit_count(&phi1, &data).unwrap();
    }

    #[test]
    fn rank_two_degree_two_formula() {
        // b_1 = ((θ^(q²) + θ + c_1)Δ + g^(q+1)) mod f
        let f3 = FiniteField::prime(3).unwrap();
        let g = p(&f3, &[1, 2, 1]);
        let delta = p(&f3, &[2, 0, 1, 1]);
        let phi = DrinfeldModule::new(&f3, vec![g.clone(), delta.clone()]).unwrap();
        for f in irreducibles_of_degree(&f3, 2) {
            let c1 = Poly::constant(&f3, f.coeff(1));
            let t = Poly::theta(&f3);
            let expect = (&(&(&t.pow(9) + &t) + &c1) * &delta + g.pow(4)).rem(&f).unwrap();
            let data = frobenius_data(&phi, &f).unwrap();
            assert_eq!(data.b[0], expect, "f = {f}");
        }
    }

    #[test]
    fn rank_zero_prime() {
        let f3 = FiniteField::prime(3).unwrap();
        let f = p(&f3, &[1, 1]);
        let phi = DrinfeldModule::new(&f3, vec![f.clone(), f.clone()]).unwrap();
        let data = frobenius_data(&phi, &f).unwrap();
        assert_eq!(data.r0, 0);
        assert_eq!(data.p, vec![Poly::one(&f3)]);
        assert_eq!(unit_count(&phi, &f).unwrap(), f);
        assert!(hasse_mu_prime(&phi, &f).unwrap().is_zero());
    }

    #[test]
    fn r_poly_matches_q_dual() {
        let f3 = FiniteField::prime(3).unwrap();
        let phi = DrinfeldModule::new(&f3, vec![p(&f3, &[1, 1]), p(&f3, &[2]), p(&f3, &[0, 0, 1])]).unwrap();
        for f in irreducibles_of_degree(&f3, 2) {
            let data = frobenius_data(&phi, &f).unwrap();
            let qd = data.q_dual();
            let r = data.r_poly();
            let mut fpow = Poly::one(&f3);
            for (l, c) in qd.iter().enumerate() {
                assert_eq!(c.mul_poly(&fpow), RatFunc::from(r[l].clone()));
                fpow = &fpow * &f;
            }
        }
    }

    #[test]
    fn reducible_rejected() {
        let f2 = FiniteField::prime(2).unwrap();
        let c = DrinfeldModule::carlitz(&f2);
        assert!(matches!(frobenius_data(&c, &p(&f2, &[0, 1, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn charpoly_small() {
        let f5 = FiniteField::prime(5).unwrap();
        let m = vec![vec![f5.from_int(1), f5.from_int(2)], vec![f5.from_int(3), f5.from_int(4)]];
        // X² − 5X − 2
        assert_eq!(charpoly(&f5, m), p(&f5, &[-2, -5, 1]));
    }
}
