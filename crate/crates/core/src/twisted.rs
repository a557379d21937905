//! Twisted polynomials R[τ] with τc = c^q τ, for R = A = F_q[θ] or R = A/(f).

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Fe, Field, Poly};
use crate::error::{Error, Result};

/// A commutative F_q-algebra with a q-power Frobenius.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// a^(q^k).
    fn frob(&self, a: &Self::Elem, k: u32) -> Self::Elem;
    /// Image of an element of A.
    fn from_poly(&self, p: &Poly) -> Self::Elem;
    /// Scalar multiplication by F_q.
    fn scale(&self, a: &Self::Elem, c: Fe) -> Self::Elem;
    /// Identity of the ring, used to reject mixed-ring products.
    fn same_ring(&self, other: &Self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The ring A = F_q[θ].
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
}

impl PolyRing {
    pub fn new(field: &Field) -> PolyRing {
        PolyRing { field: field.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

impl CoeffRing for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(&self.field)
    }
    fn one(&self) -> Poly {
        Poly::one(&self.field)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn frob(&self, a: &Poly, k: u32) -> Poly {
        a.pow_char_power(self.field.degree() * k)
    }
    fn from_poly(&self, p: &Poly) -> Poly {
        p.clone()
    }
    fn scale(&self, a: &Poly, c: Fe) -> Poly {
        a.scale(c)
    }
    fn same_ring(&self, other: &Self) -> bool {
        *self.field == *other.field
    }
}

struct ResidueInner {
    f: Poly,
    /// θ^(i·q) mod f for i < d: the q-Frobenius is F_q-linear on A/(f).
    frob_images: Vec<Poly>,
}

/// The residue field F_f = A/(f) for f monic irreducible; elements are reduced polynomials.
#[derive(Clone)]
pub struct ResidueRing {
    inner: Arc<ResidueInner>,
}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A/({})", self.inner.f)
    }
}

impl ResidueRing {
    pub fn new(f: &Poly) -> Result<ResidueRing> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let q = f.field().size() as u64;
        let tq = Poly::theta(f.field()).pow_mod(q, f);
        let mut frob_images = Vec::with_capacity(d);
        let mut cur = Poly::one(f.field()).rem(f)?;
        for _ in 0..d {
            frob_images.push(cur.clone());
            cur = cur.mul_mod(&tq, f);
        }
        Ok(ResidueRing { inner: Arc::new(ResidueInner { f: f.clone(), frob_images }) })
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.f
    }

    pub fn degree(&self) -> usize {
        self.inner.f.degree().unwrap_or(0)
    }

    fn frob1(&self, a: &Poly) -> Poly {
        let f = a.field();
        let mut out = Poly::zero(f);
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.inner.frob_images[i].scale(c);
            }
        }
        out
    }
}

impl CoeffRing for ResidueRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(self.inner.f.field())
    }
    fn one(&self) -> Poly {
        Poly::one(self.inner.f.field()).rem(&self.inner.f).expect("nonzero modulus")
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.inner.f)
    }
    fn frob(&self, a: &Poly, k: u32) -> Poly {
        (0..k).fold(a.clone(), |acc, _| self.frob1(&acc))
    }
    fn from_poly(&self, p: &Poly) -> Poly {
        p.rem(&self.inner.f).expect("nonzero modulus")
    }
    fn scale(&self, a: &Poly, c: Fe) -> Poly {
        a.scale(c)
    }
    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.f == other.inner.f
    }
}

/// Σ c_k τ^k over a coefficient ring.
#[derive(Clone)]
pub struct TwistedPoly<R: CoeffRing> {
    ring: R,
    c: Vec<R::Elem>,
}

impl<R: CoeffRing> PartialEq for TwistedPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl<R: CoeffRing> fmt::Debug for TwistedPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl<R: CoeffRing> TwistedPoly<R> {
    pub fn new(ring: &R, c: Vec<R::Elem>) -> Self {
        let mut out = TwistedPoly { ring: ring.clone(), c };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| self.ring.is_zero(x)) {
            self.c.pop();
        }
    }

    pub fn zero(ring: &R) -> Self {
        TwistedPoly { ring: ring.clone(), c: Vec::new() }
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &R, a: R::Elem) -> Self {
        Self::new(ring, vec![a])
    }

    /// τ^k.
    pub fn tau(ring: &R, k: usize) -> Self {
        let mut c = vec![ring.zero(); k + 1];
        c[k] = ring.one();
        Self::new(ring, c)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.c
    }

    /// Coefficient of τ^k (zero outside the stored range, including negative k).
    pub fn coeff(&self, k: i64) -> R::Elem {
        if k < 0 {
            return self.ring.zero();
        }
        self.c.get(k as usize).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// τ-degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.ring.add(&self.coeff(k as i64), &o.coeff(k as i64))).collect();
        Self::new(&self.ring, c)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ring, self.c.iter().map(|x| self.ring.neg(x)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Left multiplication by a scalar of R.
    pub fn scale_left(&self, a: &R::Elem) -> Self {
        Self::new(&self.ring, self.c.iter().map(|x| self.ring.mul(a, x)).collect())
    }

    /// (UV)_k = Σ_i U_i · V_(k−i)^(q^i).
    pub fn tmul(&self, o: &Self) -> Result<Self> {
        self.tmul_trunc(o, usize::MAX)
    }

    /// Product keeping only τ-degrees ≤ kmax.
    pub fn tmul_trunc(&self, o: &Self, kmax: usize) -> Result<Self> {
        if !self.ring.same_ring(&o.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let n = (self.c.len() + o.c.len() - 1).min(kmax.saturating_add(1));
        let mut c = vec![self.ring.zero(); n];
        for (i, u) in self.c.iter().enumerate().take(n) {
            if self.ring.is_zero(u) {
                continue;
            }
            for (j, v) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if self.ring.is_zero(v) {
                    continue;
                }
                let t = self.ring.mul(u, &self.ring.frob(v, i as u32));
                c[i + j] = self.ring.add(&c[i + j], &t);
            }
        }
        Ok(Self::new(&self.ring, c))
    }

    /// a(U) for a ∈ A by Horner, truncated at τ-degree kmax (F_q coefficients commute with τ).
    pub fn eval_poly_at(&self, a: &Poly, kmax: usize) -> Self {
        let mut acc = Self::zero(&self.ring);
        for &c in a.coeffs().iter().rev() {
            acc = self.tmul_trunc(&acc, kmax).expect("same ring");
            let cst = Self::constant(&self.ring, self.ring.scale(&self.ring.one(), c));
            acc = acc.add(&cst);
        }
        acc
    }

    /// Applies a ring map coefficient-wise.
    pub fn map<S: CoeffRing>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> TwistedPoly<S> {
        TwistedPoly::new(target, self.c.iter().map(f).collect())
    }
}

impl TwistedPoly<PolyRing> {
    /// Reduction modulo f: coefficient-wise remainders, trailing zeros stripped.
    pub fn reduce_mod(&self, ring: &ResidueRing) -> TwistedPoly<ResidueRing> {
        self.map(ring, |c| ring.from_poly(c))
    }

    /// Evaluates the additive polynomial Σ c_k x^(q^k) as a sparse map exponent → coefficient.
    pub fn additive_terms(&self) -> Vec<(u64, Poly)> {
        let q = self.ring.field().size() as u64;
        self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (q.pow(k as u32), c.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    #[test]
    fn defining_relation() {
        let f = FiniteField::prime(3).unwrap();
        let ring = PolyRing::new(&f);
        let t = Poly::theta(&f);
        let tau = TwistedPoly::tau(&ring, 1);
        let th = TwistedPoly::constant(&ring, t.clone());
        assert_eq!(tau.tmul(&th).unwrap(), TwistedPoly::new(&ring, vec![Poly::zero(&f), t.pow(3)]));
        // (θ+τ)² = θ² + (θ^q+θ)τ + τ²
        let c = th.add(&tau);
        let sq = c.tmul(&c).unwrap();
        assert_eq!(sq, TwistedPoly::new(&ring, vec![t.pow(2), &t.pow(3) + &t, Poly::one(&f)]));
        assert_eq!(c.tmul(&TwistedPoly::one(&ring)).unwrap(), c);
    }

    #[test]
    fn residue_frobenius_matches_power() {
        let f = FiniteField::prime(5).unwrap();
        let m = Poly::from_ints(&f, &[2, 0, 1, 1]); // irreducible? check below
        assert!(crate::algebra::factor::is_irreducible(&m).unwrap());
        let ring = ResidueRing::new(&m).unwrap();
        let a = Poly::from_ints(&f, &[1, 3, 4]);
        assert_eq!(ring.frob(&a, 2), a.pow_mod(25, &m));
    }

    #[test]
    fn ring_mismatch() {
        let f = FiniteField::prime(2).unwrap();
        let r1 = ResidueRing::new(&Poly::from_ints(&f, &[1, 1, 1])).unwrap();
        let r2 = ResidueRing::new(&Poly::from_ints(&f, &[1, 1])).unwrap();
        let u = TwistedPoly::one(&r1);
        let v = TwistedPoly::one(&r2);
        assert_eq!(u.tmul(&v).unwrap_err(), Error::RingMismatch);
    }
}
