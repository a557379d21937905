//! Dense univariate polynomials in T over a finite field (the ring A = F_q[T]).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

const KARATSUBA_CUTOFF: usize = 48;

/// A polynomial with coefficients ascending in T; no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    c: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(&self.field, &self.c, "T"))
    }
}

/// Formats coefficients in the text grammar, e.g. `T^5+2*T^4`.
pub(crate) fn format_poly(field: &Field, c: &[Fe], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let coef = field.fmt_elem(a);
        let compound = coef.contains('+');
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (i, a == Fe::ONE) {
            (0, _) => coef,
            (_, true) => mon,
            _ if compound => format!("({coef})*{mon}"),
            _ => format!("{coef}*{mon}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn trim(c: &mut Vec<Fe>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, a: Fe) -> Poly {
        Poly::from_coeffs(field, vec![a])
    }

    /// The variable T.
    pub fn theta(field: &Field) -> Poly {
        Poly::monomial(field, Fe::ONE, 1)
    }

    /// c·T^n
    pub fn monomial(field: &Field, c: Fe, n: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut v = vec![Fe::ZERO; n + 1];
        v[n] = c;
        Poly { field: field.clone(), c: v }
    }

    pub fn from_coeffs(field: &Field, mut c: Vec<Fe>) -> Poly {
        trim(&mut c);
        Poly { field: field.clone(), c }
    }

    /// Coefficients given as integers in the prime subfield.
    pub fn from_ints(field: &Field, c: &[i64]) -> Poly {
        Poly::from_coeffs(field, c.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.c
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// Degree, with `None` standing for the degree −∞ of the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0 for zero).
    #[inline]
    pub fn len(&self) -> usize {
        self.c.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == Fe::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&Fe::ONE)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Valuation at T = 0 (index of the lowest nonzero coefficient).
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, a: Fe) -> Poly {
        if a.is_zero() {
            return Poly::zero(&self.field);
        }
        if a == Fe::ONE {
            return self.clone();
        }
        Poly { field: self.field.clone(), c: self.c.iter().map(|&x| self.field.mul(x, a)).collect() }
    }

    /// self · T^n
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fe::ZERO; n];
        v.extend_from_slice(&self.c);
        Poly { field: self.field.clone(), c: v }
    }

    pub fn make_monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    pub fn add_poly(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let (long, short) = if self.c.len() >= other.c.len() { (self, other) } else { (other, self) };
        let mut v = long.c.clone();
        if f.is_prime_field() {
            let p = f.characteristic();
            for (x, &y) in v.iter_mut().zip(&short.c) {
                let s = x.0 + y.0;
                x.0 = if s >= p { s - p } else { s };
            }
        } else {
            for (x, &y) in v.iter_mut().zip(&short.c) {
                *x = f.add(*x, y);
            }
        }
        Poly::from_coeffs(f, v)
    }

    pub fn neg_poly(&self) -> Poly {
        Poly { field: self.field.clone(), c: self.c.iter().map(|&x| self.field.neg(x)).collect() }
    }

    pub fn sub_poly(&self, other: &Poly) -> Poly {
        self.add_poly(&other.neg_poly())
    }

    pub fn mul_poly(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::from_coeffs(&self.field, mul_slices(&self.field, &self.c, &other.c))
    }

    pub fn square(&self) -> Poly {
        self.mul_poly(self)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// self^(p^e) where p is the characteristic: Σ c_i^(p^e) T^(i·p^e).
    pub fn pow_char_power(&self, e: u32) -> Poly {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let pe = (f.characteristic() as u64).pow(e);
        let deg = self.c.len() - 1;
        let mut v = vec![Fe::ZERO; deg * pe as usize + 1];
        for (i, &a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                v[i * pe as usize] = f.pow(a, pe);
            }
        }
        Poly { field: f.clone(), c: v }
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < d.c.len() {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let (q, r) = divrem_slices(&self.field, &self.c, &d.c);
        Ok((Poly::from_coeffs(&self.field, q), Poly::from_coeffs(&self.field, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// (g, s, t) with s·self + t·other = g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub_poly(&q.mul_poly(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub_poly(&q.mul_poly(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.lead()) {
            Some(i) => (r0.scale(i), s0.scale(i), t0.scale(i)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo m, if it exists.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(m);
        g.is_one().then(|| s.rem(m).expect("nonzero modulus"))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul_poly(other).rem(m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.c.iter().rev().fold(Fe::ZERO, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, f.from_int(i as i64))).collect();
        Poly::from_coeffs(f, c)
    }

    /// self(other(T)).
    pub fn compose(&self, other: &Poly) -> Poly {
        let f = &self.field;
        self.c.iter().rev().fold(Poly::zero(f), |acc, &a| acc.mul_poly(other).add_poly(&Poly::constant(f, a)))
    }

    /// Integer code of a monic polynomial: Σ_{i<deg} code(c_i)·s^i, s the field size.
    pub fn monic_code(&self) -> u64 {
        let s = self.field.size() as u64;
        let d = self.c.len().saturating_sub(1);
        self.c[..d].iter().rev().fold(0u64, |acc, x| acc * s + x.0 as u64)
    }

    /// Monic polynomial of degree `deg` with the given code (inverse of [`Poly::monic_code`]).
    pub fn from_monic_code(field: &Field, deg: usize, mut code: u64) -> Poly {
        let s = field.size() as u64;
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push(Fe((code % s) as u32));
            code /= s;
        }
        v.push(Fe::ONE);
        Poly { field: field.clone(), c: v }
    }
}

/// Product of coefficient slices (both nonempty).
pub(crate) fn mul_slices(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if f.is_prime_field() {
        let p = f.characteristic();
        let (a, b) = (as_u32(a), as_u32(b));
        let out = if a.len().min(b.len()) >= KARATSUBA_CUTOFF { karatsuba(a, b, p) } else { mul_school_prime(a, b, p) };
        from_u32(out)
    } else {
        let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }
}

#[inline]
pub(crate) fn as_u32(a: &[Fe]) -> &[u32] {
    // SAFETY: Fe is repr(transparent) over u32.
    unsafe { std::slice::from_raw_parts(a.as_ptr() as *const u32, a.len()) }
}

#[inline]
pub(crate) fn from_u32(v: Vec<u32>) -> Vec<Fe> {
    let mut v = std::mem::ManuallyDrop::new(v);
    // SAFETY: Fe is repr(transparent) over u32, so layout and allocation match.
    unsafe { Vec::from_raw_parts(v.as_mut_ptr() as *mut Fe, v.len(), v.capacity()) }
}

pub(crate) fn mul_school_prime(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (dst, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
            *dst += x * y as u64;
        }
    }
    let p = p as u64;
    acc.into_iter().map(|v| (v % p) as u32).collect()
}

fn add_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = *d + s;
        *d = if t >= p { t - p } else { t };
    }
}

fn sub_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s { *d - s } else { *d + p - s };
    }
}

/// Karatsuba over F_p on reduced coefficients. Result has length |a|+|b|-1.
fn karatsuba(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (la, lb) = (a.len(), b.len());
    if la.min(lb) < KARATSUBA_CUTOFF {
        return mul_school_prime(a, b, p);
    }
    // Unbalanced operands: split the longer one into chunks.
    if la > 2 * lb || lb > 2 * la {
        let (long, short) = if la > lb { (a, b) } else { (b, a) };
        let mut out = vec![0u32; la + lb - 1];
        for (k, chunk) in long.chunks(short.len()).enumerate() {
            let prod = karatsuba(chunk, short, p);
            add_into(&mut out[k * short.len()..], &prod, p);
        }
        return out;
    }
    let m = la.max(lb) / 2;
    let (a0, a1) = a.split_at(m.min(la));
    let (b0, b1) = b.split_at(m.min(lb));
    let z0 = karatsuba(a0, b0, p);
    let z2 = if a1.is_empty() || b1.is_empty() { Vec::new() } else { karatsuba(a1, b1, p) };
    let mut sa = a0.to_vec();
    sa.resize(a0.len().max(a1.len()), 0);
    add_into(&mut sa, a1, p);
    let mut sb = b0.to_vec();
    sb.resize(b0.len().max(b1.len()), 0);
    add_into(&mut sb, b1, p);
    let mut z1 = karatsuba(&sa, &sb, p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);
    let mut out = vec![0u32; la + lb - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1[..z1.len().min(la + lb - 1 - m)], p);
    if !z2.is_empty() {
        add_into(&mut out[2 * m..], &z2, p);
    }
    out
}

/// Long division; `b` nonempty with nonzero leading coefficient, |a| >= |b|.
pub(crate) fn divrem_slices(f: &Field, a: &[Fe], b: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let nq = a.len() - db;
    if f.is_prime_field() {
        let p = f.characteristic() as u64;
        let li = lead_inv.0 as u64;
        let b32 = as_u32(b);
        let mut r: Vec<u64> = as_u32(a).iter().map(|&x| x as u64).collect();
        let mut q = vec![0u32; nq];
        for t in (db..a.len()).rev() {
            let c = (r[t] % p) * li % p;
            q[t - db] = c as u32;
            if c != 0 {
                let m = p - c;
                for (dst, &y) in r[t - db..t].iter_mut().zip(&b32[..db]) {
                    *dst += m * y as u64;
                }
            }
        }
        let rem: Vec<u32> = r[..db].iter().map(|&v| (v % p) as u32).collect();
        let mut rem = from_u32(rem);
        trim(&mut rem);
        (from_u32(q), rem)
    } else {
        let mut r = a.to_vec();
        let mut q = vec![Fe::ZERO; nq];
        for t in (db..a.len()).rev() {
            let c = f.mul(r[t], lead_inv);
            q[t - db] = c;
            if !c.is_zero() {
                for j in 0..=db {
                    r[t - db + j] = f.sub(r[t - db + j], f.mul(c, b[j]));
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        (q, r)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_poly(rhs)
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.sub_poly(rhs)
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_poly()
    }
}
impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.add_poly(&rhs)
    }
}
impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.sub_poly(&rhs)
    }
}
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_poly(&rhs)
    }
}
impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;

    fn f2() -> Field {
        FiniteField::prime(2).unwrap()
    }

    #[test]
    fn display_grammar() {
        let f = FiniteField::prime(5).unwrap();
        let g = Poly::from_ints(&f, &[0, 0, 0, 0, 2, 1]);
        assert_eq!(g.to_string(), "T^5+2*T^4");
        assert_eq!(Poly::zero(&f).to_string(), "0");
        assert_eq!(Poly::from_ints(&f, &[3, 1]).to_string(), "T+3");
    }

    #[test]
    fn zero_degree_is_minus_infinity() {
        let f = f2();
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::one(&f).degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let f = FiniteField::prime(7).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 5, 6, 1, 2]);
        let b = Poly::from_ints(&f, &[3, 0, 5]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = FiniteField::prime(5).unwrap();
        let a: Vec<u32> = (0..300).map(|i| (i * 7 + 3) % 5).collect();
        let b: Vec<u32> = (0..170).map(|i| (i * i + 1) % 5).collect();
        assert_eq!(karatsuba(&a, &b, 5), mul_school_prime(&a, &b, 5));
        let _ = f;
    }

    #[test]
    fn extension_field_ops() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let u = f.u();
        let a = Poly::from_coeffs(&f, vec![u, Fe::ONE]);
        let b = Poly::from_coeffs(&f, vec![f.add(u, Fe::ONE), Fe::ONE]);
        let prod = &a * &b;
        // (T+u)(T+u+1) = T^2 + T + u(u+1) = T^2 + T + 1 in F_4
        assert_eq!(prod, Poly::from_ints(&f, &[1, 1, 1]));
        assert_eq!(a.to_string(), "T+u");
    }

    #[test]
    fn gcd_and_inverse() {
        let f = FiniteField::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let m = Poly::from_ints(&f, &[2, 1, 0, 1]);
        let inv = a.inv_mod(&m).unwrap();
        assert!(a.mul_mod(&inv, &m).is_one());
    }

    #[test]
    fn frobenius_power() {
        let f = FiniteField::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 1]);
        assert_eq!(a.pow_char_power(1), a.pow(3));
        assert_eq!(a.pow_char_power(2), a.pow(9));
    }

    #[test]
    fn monic_codes_roundtrip() {
        let f = FiniteField::prime(3).unwrap();
        for code in 0..27 {
            let a = Poly::from_monic_code(&f, 3, code);
            assert!(a.is_monic());
            assert_eq!(a.monic_code(), code);
        }
    }
}
