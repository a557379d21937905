//! Polynomials in x over K, stored sparsely (exponent → coefficient).
//!
//! Star-operation results have x-degrees like 2·q^i with few nonzero terms,
//! so the map keeps only nonzero coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Fe, Field};
use super::poly::Poly;
use super::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct XPoly {
    field: Field,
    terms: BTreeMap<u64, RatFunc>,
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&e, c)| {
                let cs = c.to_string();
                let mon = match e {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{e}"),
                };
                if e == 0 {
                    cs
                } else if cs == "1" {
                    mon
                } else if c.is_integral() && c.num().coeffs().iter().filter(|v| !v.is_zero()).count() == 1 {
                    format!("{cs}*{mon}")
                } else {
                    format!("({cs})*{mon}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl XPoly {
    pub fn zero(field: &Field) -> XPoly {
        XPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> XPoly {
        XPoly::monomial(RatFunc::one(field), 0)
    }

    /// The variable x.
    pub fn x(field: &Field) -> XPoly {
        XPoly::monomial(RatFunc::one(field), 1)
    }

    pub fn monomial(c: RatFunc, e: u64) -> XPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        XPoly { field, terms }
    }

    pub fn constant(c: RatFunc) -> XPoly {
        XPoly::monomial(c, 0)
    }

    pub fn from_terms(field: &Field, it: impl IntoIterator<Item = (u64, RatFunc)>) -> XPoly {
        let mut out = XPoly::zero(field);
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    /// Polynomial in x with coefficients in A.
    pub fn from_poly_terms(field: &Field, it: impl IntoIterator<Item = (u64, Poly)>) -> XPoly {
        XPoly::from_terms(field, it.into_iter().map(|(e, p)| (e, RatFunc::from(p))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<u64, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, e: u64) -> RatFunc {
        self.terms.get(&e).cloned().unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// x-degree; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every coefficient lies in A.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(RatFunc::is_integral)
    }

    /// Coefficients as polynomials, if integral.
    pub fn integral_terms(&self) -> Option<BTreeMap<u64, Poly>> {
        self.terms.iter().map(|(&e, c)| c.is_integral().then(|| (e, c.num().clone()))).collect()
    }

    pub fn add_term(&mut self, e: u64, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add_rf(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_x(&self, o: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg_x(&self) -> XPoly {
        XPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&e, c)| (e, c.neg_rf())).collect() }
    }

    pub fn sub_x(&self, o: &XPoly) -> XPoly {
        self.add_x(&o.neg_x())
    }

    pub fn mul_x(&self, o: &XPoly) -> XPoly {
        let mut out = XPoly::zero(&self.field);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &o.terms {
                out.add_term(e1 + e2, &c1.mul_rf(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(&self.field);
        }
        XPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&e, v)| (e, v.mul_rf(c))).collect() }
    }

    pub fn scale_poly(&self, c: &Poly) -> XPoly {
        self.scale(&RatFunc::from(c.clone()))
    }

    pub fn scale_fe(&self, c: Fe) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(&self.field);
        }
        XPoly { field: self.field.clone(), terms: self.terms.iter().map(|(&e, v)| (e, v.scale(c))).collect() }
    }

    /// self^(p^e): coefficients raised to p^e, exponents multiplied by p^e.
    pub fn pow_char_power(&self, e: u32) -> XPoly {
        if e == 0 {
            return self.clone();
        }
        let pe = (self.field.characteristic() as u64).pow(e);
        XPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k * pe, c.pow_char_power(e))).collect(),
        }
    }

    /// self^n, using the base-p digits of n and Frobenius for the digit powers.
    pub fn pow(&self, n: u64) -> XPoly {
        let p = self.field.characteristic() as u64;
        let mut acc = XPoly::one(&self.field);
        let mut m = n;
        let mut t = 0u32;
        while m > 0 {
            let digit = m % p;
            if digit > 0 {
                let fr = self.pow_char_power(t);
                for _ in 0..digit {
                    acc = acc.mul_x(&fr);
                }
            }
            m /= p;
            t += 1;
        }
        acc
    }

    /// self(inner(x)).
    pub fn compose(&self, inner: &XPoly) -> XPoly {
        let mut out = XPoly::zero(&self.field);
        for (&e, c) in &self.terms {
            out = out.add_x(&inner.pow(e).scale(c));
        }
        out
    }

    /// Multiply every coefficient by a polynomial and map exponents by a closure.
    pub fn map_terms(&self, mut f: impl FnMut(u64, &RatFunc) -> (u64, RatFunc)) -> XPoly {
        XPoly::from_terms(&self.field, self.terms.iter().map(|(&e, c)| f(e, c)))
    }

    /// Monic lcm of the coefficient denominators.
    pub fn common_denominator(&self) -> Poly {
        self.terms.values().fold(Poly::one(&self.field), |acc, c| {
            let g = acc.gcd(c.den());
            (&acc * c.den()).div_exact(&g).expect("gcd divides")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;

    #[test]
    fn compose_and_power() {
        let f = FiniteField::prime(3).unwrap();
        let t = RatFunc::from(Poly::theta(&f));
        // inner = T x + x^3
        let inner = XPoly::from_terms(&f, [(1, t.clone()), (3, RatFunc::one(&f))]);
        let sq = XPoly::x(&f).pow(2).compose(&inner);
        assert_eq!(sq, inner.mul_x(&inner));
        assert_eq!(inner.pow(4), inner.mul_x(&inner).mul_x(&inner).mul_x(&inner));
    }

    #[test]
    fn display() {
        let f = FiniteField::prime(5).unwrap();
        let p = XPoly::from_poly_terms(&f, [(5, Poly::from_ints(&f, &[2])), (1, Poly::from_ints(&f, &[1, 1]))]);
        assert_eq!(p.to_string(), "2*x^5+(T+1)*x");
    }
}
