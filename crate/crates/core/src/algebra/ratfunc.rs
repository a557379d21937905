//! Rational functions num/den in K = F_q(T), kept in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fe, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        let den = Poly::one(p.field());
        RatFunc { num: p, den }
    }
}

impl RatFunc {
    /// Reduces num/den to lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let li = n.field().inv(d.lead()).expect("nonzero");
        if li != Fe::ONE {
            n = n.scale(li);
            d = d.scale(li);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Fe) -> RatFunc {
        RatFunc::from(Poly::constant(field, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Valuation-style degree deg num − deg den; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree()? as i64)
    }

    pub fn add_rf(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc::from(n);
            }
            return RatFunc::new(n, self.den.clone()).expect("nonzero den");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den).expect("nonzero den")
    }

    pub fn neg_rf(&self) -> RatFunc {
        RatFunc { num: self.num.neg_poly(), den: self.den.clone() }
    }

    pub fn sub_rf(&self, o: &RatFunc) -> RatFunc {
        self.add_rf(&o.neg_rf())
    }

    pub fn mul_rf(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        // Cross-cancel first to keep the gcds small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let li = num.field().inv(den.lead()).expect("nonzero");
        RatFunc { num: num.scale(li), den: den.scale(li) }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul_rf(&RatFunc::from(p.clone()))
    }

    pub fn scale(&self, c: Fe) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div_rf(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul_rf(&o.inv()?))
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// self^(p^e); Frobenius keeps the fraction reduced.
    pub fn pow_char_power(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow_char_power(e), den: self.den.pow_char_power(e) }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_rf(rhs)
    }
}
impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.sub_rf(rhs)
    }
}
impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_rf(rhs)
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_rf()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;

    #[test]
    fn lowest_terms_and_monic_den() {
        let f = FiniteField::prime(3).unwrap();
        let n = Poly::from_ints(&f, &[0, 2, 2]); // 2T^2+2T
        let d = Poly::from_ints(&f, &[0, 0, 2]); // 2T^2
        let r = RatFunc::new(n, d).unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&f, &[1, 1]));
        assert_eq!(r.den(), &Poly::from_ints(&f, &[0, 1]));
    }

    #[test]
    fn field_ops() {
        let f = FiniteField::prime(5).unwrap();
        let a = RatFunc::new(Poly::from_ints(&f, &[1, 2]), Poly::from_ints(&f, &[3, 0, 1])).unwrap();
        let b = RatFunc::new(Poly::from_ints(&f, &[4, 0, 1]), Poly::from_ints(&f, &[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let p = &a * &b;
        assert_eq!(p.div_rf(&b).unwrap(), a);
        assert_eq!(a.pow_char_power(1), a.pow(5));
    }

    #[test]
    fn zero_denominator_rejected() {
        let f = FiniteField::prime(2).unwrap();
        assert_eq!(RatFunc::new(Poly::one(&f), Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }
}
