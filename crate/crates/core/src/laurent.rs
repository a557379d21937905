//! Truncated Laurent series in θ^(-1/e) with a tracked absolute error.
//!
//! A series stores the coefficients of θ^(m/e) for a contiguous window of
//! exponents m. When `err` is `Some(E)` the true value differs from the stored
//! one by at most q^(E/e), and nothing at or below exponent E is kept.

use std::fmt;

use crate::algebra::{Fe, Field, FieldCtx, Poly, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    e: u32,
    low: i64,
    coeffs: Vec<Fe>,
    err: Option<i64>,
}

/// Size of a series (or of a difference of series), in units of 1/e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Magnitude {
    /// Exactly zero.
    Zero,
    /// |s| = q^(m/e).
    Exact(i64),
    /// Indistinguishable from zero: |s| ≤ q^(E/e).
    AtMost(i64),
}

impl Magnitude {
    /// Upper bound exponent; `None` for exact zero.
    pub fn upper(self) -> Option<i64> {
        match self {
            Magnitude::Zero => None,
            Magnitude::Exact(m) | Magnitude::AtMost(m) => Some(m),
        }
    }

    /// True when the size is certainly ≤ q^(m/e).
    pub fn at_most(self, m: i64) -> bool {
        self.upper().is_none_or(|u| u <= m)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in self.terms().rev() {
            let cs = self.field.fmt_elem(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            let mon = if m == 0 {
                String::new()
            } else if self.e == 1 {
                format!("T^{m}")
            } else {
                format!("T^({m}/{})", self.e)
            };
            parts.push(match (mon.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mon,
                _ => format!("{cs}*{mon}"),
            });
        }
        if let Some(err) = self.err {
            parts.push(if self.e == 1 { format!("O(T^{err})") } else { format!("O(T^({err}/{}))", self.e) });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl LaurentSeries {
    /// Builds a series from (exponent, coefficient) pairs; terms at or below the error floor are dropped.
    pub fn new(field: &Field, e: u32, terms: impl IntoIterator<Item = (i64, Fe)>, err: Option<i64>) -> LaurentSeries {
        assert!(e >= 1, "ramification index must be positive");
        let mut pairs: Vec<(i64, Fe)> =
            terms.into_iter().filter(|&(m, c)| !c.is_zero() && err.is_none_or(|x| m > x)).collect();
        pairs.sort_by_key(|p| p.0);
        let mut out = LaurentSeries { field: field.clone(), e, low: 0, coeffs: Vec::new(), err };
        if let (Some(first), Some(last)) = (pairs.first(), pairs.last()) {
            out.low = first.0;
            out.coeffs = vec![Fe::ZERO; (last.0 - first.0 + 1) as usize];
            for (m, c) in pairs {
                let slot = &mut out.coeffs[(m - out.low) as usize];
                *slot = field.add(*slot, c);
            }
        }
        out.normalize();
        out
    }

    fn from_dense(field: &Field, e: u32, low: i64, coeffs: Vec<Fe>, err: Option<i64>) -> LaurentSeries {
        let mut out = LaurentSeries { field: field.clone(), e, low, coeffs, err };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if let Some(err) = self.err {
            let drop = (err + 1 - self.low).max(0) as usize;
            if drop > 0 {
                let drop = drop.min(self.coeffs.len());
                self.coeffs.drain(..drop);
                self.low += drop as i64;
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero(field: &Field, e: u32) -> LaurentSeries {
        LaurentSeries { field: field.clone(), e, low: 0, coeffs: Vec::new(), err: None }
    }

    pub fn constant(field: &Field, e: u32, c: Fe) -> LaurentSeries {
        LaurentSeries::monomial(field, e, c, 0)
    }

    /// c·θ^(m/e), exact.
    pub fn monomial(field: &Field, e: u32, c: Fe, m: i64) -> LaurentSeries {
        LaurentSeries::new(field, e, [(m, c)], None)
    }

    /// A polynomial in θ (coefficients in `field`), exact, with ramification e.
    pub fn from_poly(p: &Poly, e: u32) -> LaurentSeries {
        let terms = p.coeffs().iter().enumerate().map(|(i, &c)| (i as i64 * e as i64, c));
        LaurentSeries::new(p.field(), e, terms, None)
    }

    /// Embeds a polynomial over the base field F_q into the working field.
    pub fn embed_poly(ctx: &FieldCtx, p: &Poly, e: u32) -> LaurentSeries {
        let terms = p.coeffs().iter().enumerate().map(|(i, &c)| (i as i64 * e as i64, ctx.embed(c)));
        LaurentSeries::new(&ctx.ext, e, terms, None)
    }

    /// Expansion of r ∈ K at ∞ with error ≤ q^(-prec/e).
    pub fn embed(ctx: &FieldCtx, r: &RatFunc, e: u32, prec: i64) -> LaurentSeries {
        let num = LaurentSeries::embed_poly(ctx, r.num(), e);
        if r.is_zero() {
            return LaurentSeries::zero(&ctx.ext, e);
        }
        if r.den().is_one() {
            return num;
        }
        let den = LaurentSeries::embed_poly(ctx, r.den(), e);
        // 1/den needs precision compensated by |num|
        let lead = num.lead().expect("nonzero");
        let inv = den.inv(-prec - lead).expect("exact nonzero denominator");
        num.mul(&inv).truncate(-prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn err(&self) -> Option<i64> {
        self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_none()
    }

    /// Stored terms, ascending exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, Fe)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.low + i as i64, c))
    }

    pub fn coeff(&self, m: i64) -> Fe {
        if m < self.low {
            return Fe::ZERO;
        }
        self.coeffs.get((m - self.low) as usize).copied().unwrap_or(Fe::ZERO)
    }

    /// Exponent of the leading (largest) stored term.
    pub fn lead(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn magnitude(&self) -> Magnitude {
        match (self.lead(), self.err) {
            (Some(m), _) => Magnitude::Exact(m),
            (None, Some(err)) => Magnitude::AtMost(err),
            (None, None) => Magnitude::Zero,
        }
    }

    /// Coarsens the error floor to at least q^(floor/e).
    pub fn truncate(&self, floor: i64) -> LaurentSeries {
        let err = Some(self.err.map_or(floor, |e| e.max(floor)));
        LaurentSeries::from_dense(&self.field, self.e, self.low, self.coeffs.clone(), err)
    }

    /// Re-expresses the series with ramification index e·k.
    pub fn rescale(&self, new_e: u32) -> Result<LaurentSeries> {
        if !new_e.is_multiple_of(self.e) {
            return Err(Error::InvalidArgument(format!("cannot rescale e={} to e={new_e}", self.e)));
        }
        let k = (new_e / self.e) as i64;
        let terms = self.terms().map(|(m, c)| (m * k, c));
        Ok(LaurentSeries::new(&self.field, new_e, terms, self.err.map(|x| x * k)))
    }

    fn check(&self, o: &LaurentSeries) {
        assert_eq!(self.e, o.e, "ramification mismatch");
        assert!(std::sync::Arc::ptr_eq(&self.field, &o.field) || self.field == o.field, "field mismatch");
    }

    fn err_max(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        self.check(o);
        let err = Self::err_max(self.err, o.err);
        if self.coeffs.is_empty() {
            return LaurentSeries::from_dense(&o.field, o.e, o.low, o.coeffs.clone(), err);
        }
        if o.coeffs.is_empty() {
            return LaurentSeries::from_dense(&self.field, self.e, self.low, self.coeffs.clone(), err);
        }
        let low = self.low.min(o.low);
        let high = self.lead().unwrap().max(o.lead().unwrap());
        let mut c = vec![Fe::ZERO; (high - low + 1) as usize];
        for (s, src) in [(self.low, &self.coeffs), (o.low, &o.coeffs)] {
            for (i, &v) in src.iter().enumerate() {
                let slot = &mut c[(s - low) as usize + i];
                *slot = self.field.add(*slot, v);
            }
        }
        LaurentSeries::from_dense(&self.field, self.e, low, c, err)
    }

    pub fn neg(&self) -> LaurentSeries {
        let c = self.coeffs.iter().map(|&v| self.field.neg(v)).collect();
        LaurentSeries::from_dense(&self.field, self.e, self.low, c, self.err)
    }

    pub fn sub(&self, o: &LaurentSeries) -> LaurentSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: Fe) -> LaurentSeries {
        let v = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        LaurentSeries::from_dense(&self.field, self.e, self.low, v, self.err)
    }

    /// Multiplication by θ^(m/e).
    pub fn shift(&self, m: i64) -> LaurentSeries {
        LaurentSeries::from_dense(&self.field, self.e, self.low + m, self.coeffs.clone(), self.err.map(|x| x + m))
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        self.check(o);
        // (A+εa)(B+εb) - AB = Aεb + Bεa + εaεb
        let mut err: Option<i64> = None;
        let mut bump = |x: Option<i64>| err = Self::err_max(err, x);
        if let Some(eb) = o.err {
            bump(self.lead().map(|l| l + eb));
            if let Some(ea) = self.err {
                bump(Some(ea + eb));
            }
        }
        if let Some(ea) = self.err {
            bump(o.lead().map(|l| l + ea));
        }
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            let mut z = LaurentSeries::zero(&self.field, self.e);
            z.err = err;
            return z;
        }
        let low = self.low + o.low;
        let len = self.coeffs.len() + o.coeffs.len() - 1;
        // skip everything at or below the floor
        let start = err.map_or(0, |x| (x + 1 - low).max(0) as usize).min(len);
        let f = &self.field;
        let mut c = vec![Fe::ZERO; len - start];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let j0 = start.saturating_sub(i);
            for (j, &b) in o.coeffs.iter().enumerate().skip(j0) {
                if !b.is_zero() {
                    let slot = &mut c[i + j - start];
                    *slot = f.add(*slot, f.mul(a, b));
                }
            }
        }
        LaurentSeries::from_dense(f, self.e, low + start as i64, c, err)
    }

    /// 1/self with error ≤ q^(floor/e) (or the propagated input error if larger).
    pub fn inv(&self, floor: i64) -> Result<LaurentSeries> {
        let l = self.lead().ok_or_else(|| Error::Precision("series is indistinguishable from zero".into()))?;
        let err = match self.err {
            Some(e0) => (e0 - 2 * l).max(floor),
            None => floor,
        };
        let f = &self.field;
        let top = *self.coeffs.last().unwrap();
        let ic = f.inv(top).expect("nonzero lead");
        // result exponents -l, -l-1, ..., down to err+1
        let n = (-l - err).max(0) as usize;
        let mut b: Vec<Fe> = Vec::with_capacity(n);
        let len = self.coeffs.len();
        for k in 0..n {
            if k == 0 {
                b.push(ic);
                continue;
            }
            let mut s = Fe::ZERO;
            for i in 1..=k.min(len - 1) {
                let a = self.coeffs[len - 1 - i];
                if !a.is_zero() {
                    s = f.add(s, f.mul(a, b[k - i]));
                }
            }
            b.push(f.neg(f.mul(ic, s)));
        }
        b.reverse();
        let low = -l - n as i64 + 1;
        Ok(LaurentSeries::from_dense(f, self.e, low, b, Some(err)))
    }

    pub fn div(&self, o: &LaurentSeries, floor: i64) -> Result<LaurentSeries> {
        let lead = self.lead().unwrap_or(0);
        Ok(self.mul(&o.inv(floor - lead)?).truncate(floor))
    }

    /// self^p, using that Frobenius is additive: (A+ε)^p = A^p + ε^p.
    pub fn frobenius(&self) -> LaurentSeries {
        let p = self.field.characteristic() as i64;
        let terms = self.terms().map(|(m, c)| (m * p, self.field.pow(c, p as u64)));
        LaurentSeries::new(&self.field, self.e, terms, self.err.map(|x| x * p))
    }

    /// self^(p^t).
    pub fn frobenius_pow(&self, t: u32) -> LaurentSeries {
        (0..t).fold(self.clone(), |acc, _| acc.frobenius())
    }

    pub fn pow(&self, mut n: u64) -> LaurentSeries {
        let mut acc = LaurentSeries::constant(&self.field, self.e, Fe::ONE);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Size of self − other.
    pub fn distance(&self, o: &LaurentSeries) -> Magnitude {
        self.sub(o).magnitude()
    }

    /// Polynomial part and the size of the fractional remainder (e = 1 only).
    pub fn nearest_a(&self) -> Result<(Poly, Magnitude)> {
        if self.e != 1 {
            return Err(Error::InvalidArgument("nearest_A needs an unramified series".into()));
        }
        let poly_terms: Vec<Fe> = (0..=self.lead().unwrap_or(-1).max(-1)).map(|m| self.coeff(m)).collect();
        let a = Poly::from_coeffs(&self.field, poly_terms);
        let rest = LaurentSeries::new(&self.field, 1, self.terms().filter(|&(m, _)| m < 0), self.err);
        Ok((a, rest.magnitude()))
    }
}

/// The coefficient c used for ζ = c·θ^(1/(q−1)): the first element (in code order) with c^(q−1) = −1.
pub fn root_of_minus_one(field: &Field, q: u64) -> Option<Fe> {
    let minus_one = field.neg(Fe::ONE);
    field.elements().find(|&c| field.pow(c, q - 1) == minus_one)
}

/// ζ = (−θ)^(1/(q−1)) as an exact series with e = q−1.
pub fn ramified_root_theta(ctx: &FieldCtx) -> Result<LaurentSeries> {
    let q = ctx.q();
    let c = root_of_minus_one(&ctx.ext, q).ok_or_else(|| Error::ExtensionTooSmall(format!("no (q-1)-th root of -1 in F_{}; raise --k", ctx.ext.size())))?;
    Ok(LaurentSeries::monomial(&ctx.ext, (q - 1) as u32, c, 1))
}

/// A root ξ of C_(θ+c)(x)/x = x^(q−1) + θ + c, as ζ·∏_s (1 + (c/θ)^(q^s))^(−1).
pub fn torsion_root_deg1(ctx: &FieldCtx, c: Fe, prec: i64) -> Result<LaurentSeries> {
    let zeta = ramified_root_theta(ctx)?;
    if c.is_zero() {
        return Ok(zeta);
    }
    let e = zeta.e();
    let ext = &ctx.ext;
    let cc = ctx.embed(c);
    let mut acc = zeta;
    let q = ctx.q();
    let mut qs = 1u64;
    // (c/θ)^(q^s) has size q^(-q^s); stop once that is below the requested floor
    while (qs as i64) * (e as i64) <= prec + e as i64 {
        let term = LaurentSeries::monomial(ext, e, ext.pow(cc, qs), -(qs as i64) * e as i64);
        let factor = LaurentSeries::constant(ext, e, Fe::ONE).add(&term);
        acc = acc.mul(&factor.inv(-prec - e as i64)?).truncate(-prec);
        qs = qs.saturating_mul(q);
    }
    Ok(acc.truncate(-prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64, k: u32) -> FieldCtx {
        FieldCtx::from_q(q, k).unwrap()
    }

    #[test]
    fn embed_geometric() {
        let c = ctx(2, 1);
        let f = &c.base;
        let t = Poly::theta(f);
        let den = &t - &t.pow(2);
        let r = RatFunc::new(Poly::one(f), den).unwrap();
        let s = LaurentSeries::embed(&c, &r, 1, 4);
        let expect = LaurentSeries::new(&c.ext, 1, [(-2, Fe::ONE), (-3, Fe::ONE), (-4, Fe::ONE)], Some(-5));
        assert_eq!(s.truncate(-4), expect.truncate(-4));
        assert_eq!(s.err(), Some(-4));
        assert_eq!(s.to_string(), "T^-2 + T^-3 + O(T^-4)");
        assert!(LaurentSeries::embed(&c, &RatFunc::from(t), 1, 4).is_exact());
        assert_eq!(LaurentSeries::embed(&c, &RatFunc::zero(f), 1, 4).magnitude(), Magnitude::Zero);
    }

    #[test]
    fn arithmetic_and_errors() {
        let c = ctx(3, 1);
        let f = &c.base;
        let a = Poly::from_ints(f, &[1, 2, 0, 1]);
        let ea = LaurentSeries::embed_poly(&c, &a, 1);
        let inv = LaurentSeries::embed(&c, &RatFunc::new(Poly::one(f), a.clone()).unwrap(), 1, 20);
        let prod = ea.mul(&inv);
        assert_eq!(prod.distance(&LaurentSeries::constant(&c.ext, 1, Fe::ONE)), Magnitude::AtMost(-17));
        let s = inv.sub(&inv);
        assert_eq!(s.magnitude(), Magnitude::AtMost(-20));
        let blob = LaurentSeries::new(&c.ext, 1, [], Some(-3));
        assert!(matches!(blob.inv(-10), Err(Error::Precision(_))));
    }

    #[test]
    fn nearest_a_examples() {
        let c = ctx(5, 1);
        let s = LaurentSeries::new(&c.ext, 1, [(2, Fe::ONE), (-3, Fe::ONE)], Some(-40));
        let (a, d) = s.nearest_a().unwrap();
        assert_eq!(a, Poly::monomial(&c.ext, Fe::ONE, 2));
        assert_eq!(d, Magnitude::Exact(-3));
        let tail = LaurentSeries::new(&c.ext, 1, [(-1, Fe::ONE), (-2, Fe::ONE)], Some(-10));
        assert_eq!(tail.nearest_a().unwrap(), (Poly::zero(&c.ext), Magnitude::Exact(-1)));
    }

    #[test]
    fn zeta_relation() {
        for (q, k) in [(2u64, 1u32), (3, 2), (5, 2), (4, 1), (7, 2)] {
            let c = ctx(q, k);
            let z = ramified_root_theta(&c).unwrap();
            let lhs = z.pow(q - 1).add(&LaurentSeries::embed_poly(&c, &Poly::theta(&c.base), (q - 1) as u32));
            assert_eq!(lhs.magnitude(), Magnitude::Zero, "q={q}");
        }
        // F_5 itself has no 4th root of −1
        assert!(matches!(ramified_root_theta(&ctx(5, 1)), Err(Error::ExtensionTooSmall(_))));
    }

    #[test]
    fn torsion_root_relation() {
        let c = ctx(3, 2);
        let one = Fe::ONE;
        let xi = torsion_root_deg1(&c, one, 60).unwrap();
        let e = xi.e();
        // ξ^(q−1) + θ + 1 vanishes to precision
        let rel = xi
            .pow(2)
            .add(&LaurentSeries::embed_poly(&c, &Poly::from_ints(&c.base, &[1, 1]), e));
        assert!(rel.magnitude().at_most(-28 * e as i64), "{:?}", rel.magnitude());
    }
}
