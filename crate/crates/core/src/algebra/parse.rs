//! Text grammar for polynomials: `T` (the variable θ), `x`, `z`, the field generator `u`,
//! integer coefficients, `+ - * ^ /` and parentheses. Examples: `T^5+2*T^4`,
//! `(T^2+1)/(T^3+T)`, `x^2+T*x`.

use std::collections::BTreeMap;

use super::field::{Fe, Field};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::xpoly::XPoly;
use crate::error::{Error, Result};

const VARS: [char; 4] = ['T', 'x', 'z', 'u'];

/// Sparse polynomial over F_p in (T, x, z, u).
#[derive(Clone, Debug, PartialEq)]
struct MPoly {
    p: u32,
    terms: BTreeMap<[u64; 4], u32>,
}

impl MPoly {
    fn constant(p: u32, c: u64) -> MPoly {
        let mut terms = BTreeMap::new();
        let c = (c % p as u64) as u32;
        if c != 0 {
            terms.insert([0; 4], c);
        }
        MPoly { p, terms }
    }

    fn var(p: u32, i: usize) -> MPoly {
        let mut e = [0; 4];
        e[i] = 1;
        MPoly { p, terms: BTreeMap::from([(e, 1)]) }
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (k, &v) in &o.terms {
            let e = out.terms.entry(*k).or_insert(0);
            *e = (*e + v) % self.p;
            if *e == 0 {
                out.terms.remove(k);
            }
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly { p: self.p, terms: self.terms.iter().map(|(k, &v)| (*k, (self.p - v) % self.p)).collect() }
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly { p: self.p, terms: BTreeMap::new() };
        for (k1, &v1) in &self.terms {
            for (k2, &v2) in &o.terms {
                let k = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3]];
                let e = out.terms.entry(k).or_insert(0);
                *e = ((*e as u64 + v1 as u64 * v2 as u64) % self.p as u64) as u32;
                if *e == 0 {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }

    fn pow(&self, mut e: u64) -> MPoly {
        let mut acc = MPoly::constant(self.p, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn uses(&self, var: usize) -> bool {
        self.terms.keys().any(|k| k[var] > 0)
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; 4]) == Some(&1)
    }
}

/// A parsed value num/den.
#[derive(Clone, Debug)]
struct Frac {
    num: MPoly,
    den: MPoly,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    p: u32,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add_frac(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = add_frac(&acc, &Frac { num: t.num.neg(), den: t.den });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = Frac { num: acc.num.mul(&t.num), den: acc.den.mul(&t.den) };
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let t = self.unary()?;
                    if t.num.terms.is_empty() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = Frac { num: acc.num.mul(&t.den), den: acc.den.mul(&t.num) };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(Frac { num: v.num.neg(), den: v.den });
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(Frac { num: base.num.pow(e), den: base.den.pow(e) });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        let one = MPoly::constant(self.p, 1);
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Frac { num: MPoly::constant(self.p, v), den: one })
            }
            Some(c) => {
                if let Some(i) = VARS.iter().position(|&v| v as u8 == c) {
                    self.pos += 1;
                    Ok(Frac { num: MPoly::var(self.p, i), den: one })
                } else {
                    self.err(format!("unexpected character '{}'", c as char))
                }
            }
            None => self.err("unexpected end of input"),
        }
    }
}

fn add_frac(a: &Frac, b: &Frac) -> Frac {
    if a.den == b.den {
        return Frac { num: a.num.add(&b.num), den: a.den.clone() };
    }
    Frac { num: a.num.mul(&b.den).add(&b.num.mul(&a.den)), den: a.den.mul(&b.den) }
}

fn parse_frac(field: &Field, s: &str) -> Result<Frac> {
    let mut parser = Parser { s: s.as_bytes(), pos: 0, p: field.characteristic() };
    let v = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    Ok(v)
}

/// Collects an MPoly without x, z into a polynomial in T with u evaluated in `field`.
fn to_poly(field: &Field, m: &MPoly) -> Result<Poly> {
    if m.uses(1) || m.uses(2) {
        return Err(Error::Parse { pos: 0, msg: "unexpected variable x or z".into() });
    }
    let u = field.u();
    let mut coeffs: Vec<Fe> = Vec::new();
    for (k, &c) in &m.terms {
        let deg = k[0] as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Fe::ZERO);
        }
        let term = field.mul(field.from_int(c as i64), field.pow(u, k[3]));
        coeffs[deg] = field.add(coeffs[deg], term);
    }
    Ok(Poly::from_coeffs(field, coeffs))
}

/// Splits an MPoly by powers of `var` into polynomials in T.
fn split_by(field: &Field, m: &MPoly, var: usize) -> Result<BTreeMap<u64, Poly>> {
    let mut parts: BTreeMap<u64, MPoly> = BTreeMap::new();
    for (k, &c) in &m.terms {
        let mut k2 = *k;
        let e = k2[var];
        k2[var] = 0;
        parts.entry(e).or_insert_with(|| MPoly { p: m.p, terms: BTreeMap::new() }).terms.insert(k2, c);
    }
    parts.into_iter().map(|(e, mp)| Ok((e, to_poly(field, &mp)?))).filter(|r| r.as_ref().map_or(true, |(_, p)| !p.is_zero())).collect()
}

/// Parses an element of A = F_q[T].
pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let fr = parse_frac(field, s)?;
    let num = to_poly(field, &fr.num)?;
    let den = to_poly(field, &fr.den)?;
    if den.degree() != Some(0) {
        return Err(Error::Parse { pos: 0, msg: "expected a polynomial, found a fraction".into() });
    }
    Ok(num.scale(field.inv(den.lead()).expect("nonzero")))
}

/// Parses an element of K = F_q(T).
pub fn parse_ratfunc(field: &Field, s: &str) -> Result<RatFunc> {
    let fr = parse_frac(field, s)?;
    let num = to_poly(field, &fr.num)?;
    let den = to_poly(field, &fr.den)?;
    RatFunc::new(num, den).map_err(|_| Error::Parse { pos: 0, msg: "zero denominator".into() })
}

/// Parses a polynomial in x with coefficients in K (denominators may not involve x).
pub fn parse_xpoly(field: &Field, s: &str) -> Result<XPoly> {
    let fr = parse_frac(field, s)?;
    if fr.num.uses(2) || fr.den.uses(2) {
        return Err(Error::Parse { pos: 0, msg: "unexpected variable z".into() });
    }
    if fr.den.uses(1) {
        return Err(Error::Parse { pos: 0, msg: "x may not appear in a denominator".into() });
    }
    let den = to_poly(field, &fr.den)?;
    let parts = split_by(field, &fr.num, 1)?;
    Ok(XPoly::from_terms(
        field,
        parts.into_iter().map(|(e, p)| (e, RatFunc::new(p, den.clone()).expect("nonzero denominator"))),
    ))
}

/// Parses a field element written in u (e.g. `u+1`).
pub fn parse_fe(field: &Field, s: &str) -> Result<Fe> {
    let p = parse_poly(field, s)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::Parse { pos: 0, msg: "expected a constant".into() });
    }
    Ok(p.coeff(0))
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(field: &Field, s: &str) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        out.push(parse_poly(field, part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Sanity: a parsed constant numerator.
#[allow(dead_code)]
fn is_unit_den(f: &Frac) -> bool {
    f.den.is_one()
}
