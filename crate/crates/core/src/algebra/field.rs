//! Finite fields F_{p^m} in a flat representation.
//!
//! An element is encoded as the integer `Σ c_t p^t` of its coordinates in the
//! power basis of `F_p[u]/(M)`. Multiplication goes through discrete log/exp
//! tables, so the field size is capped at [`MAX_FIELD_SIZE`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size (table-driven multiplication).
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// A field element, identified by its coordinate code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Shared handle to a finite field.
pub type Field = Arc<FiniteField>;

/// Default moduli: for each (p, m) the first primitive monic polynomial of
/// degree m over F_p in code order (constant coefficient varying fastest).
/// Coefficients are listed in ascending order.
pub const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 17, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 18, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 19, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 20, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, 11, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (5, 4, &[2, 2, 1, 0, 1]),
    (5, 5, &[2, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
    (7, 1, &[2, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (7, 4, &[5, 3, 1, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[5, 1, 3, 0, 0, 0, 1]),
    (7, 7, &[2, 6, 0, 0, 0, 0, 0, 1]),
    (11, 1, &[3, 1]),
    (11, 2, &[7, 1, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (11, 5, &[4, 1, 1, 0, 0, 1]),
    (13, 1, &[2, 1]),
    (13, 2, &[2, 1, 1]),
    (13, 3, &[6, 1, 0, 1]),
    (13, 4, &[2, 1, 1, 0, 1]),
    (13, 5, &[2, 4, 0, 0, 0, 1]),
];

pub struct FiniteField {
    p: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    generator: Fe,
    /// exp[i] = g^i for 0 <= i < 2(size-1), doubled so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.degree, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// If `q` is a prime power `p^n`, returns `(p, n)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p as u32, n))
}

// Dense polynomials over F_p used only while bootstrapping a field.
mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * inv as u64 % p as u64) as u32;
            if c != 0 {
                for (t, &mt) in m.iter().enumerate() {
                    let idx = top - dm + t;
                    r[idx] = ((r[idx] as u64 + (p - c) as u64 * mt as u64) % p as u64) as u32;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] += x as u64 * y as u64;
            }
        }
        let mut out: Vec<u32> = r.into_iter().map(|v| (v % p as u64) as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut r: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Smallest monic factor of degree <= deg/2 found by trial division, if any.
    pub fn find_factor(m: &[u32], p: u32) -> Option<Vec<u32>> {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut f: Vec<u32> = (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
                f.push(1);
                if rem(m, &f, p).is_empty() {
                    return Some(f);
                }
            }
        }
        None
    }

    /// Rabin's irreducibility test over F_p.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let frob = |k: usize| powmod(&x, (p as u64).pow(k as u32), m, p);
        if !sub(&frob(n), &x, p).is_empty() {
            return false;
        }
        for l in super::prime_factors(n as u64) {
            let g = gcd(m, &sub(&frob(n / l as usize), &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    pub fn is_primitive(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if !is_irreducible(m, p) {
            return false;
        }
        let order = (p as u64).pow(n as u32) - 1;
        let x = vec![0, 1];
        let one = vec![1];
        if powmod(&x, order, m, p) != one {
            return false;
        }
        super::prime_factors(order)
            .into_iter()
            .all(|l| powmod(&x, order / l, m, p) != one)
    }
}

/// The default modulus for F_{p^m}: table entry, or the same rule evaluated at run time.
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if let Some((_, _, c)) = MODULUS_TABLE.iter().find(|(tp, tm, _)| *tp == p && *tm == m) {
        return c.to_vec();
    }
    search_primitive_modulus(p, m)
}

/// First primitive monic polynomial of degree m in code order.
pub fn search_primitive_modulus(p: u32, m: u32) -> Vec<u32> {
    let mut code: u64 = 0;
    loop {
        let mut c: Vec<u32> = (0..m).map(|i| ((code / (p as u64).pow(i)) % p as u64) as u32).collect();
        c.push(1);
        if c[0] != 0 && fp::is_primitive(&c, p) {
            return c;
        }
        code += 1;
    }
}

impl FiniteField {
    /// Builds F_{p^m} from a monic irreducible modulus of degree m (default when `None`).
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let size = (p as u64).checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE).ok_or_else(|| {
            Error::ResourceLimit(format!("field of size {p}^{m} exceeds {MAX_FIELD_SIZE}"))
        })? as u32;
        let modulus = match modulus {
            None => default_modulus(p, m),
            Some(mut c) => {
                for v in c.iter_mut() {
                    *v %= p;
                }
                fp::trim(&mut c);
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::InvalidField(format!("modulus must be monic of degree {m}")));
                }
                if !fp::is_irreducible(&c, p) {
                    let factor = fp::find_factor(&c, p).unwrap_or_else(|| c.clone());
                    return Err(Error::ReducibleModulus { factor: fmt_fp_poly(&factor) });
                }
                c
            }
        };

        let order = size as u64 - 1;
        let to_vec = |code: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(m as usize);
            let mut c = code;
            for _ in 0..m {
                v.push(c % p);
                c /= p;
            }
            fp::trim(&mut v);
            v
        };
        let from_vec = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &d| acc * p + d) };

        // Smallest element of full multiplicative order.
        let factors = prime_factors(order);
        let generator = if order == 1 {
            1
        } else {
            (1..size)
                .find(|&c| {
                    let g = to_vec(c);
                    factors.iter().all(|&l| fp::powmod(&g, order / l, &modulus, p) != vec![1])
                })
                .expect("multiplicative group is cyclic")
        };

        let gvec = to_vec(generator);
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![1u32];
        for i in 0..order as usize {
            let code = from_vec(&cur);
            exp[i] = code;
            exp[i + order as usize] = code;
            log[code as usize] = i as u32;
            cur = fp::mulmod(&cur, &gvec, &modulus, p);
        }

        let add_table = if m > 1 && p != 2 && size <= 256 {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = digit_add(a, b, p, m);
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(Arc::new(FiniteField { p, degree: m, size, modulus, generator: Fe(generator), exp, log, add_table }))
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        FiniteField::new(p, 1, None)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    /// Degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }
    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }
    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The fixed generator of the multiplicative group used for the log tables.
    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// Element of the prime subfield.
    #[inline]
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() > self.degree as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!("bad coordinates {coords:?}")));
        }
        Ok(Fe(coords.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)))
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut c = a.0;
        for _ in 0..self.degree {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    /// The power-basis generator u (root of the modulus).
    pub fn u(&self) -> Fe {
        if self.degree == 1 {
            // u is the root of x + c, i.e. -c.
            self.from_int(-(self.modulus[0] as i64))
        } else {
            Fe(self.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            Fe(a.0 ^ b.0)
        } else if self.degree == 1 {
            let s = a.0 + b.0;
            Fe(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add_table {
            Fe(t[(a.0 * self.size + b.0) as usize])
        } else {
            Fe(digit_add(a.0, b.0, self.p, self.degree))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.0 == 0 {
            a
        } else if self.degree == 1 {
            Fe(self.p - a.0)
        } else {
            let mut out = 0u32;
            let mut c = a.0;
            let mut w = 1u32;
            for _ in 0..self.degree {
                let d = c % self.p;
                c /= self.p;
                out += ((self.p - d) % self.p) * w;
                w = w.wrapping_mul(self.p);
            }
            Fe(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        Some(Fe(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b).ok_or(Error::DivisionByZero)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % order) % order;
        Fe(self.exp[l as usize])
    }

    /// Discrete logarithm to the base [`FiniteField::generator`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// g^i for the fixed generator g.
    pub fn exp(&self, i: u64) -> Fe {
        Fe(self.exp[(i % (self.size as u64 - 1).max(1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        let n = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        n / gcd_u64(n, l)
    }

    pub fn fmt_elem(&self, a: Fe) -> String {
        if self.degree == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coords(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "u".to_string(),
                (1, c) => format!("{c}*u"),
                (i, 1) => format!("u^{i}"),
                (i, c) => format!("{c}*u^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn digit_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut x, mut y, mut w, mut out) = (a, b, 1u32, 0u32);
    for _ in 0..m {
        out += ((x % p + y % p) % p) * w;
        x /= p;
        y /= p;
        w = w.wrapping_mul(p);
    }
    out
}

fn fmt_fp_poly(c: &[u32]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| match (i, v) {
            (0, v) => v.to_string(),
            (1, 1) => "u".into(),
            (1, v) => format!("{v}*u"),
            (i, 1) => format!("u^{i}"),
            (i, v) => format!("{v}*u^{i}"),
        })
        .collect();
    terms.join("+")
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The coefficient field F_q together with the working extension F_{q^k}.
///
/// Polynomials in A = F_q[T] live over `base`; Laurent series and character
/// values live over `ext`. `embed` maps base codes to ext codes.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    pub base: Field,
    pub ext: Field,
    embed: Vec<Fe>,
    n: u32,
    k: u32,
}

impl FieldCtx {
    /// F_q with q = p^n, working field F_{q^k}. `moduli` optionally fixes the
    /// base modulus (degree n) and the extension modulus (degree n·k), both over F_p.
    pub fn build(p: u32, n: u32, k: u32, moduli: Option<(Vec<u32>, Option<Vec<u32>>)>) -> Result<FieldCtx> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidField("n and k must be at least 1".into()));
        }
        let (bm, em) = match moduli {
            Some((b, e)) => (Some(b), e),
            None => (None, None),
        };
        let base = FiniteField::new(p, n, bm)?;
        let ext = if k == 1 && em.is_none() { base.clone() } else { FiniteField::new(p, n * k, em)? };
        if ext.degree() != n * k {
            return Err(Error::InvalidField("extension modulus has the wrong degree".into()));
        }
        // Embed through a root of the base modulus inside ext (smallest code).
        let bmod = base.modulus().to_vec();
        let eval = |x: Fe| -> Fe {
            bmod.iter().rev().fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, x), ext.from_int(c as i64)))
        };
        let embed = if Arc::ptr_eq(&base, &ext) {
            base.elements().collect()
        } else {
            let root = ext
                .elements()
                .find(|&x| eval(x).is_zero())
                .ok_or_else(|| Error::InternalInconsistency("base modulus has no root in extension".into()))?;
            base.elements()
                .map(|a| {
                    base.coords(a)
                        .iter()
                        .rev()
                        .fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, root), ext.from_int(c as i64)))
                })
                .collect()
        };
        Ok(FieldCtx { base, ext, embed, n, k })
    }

    /// Convenience constructor from q (a prime power) and k.
    pub fn from_q(q: u64, k: u32) -> Result<FieldCtx> {
        let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("q = {q} is not a prime power")))?;
        FieldCtx::build(p, n, k, None)
    }

    pub fn p(&self) -> u32 {
        self.base.characteristic()
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.base.size() as u64
    }

    #[inline]
    pub fn embed(&self, a: Fe) -> Fe {
        self.embed[a.0 as usize]
    }

    /// Pulls an ext element back to the base field if it lies there.
    pub fn restrict(&self, a: Fe) -> Option<Fe> {
        self.embed.iter().position(|&e| e == a).map(|i| Fe(i as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_p_rejected() {
        assert_eq!(FiniteField::new(6, 1, None).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn f9_from_table() {
        let ctx = FieldCtx::build(3, 1, 2, None).unwrap();
        assert_eq!(ctx.ext.size(), 9);
        assert_eq!(ctx.ext.modulus(), &[2, 1, 1]);
        for a in ctx.base.elements() {
            assert_eq!(ctx.embed(a), a);
        }
    }

    #[test]
    fn reducible_modulus_reports_factor() {
        // u^2 + 1 = (u + 1)^2 over F_2
        let err = FiniteField::new(2, 2, Some(vec![1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::ReducibleModulus { factor: "u+1".into() });
    }

    #[test]
    fn table_matches_rule_and_is_primitive() {
        for &(p, m, c) in MODULUS_TABLE {
            if (p as u64).pow(m) <= 4096 {
                assert_eq!(search_primitive_modulus(p, m), c.to_vec(), "p={p} m={m}");
            }
            assert!(fp::is_irreducible(c, p), "p={p} m={m}");
        }
    }

    #[test]
    fn field_axioms_f16_and_f25() {
        for (p, m) in [(2, 4), (5, 2), (3, 3)] {
            let f = FiniteField::new(p, m, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                for b in f.elements().step_by(3) {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    let c = f.exp(7);
                    assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
                }
            }
            // Frobenius is additive
            let e = p as u64;
            for a in f.elements() {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.pow(f.add(a, b), e), f.add(f.pow(a, e), f.pow(b, e)));
                }
            }
        }
    }

    #[test]
    fn user_modulus_non_primitive() {
        // x^4+x^3+x^2+x+1 is irreducible over F_2 but not primitive
        let f = FiniteField::new(2, 4, Some(vec![1, 1, 1, 1, 1])).unwrap();
        assert_eq!(f.order(f.generator()), 15);
        let u = f.u();
        assert_eq!(f.order(u), 5);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let ctx = FieldCtx::build(2, 2, 3, None).unwrap();
        let (b, e) = (&ctx.base, &ctx.ext);
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(ctx.embed(b.mul(x, y)), e.mul(ctx.embed(x), ctx.embed(y)));
                assert_eq!(ctx.embed(b.add(x, y)), e.add(ctx.embed(x), ctx.embed(y)));
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(7), Some((7, 1)));
    }
}
