//! Smallest-prime-factor sieve over the monic polynomials of degree ≤ N, and tabulation of
//! multiplicative functions on it.

use super::{Field, Poly};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Refuses sieves beyond this many entries.
pub const MAX_ENTRIES: usize = 1 << 21;

/// Every monic a with deg a ≤ N gets a global index offset(deg a) + code(a); entry 0 is a = 1.
#[derive(Debug)]
pub struct MonicSieve {
    field: Field,
    depth: usize,
    offsets: Vec<usize>,
    /// Index into `primes` of the smallest prime factor, in (degree, code) order.
    spf: Vec<u32>,
    /// Index of a / spf(a).
    cof: Vec<u32>,
    /// Multiplicity of spf(a) in a.
    expo: Vec<u32>,
    /// Index of a with spf(a) removed entirely.
    rest: Vec<u32>,
    primes: Vec<Poly>,
}

impl MonicSieve {
    pub fn build(field: &Field, n: usize) -> Result<MonicSieve> {
        let q = field.size() as usize;
        let mut offsets = vec![0usize];
        for d in 0..=n {
            match q.checked_pow(d as u32).and_then(|c| offsets[d].checked_add(c)) {
                Some(v) if v <= MAX_ENTRIES => offsets.push(v),
                _ => return Err(Error::ResourceLimit(format!("sieve to degree {n} over F_{q} is too large"))),
            }
        }
        let total = offsets[n + 1];
        let mut spf = vec![NONE; total];
        let mut cof = vec![NONE; total];
        let mut primes: Vec<Poly> = Vec::new();
        // cofactors reused across primes
        let cofactors: Vec<Vec<Poly>> =
            (0..n).map(|e| (0..q.pow(e as u32)).map(|c| Poly::from_monic_code(field, e, c as u64)).collect()).collect();
        for d in 1..=n {
            for code in 0..q.pow(d as u32) {
                let idx = offsets[d] + code;
                if spf[idx] != NONE {
                    continue;
                }
                let pid = primes.len() as u32;
                let f = Poly::from_monic_code(field, d, code as u64);
                spf[idx] = pid;
                cof[idx] = 0;
                for (e, level) in cofactors.iter().enumerate().take(n - d + 1).skip(1) {
                    for (bcode, b) in level.iter().enumerate() {
                        let j = offsets[d + e] + (&f * b).monic_code() as usize;
                        if spf[j] == NONE {
                            spf[j] = pid;
                            cof[j] = (offsets[e] + bcode) as u32;
                        }
                    }
                }
                primes.push(f);
            }
        }
        let mut expo = vec![0u32; total];
        let mut rest = vec![0u32; total];
        for idx in 1..total {
            let b = cof[idx] as usize;
            if b != 0 && spf[b] == spf[idx] {
                expo[idx] = expo[b] + 1;
                rest[idx] = rest[b];
            } else {
                expo[idx] = 1;
                rest[idx] = b as u32;
            }
        }
        Ok(MonicSieve { field: field.clone(), depth: n, offsets, spf, cof, expo, rest, primes })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.spf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spf.is_empty()
    }

    pub fn index(&self, d: usize, code: usize) -> usize {
        self.offsets[d] + code
    }

    pub fn level_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    /// Irreducible monic polynomials in (degree, code) order.
    pub fn primes(&self) -> &[Poly] {
        &self.primes
    }

    /// (prime index, multiplicity) pairs of the entry at `idx`.
    pub fn factor_index(&self, mut idx: usize) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        while idx != 0 {
            out.push((self.spf[idx] as usize, self.expo[idx]));
            idx = self.rest[idx] as usize;
        }
        out
    }

    /// Degree of the largest prime factor (0 for a = 1).
    pub fn largest_prime_degree(&self, idx: usize) -> usize {
        self.factor_index(idx).iter().map(|&(p, _)| self.primes[p].degree().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Tabulates the multiplicative function with the given values at prime powers:
    /// `powers[p][m]` is the value at primes[p]^m (m ≥ 1; index 0 is ignored).
    pub fn tabulate<T: Clone>(&self, one: T, powers: &[Vec<T>], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.len());
        out.push(one);
        for idx in 1..self.len() {
            let p = self.spf[idx] as usize;
            let v = mul(&powers[p][self.expo[idx] as usize], &out[self.rest[idx] as usize]);
            out.push(v);
        }
        out
    }

    /// Index of a / spf(a), for callers that walk factorizations themselves.
    pub fn cofactor(&self, idx: usize) -> usize {
        self.cof[idx] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::{factor_monic, monic_of_degree};
    use crate::algebra::FiniteField;

    #[test]
    fn factorizations_match() {
        let f = FiniteField::prime(3).unwrap();
        let s = MonicSieve::build(&f, 5).unwrap();
        for d in 0..=5 {
            for a in monic_of_degree(&f, d) {
                let idx = s.index(d, a.monic_code() as usize);
                let mut got: Vec<(Poly, usize)> =
                    s.factor_index(idx).iter().map(|&(p, e)| (s.primes()[p].clone(), e as usize)).collect();
                got.sort_by_key(|x| (x.0.degree(), x.0.monic_code()));
                assert_eq!(got, factor_monic(&a).unwrap(), "a = {a}");
            }
        }
    }

    #[test]
    fn prime_counts() {
        let f = FiniteField::prime(2).unwrap();
        let s = MonicSieve::build(&f, 6).unwrap();
        // 2, 1, 2, 3, 6, 9 irreducibles of degree 1..6 over F_2
        assert_eq!(s.primes().len(), 2 + 1 + 2 + 3 + 6 + 9);
        assert!(MonicSieve::build(&f, 40).is_err());
    }
}
