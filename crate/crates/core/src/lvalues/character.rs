//! Dirichlet characters modulo a prime ℘, valued in the working extension F_{q^k}.

use std::fmt;

use crate::algebra::factor::is_irreducible;
use crate::algebra::{Fe, FieldCtx, Poly};
use crate::error::{Error, Result};

/// Largest residue ring (A/℘) for which a discrete-log table is built.
pub const TABLE_CAP: u64 = 10_000;

const NONE: u32 = u32::MAX;

/// χ(a) = a(ρ)^index where ρ is a fixed root of ℘ in F_{q^k}. Values are looked up through the
/// discrete log with respect to the smallest generator g of (A/℘)^×.
#[derive(Clone)]
pub struct DirichletChar {
    ctx: FieldCtx,
    modulus: Poly,
    index: u64,
    group: u64,
    generator: Poly,
    root: Fe,
    gen_image: Fe,
    /// By residue code; NONE marks 0.
    dlog: Vec<u32>,
    /// χ(g^j) for j < group.
    values: Vec<Fe>,
}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletChar(mod {}, index {})", self.modulus, self.index)
    }
}

/// Code of a polynomial of degree < d: Σ code(c_j) q^j.
pub(crate) fn residue_code(p: &Poly, q: u64) -> usize {
    p.coeffs().iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64) as usize
}

fn poly_of_code(ctx: &FieldCtx, d: usize, mut code: u64) -> Poly {
    let q = ctx.q();
    let mut c = Vec::with_capacity(d);
    for _ in 0..d {
        c.push(Fe((code % q) as u32));
        code /= q;
    }
    Poly::from_coeffs(&ctx.base, c)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl DirichletChar {
    /// The character of the given index modulo the monic irreducible ℘; 0 gives the trivial one.
    pub fn new(ctx: &FieldCtx, modulus: &Poly, index: u64) -> Result<DirichletChar> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = modulus.degree().expect("monic");
        let q = ctx.q();
        let size = q.checked_pow(d as u32).filter(|&s| s <= TABLE_CAP).ok_or_else(|| {
            Error::ResourceLimit(format!("|A/({modulus})| exceeds the character table cap {TABLE_CAP}"))
        })?;
        if d == 0 || !is_irreducible(modulus)? {
            return Err(Error::Reducible(modulus.to_string()));
        }
        let group = size - 1;
        if index >= group.max(1) {
            return Err(Error::InvalidArgument(format!("character index {index} must be below {}", group.max(1))));
        }
        if !(ctx.k() as usize).is_multiple_of(d) {
            return Err(Error::ExtensionTooSmall(format!(
                "a root of {modulus} needs F_(q^{d}) inside F_(q^{}); raise --k",
                ctx.k()
            )));
        }
        let ext = &ctx.ext;
        let eval_ext = |p: &Poly, x: Fe| p.coeffs().iter().rev().fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, x), ctx.embed(c)));
        let root = ext
            .elements()
            .find(|&x| eval_ext(modulus, x).is_zero())
            .ok_or_else(|| Error::InternalInconsistency(format!("{modulus} has no root in the extension")))?;

        let one = Poly::one(&ctx.base);
        let factors = prime_factors(group);
        let generator = (1..size)
            .map(|c| poly_of_code(ctx, d, c))
            .find(|g| factors.iter().all(|&p| g.pow_mod(group / p, modulus) != one))
            .ok_or_else(|| Error::InternalInconsistency("no generator of (A/p)^x".into()))?;

        let mut dlog = vec![NONE; size as usize];
        let mut x = one.clone();
        for j in 0..group {
            dlog[residue_code(&x, q)] = j as u32;
            x = x.mul_mod(&generator, modulus);
        }
        if x != one || dlog[1..].contains(&NONE) {
            return Err(Error::InternalInconsistency("discrete-log table is incomplete".into()));
        }
        let gen_image = eval_ext(&generator, root);
        let step = ext.pow(gen_image, index);
        let values = std::iter::successors(Some(Fe::ONE), |&v| Some(ext.mul(v, step))).take(group as usize).collect();
        Ok(DirichletChar {
            ctx: ctx.clone(),
            modulus: modulus.clone(),
            index,
            group,
            generator,
            root,
            gen_image,
            dlog,
            values,
        })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("monic")
    }

    /// |(A/℘)^×| = q^d − 1.
    pub fn group_order(&self) -> u64 {
        self.group
    }

    /// Order of χ, a divisor of q^d − 1.
    pub fn order(&self) -> u64 {
        self.group / crate::algebra::field::gcd_u64(self.index, self.group)
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// The root ρ of ℘ in F_{q^k} used to embed A/℘.
    pub fn root(&self) -> Fe {
        self.root
    }

    /// g(ρ), a generator of F_{q^d}^×.
    pub fn generator_image(&self) -> Fe {
        self.gen_image
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Discrete log of a mod ℘, None when ℘ | a.
    pub fn dlog(&self, a: &Poly) -> Result<Option<u64>> {
        let r = a.rem(&self.modulus)?;
        Ok(self.dlog_of_code(residue_code(&r, self.ctx.q())).map(|j| j as u64))
    }

    pub(crate) fn dlog_of_code(&self, code: usize) -> Option<usize> {
        let v = self.dlog[code];
        (v != NONE).then_some(v as usize)
    }

    /// χ(g^j).
    pub(crate) fn value_at_log(&self, j: usize) -> Fe {
        self.values[j]
    }

    /// χ(a) ∈ F_{q^k}.
    pub fn value(&self, a: &Poly) -> Result<Fe> {
        Ok(self.dlog(a)?.map_or(Fe::ZERO, |j| self.values[j as usize]))
    }

    /// θ^j mod ℘ for j ≤ n, as coefficient vectors of length d.
    pub(crate) fn theta_residues(&self, n: usize) -> Vec<Vec<Fe>> {
        let d = self.degree();
        let t = Poly::theta(&self.ctx.base);
        let mut x = Poly::one(&self.ctx.base);
        (0..=n)
            .map(|_| {
                let row = (0..d).map(|i| x.coeff(i)).collect();
                x = x.mul_mod(&t, &self.modulus);
                row
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::monic_of_degree;

    #[test]
    fn evaluation_at_zero() {
        let ctx = FieldCtx::from_q(5, 1).unwrap();
        let chi = DirichletChar::new(&ctx, &Poly::theta(&ctx.base), 1).unwrap();
        for a in monic_of_degree(&ctx.base, 3) {
            assert_eq!(chi.value(&a).unwrap(), a.coeff(0));
        }
        assert_eq!(chi.order(), 4);
    }

    #[test]
    fn trivial_and_zero_on_multiples() {
        let ctx = FieldCtx::from_q(3, 2).unwrap();
        let p = Poly::from_ints(&ctx.base, &[1, 0, 1]);
        let triv = DirichletChar::new(&ctx, &p, 0).unwrap();
        let chi = DirichletChar::new(&ctx, &p, 3).unwrap();
        for a in monic_of_degree(&ctx.base, 2) {
            let pa = &a * &p;
            assert_eq!(chi.value(&pa).unwrap(), Fe::ZERO);
            if !p.divides(&a) {
                assert_eq!(triv.value(&a).unwrap(), Fe::ONE);
            }
        }
    }

    #[test]
    fn multiplicative_and_matches_root_power() {
        let ctx = FieldCtx::from_q(2, 3).unwrap();
        let p = Poly::from_ints(&ctx.base, &[1, 1, 0, 1]);
        let chi = DirichletChar::new(&ctx, &p, 3).unwrap();
        let ext = &ctx.ext;
        let all: Vec<Poly> = (0..=3).flat_map(|d| monic_of_degree(&ctx.base, d).collect::<Vec<_>>()).collect();
        for a in &all {
            let at_root = a.coeffs().iter().rev().fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, chi.root()), ctx.embed(c)));
            assert_eq!(chi.value(a).unwrap(), ext.pow(at_root, 3));
            for b in &all {
                let ab = a * b;
                assert_eq!(chi.value(&ab).unwrap(), ext.mul(chi.value(a).unwrap(), chi.value(b).unwrap()));
            }
        }
    }

    #[test]
    fn orthogonality() {
        let ctx = FieldCtx::from_q(3, 2).unwrap();
        let p = Poly::from_ints(&ctx.base, &[2, 2, 1]);
        for index in 1..8 {
            let chi = DirichletChar::new(&ctx, &p, index).unwrap();
            let total = (0..9u64)
                .map(|c| poly_of_code(&ctx, 2, c))
                .fold(Fe::ZERO, |acc, a| ctx.ext.add(acc, chi.value(&a).unwrap()));
            assert_eq!(total, Fe::ZERO, "index {index}");
        }
    }

    #[test]
    fn rejections() {
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let reducible = Poly::from_ints(&ctx.base, &[0, 1, 1]);
        assert!(matches!(DirichletChar::new(&ctx, &reducible, 1), Err(Error::Reducible(_))));
        let deg2 = Poly::from_ints(&ctx.base, &[1, 0, 1]);
        assert!(matches!(DirichletChar::new(&ctx, &deg2, 1), Err(Error::ExtensionTooSmall(_))));
        assert!(matches!(DirichletChar::new(&ctx, &Poly::theta(&ctx.base), 2), Err(Error::InvalidArgument(_))));
        let p14 = Poly::theta(&ctx.base).pow(9);
        assert!(matches!(DirichletChar::new(&ctx, &p14, 1), Err(Error::ResourceLimit(_))));
    }
}
