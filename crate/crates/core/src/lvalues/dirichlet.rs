//! Degree-by-degree evaluation of Σ χ(a)·c(a)/a^s over monic a, at ∞.
//!
//! Each term is expanded over F_q in t = 1/θ: with ã(t) = t^i·a(1/t) one has
//! c(a)/a^s = θ^(deg c − s·i) · c̃(t)/ã(t)^s. Terms are bucketed by the discrete log of a mod ℘ so
//! all arithmetic stays in F_q until the very end.

use rayon::prelude::*;

use super::character::DirichletChar;
use crate::algebra::sieve::MonicSieve;
use crate::algebra::{Fe, FieldCtx, FiniteField, Poly};
use crate::laurent::{LaurentSeries, Magnitude};

pub(crate) struct Blocks {
    pub series: LaurentSeries,
    /// Size of each degree block's contribution (to the working precision).
    pub blocks: Vec<Magnitude>,
}

/// Coefficients of 1/p(t) up to t^(k−1), p(0) = 1.
fn inverse_series(f: &FiniteField, p: &[Fe], k: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; k];
    if k == 0 {
        return out;
    }
    out[0] = Fe::ONE;
    for n in 1..k {
        let mut acc = Fe::ZERO;
        for j in 1..p.len().min(n + 1) {
            if !p[j].is_zero() {
                acc = f.sub(acc, f.mul(p[j], out[n - j]));
            }
        }
        out[n] = acc;
    }
    out
}

fn mul_trunc(f: &FiniteField, a: &[Fe], b: &[Fe], k: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; k.min(a.len() + b.len() - 1)];
    for (i, &x) in a.iter().enumerate().take(out.len()) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out.len() - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

struct Block<'a> {
    field: &'a FiniteField,
    q: usize,
    i: usize,
    s: u32,
    prec: i64,
    top: i64,
    len: usize,
    chi: Option<(&'a DirichletChar, &'a [Vec<Fe>])>,
}

impl Block<'_> {
    fn digits(&self, mut code: usize) -> Vec<Fe> {
        (0..self.i)
            .map(|_| {
                let c = Fe((code % self.q) as u32);
                code /= self.q;
                c
            })
            .collect()
    }

    /// Bucket of the monic a with these low coefficients (None when χ(a) = 0).
    fn bucket(&self, low: &[Fe]) -> Option<usize> {
        let Some((chi, residues)) = self.chi else {
            return Some(0);
        };
        let f = self.field;
        let mut r = residues[self.i].clone();
        for (j, &c) in low.iter().enumerate() {
            if !c.is_zero() {
                for (x, &y) in r.iter_mut().zip(&residues[j]) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        let code = r.iter().rev().fold(0usize, |acc, c| acc * self.q + c.0 as usize);
        chi.dlog_of_code(code)
    }

    fn add_term(&self, acc: &mut [Fe], low: &[Fe], c: &Poly) {
        let f = self.field;
        let dc = c.degree().expect("nonzero") as i64;
        let lead = dc - self.s as i64 * self.i as i64;
        let k = lead + self.prec;
        if k <= 0 {
            return;
        }
        let k = k as usize;
        // ã(t) = 1 + c_(i−1) t + … + c_0 t^i
        let rev: Vec<Fe> = std::iter::once(Fe::ONE).chain(low.iter().rev().copied()).collect();
        let mut den = vec![Fe::ONE];
        for _ in 0..self.s {
            den = mul_trunc(f, &den, &rev, k);
        }
        let inv = inverse_series(f, &den, k);
        let num: Vec<Fe> = c.coeffs().iter().rev().copied().collect();
        let term = mul_trunc(f, &num, &inv, k);
        let shift = (self.top - lead) as usize;
        for (n, &v) in term.iter().enumerate() {
            acc[shift + n] = f.add(acc[shift + n], v);
        }
    }
}

/// Σ over deg a ≤ depth of χ(a)·coeff(a)/a^s, with coeff indexed like the sieve, truncated below
/// θ^(−prec). Values land in the extension field of `ctx`.
pub(crate) fn dirichlet_sum(
    ctx: &FieldCtx,
    sieve: &MonicSieve,
    coeff: &[Poly],
    s: u32,
    chi: Option<&DirichletChar>,
    depth: usize,
    prec: i64,
) -> Blocks {
    let field: &FiniteField = &ctx.base;
    let q = field.size() as usize;
    let residues = chi.map(|c| c.theta_residues(depth));
    let chi = chi.zip(residues.as_deref());
    let buckets = chi.map_or(1, |(c, _)| c.group_order() as usize);
    let mut total = LaurentSeries::zero(&ctx.ext, 1).truncate(-prec);
    let mut blocks = Vec::with_capacity(depth + 1);
    for i in 0..=depth {
        let range = sieve.level_range(i);
        let level = &coeff[range];
        let Some(dmax) = level.iter().filter_map(Poly::degree).max() else {
            blocks.push(Magnitude::Zero);
            continue;
        };
        let top = dmax as i64 - s as i64 * i as i64;
        if top + prec <= 0 {
            blocks.push(Magnitude::AtMost(-prec));
            continue;
        }
        let block = Block { field, q, i, s, prec, top, len: (top + prec) as usize, chi };
        let empty = || vec![Vec::<Fe>::new(); buckets];
        let accs = (0..level.len())
            .into_par_iter()
            .with_min_len(512)
            .fold(empty, |mut acc, code| {
                let c = &level[code];
                if c.is_zero() {
                    return acc;
                }
                let low = block.digits(code);
                if let Some(b) = block.bucket(&low) {
                    if acc[b].is_empty() {
                        acc[b] = vec![Fe::ZERO; block.len];
                    }
                    block.add_term(&mut acc[b], &low, c);
                }
                acc
            })
            .reduce(empty, |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    if a.is_empty() {
                        *a = b;
                    } else if !b.is_empty() {
                        for (u, v) in a.iter_mut().zip(b) {
                            *u = field.add(*u, v);
                        }
                    }
                }
                x
            });
        let ext = &ctx.ext;
        let mut dense = vec![Fe::ZERO; block.len];
        for (b, acc) in accs.iter().enumerate() {
            if acc.is_empty() {
                continue;
            }
            let w = chi.map_or(Fe::ONE, |(c, _)| c.value_at_log(b));
            for (slot, &v) in dense.iter_mut().zip(acc) {
                if !v.is_zero() {
                    *slot = ext.add(*slot, ext.mul(w, ctx.embed(v)));
                }
            }
        }
        let series = LaurentSeries::new(ext, 1, dense.into_iter().enumerate().map(|(n, v)| (top - n as i64, v)), Some(-prec));
        blocks.push(series.magnitude());
        total = total.add(&series);
    }
    Blocks { series: total, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::monic_of_degree;
    use crate::algebra::RatFunc;

    #[test]
    fn matches_exact_expansion() {
        let ctx = FieldCtx::from_q(3, 1).unwrap();
        let f = &ctx.base;
        let sieve = MonicSieve::build(f, 3).unwrap();
        // c(a) = a's constant term plus θ, an arbitrary non-multiplicative weight
        let coeff: Vec<Poly> = (0..=3)
            .flat_map(|d| monic_of_degree(f, d).map(|a| &Poly::constant(f, a.coeff(0)) + &Poly::theta(f)).collect::<Vec<_>>())
            .collect();
        for s in 1..=2u32 {
            let got = dirichlet_sum(&ctx, &sieve, &coeff, s, None, 3, 12).series;
            let mut exact = RatFunc::zero(f);
            for d in 0..=3 {
                for a in monic_of_degree(f, d) {
                    let idx = sieve.index(d, a.monic_code() as usize);
                    exact = exact.add_rf(&RatFunc::new(coeff[idx].clone(), a.pow(s as u64)).unwrap());
                }
            }
            assert_eq!(got, LaurentSeries::embed(&ctx, &exact, 1, 12), "s = {s}");
        }
    }
}
