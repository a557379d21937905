//! Structure of the coefficients μ(a): degree bounds, multiplicativity, the closed forms at
//! primes of degree 1 and 2, and μ ≡ 1 for the Carlitz module.

use rand::Rng;

use super::logalg::corpus_degree_cap;
use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::factor::irreducibles_of_degree;
use crate::algebra::{Field, Poly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::logalg::MuTable;

/// deg μ(a)·r ≤ (r − 1)·deg a over the whole table.
fn degree_bound(mu: &MuTable, r: usize) -> (bool, u64) {
    let mut ok = true;
    let mut n = 0;
    for i in 0..=mu.depth() {
        for m in mu.level(i) {
            if let Some(dm) = m.degree() {
                ok &= dm * r <= (r - 1) * i;
            }
            n += 1;
        }
    }
    (ok, n)
}

/// deg μ(f^m)·r0 ≤ (r0 − 1)·m·d on every sieved prime power.
fn prime_power_bound(mu: &MuTable) -> (bool, u64) {
    let mut ok = true;
    let mut n = 0;
    for f in mu.primes() {
        let d = f.degree().expect("prime");
        let r0 = mu.frobenius(f).map(|data| data.r0);
        for (m, v) in mu.prime_powers(f).unwrap_or(&[]).iter().enumerate().skip(1) {
            let (Some(dv), Some(r0)) = (v.degree(), r0) else { continue };
            ok &= r0 > 0 && dv * r0 <= (r0 - 1) * m * d;
            n += 1;
        }
    }
    (ok, n)
}

/// μ(θ + c) = κ_1(−c) and μ(θ² + c_1θ + c_0) = ((θ^(q²) + θ + c_1)κ_2 + κ_1^(q+1)) mod f.
fn low_degree_formulas(phi: &DrinfeldModule, mu: &MuTable) -> Result<(bool, u64)> {
    let field = phi.field();
    let q = phi.q();
    let (g, delta) = (phi.kappa(1), phi.kappa(2));
    let t = Poly::theta(field);
    let mut ok = true;
    let mut n = 0;
    for f in irreducibles_of_degree(field, 1) {
        let c = f.coeff(0);
        ok &= *mu.get(&f)? == Poly::constant(field, g.eval(field.neg(c)));
        n += 1;
    }
    if mu.depth() >= 2 {
        for f in irreducibles_of_degree(field, 2) {
            let lin = &(&t.pow(q * q) + &t) + &Poly::constant(field, f.coeff(1));
            let h = &(&lin * &delta) + &g.pow(q + 1);
            ok &= *mu.get(&f)? == h.rem(&f)?;
            n += 1;
        }
    }
    Ok((ok, n))
}

/// μ(ab) = μ(a)μ(b) on random coprime pairs.
fn multiplicativity(mu: &MuTable, rng: &mut rand_chacha::ChaCha8Rng, pairs: usize) -> Result<(bool, u64)> {
    let field = mu.field();
    let depth = mu.depth();
    let mut ok = true;
    let mut n = 0;
    while n < pairs as u64 && depth >= 2 {
        let da = rng.gen_range(1..depth);
        let db = rng.gen_range(1..=depth - da);
        let (a, b) = (gen::monic(rng, field, da), gen::monic(rng, field, db));
        if !a.gcd(&b).is_one() {
            continue;
        }
        ok &= *mu.get(&(&a * &b))? == mu.get(&a)? * mu.get(&b)?;
        n += 1;
    }
    Ok((ok, n))
}

fn check_module(phi: &DrinfeldModule, depth: usize, seed: u64) -> Result<Case> {
    let mu = MuTable::build(phi, depth)?;
    let (a, na) = degree_bound(&mu, phi.rank());
    let (b, nb) = prime_power_bound(&mu);
    let (c, nc) = low_degree_formulas(phi, &mu)?;
    let mut rng = rand::SeedableRng::seed_from_u64(seed);
    let (d, nd) = multiplicativity(&mu, &mut rng, 20)?;
    let note = format!("degree bound {a} ({na}), prime powers {b} ({nb}), closed forms {c} ({nc}), multiplicative {d} ({nd})");
    Ok(Case::new(format!("q={} {phi:?}", phi.q()), a && b && c && d, na + nb + nc + nd, note))
}

fn check_carlitz(field: &Field, depth: usize) -> Result<Case> {
    let mu = MuTable::build(&DrinfeldModule::carlitz(field), depth)?;
    let ok = mu.values().iter().all(Poly::is_one);
    Ok(Case::new(format!("carlitz q={} depth {depth}", field.size()), ok, mu.values().len() as u64, "mu = 1 on every monic"))
}

pub struct MuSuite;

impl Suite for MuSuite {
    fn name(&self) -> &'static str {
        "mu"
    }

    fn describe(&self) -> &'static str {
        "deg mu(a) <= (1 - 1/r) deg a to mu_depth, prime-power bounds, degree-1/2 closed forms, multiplicativity; Carlitz mu = 1 to mu_depth + 2"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(6);
        let mut jobs = Vec::new();
        for q in [2u64, 3, 5].into_iter().filter(|&q| q <= cfg.qmax) {
            let f = gen::field(q)?;
            for r in 1..=cfg.rmax.min(3) {
                for _ in 0..(cfg.samples / 3).max(1) {
                    jobs.push((gen::module(&mut rng, &f, r, corpus_degree_cap(q, r)), rng.gen::<u64>()));
                }
            }
        }
        let fields = gen::fields(cfg.qmax)?;
        let mut cases = run_cases(&fields, |f| format!("carlitz q={}", f.size()), |f| check_carlitz(f, cfg.mu_depth + 2));
        cases.extend(run_cases(&jobs, |(m, _)| format!("q={} {m:?}", m.q()), |(m, s)| check_module(m, cfg.mu_depth, *s)));
        Ok(SuiteReport::new(self.name(), cases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_over_f3() {
        let f = gen::field(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[1, 2, 0, 1]), Poly::from_ints(&f, &[2, 1])]).unwrap();
        let case = check_module(&phi, 5, 3).unwrap();
        assert!(case.ok, "{}", case.note);
    }

    #[test]
    fn carlitz_small() {
        assert!(check_carlitz(&gen::field(2).unwrap(), 6).unwrap().ok);
    }
}
