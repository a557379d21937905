//! Bracket congruences at a prime f of degree d, for 0 ≤ k ≤ rd:
//!   (a) ⟨f⟩_k ≡ 0 for k < d;
//!   (b) ⟨f⟩_k ≡ Σ_ℓ ⟨b_ℓ⟩_(k−ℓd);
//!   (c) ⟨f⟩_k P^(q^k) ≡ Σ_ℓ ⟨b_ℓ⟩_(k−ℓd) (f^ℓ ⋆ P^(q^(k−ℓd))) for P ∈ A_(f)[x].
//! Everything is reduced mod f, where the brackets have small representatives even when the
//! exact ones have degree ~q^(rd).

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::factor::{canonical_rep_rf, irreducibles_of_degree};
use crate::algebra::{Poly, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::frobenius::frobenius_data;
use crate::twisted::{CoeffRing, ResidueRing, TwistedPoly};

/// Sparse polynomial in x over F_f = A/(f).
#[derive(Clone, Debug, PartialEq)]
struct ResX(BTreeMap<u64, Poly>);

impl ResX {
    fn from_local(p: &XPoly, f: &Poly) -> Result<ResX> {
        let mut m = BTreeMap::new();
        for (&e, c) in p.terms() {
            let v = canonical_rep_rf(c, f)?;
            if !v.is_zero() {
                m.insert(e, v);
            }
        }
        Ok(ResX(m))
    }

    fn one(ring: &ResidueRing) -> ResX {
        ResX(BTreeMap::from([(0, ring.one())]))
    }

    fn add_into(&mut self, ring: &ResidueRing, e: u64, c: &Poly) {
        let slot = self.0.entry(e).or_insert_with(|| ring.zero());
        *slot = ring.add(slot, c);
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    fn sub(&self, ring: &ResidueRing, o: &ResX) -> ResX {
        let mut out = self.clone();
        for (&e, c) in &o.0 {
            out.add_into(ring, e, &ring.neg(c));
        }
        out
    }

    fn scale(&self, ring: &ResidueRing, c: &Poly) -> ResX {
        let mut out = ResX(BTreeMap::new());
        for (&e, v) in &self.0 {
            out.add_into(ring, e, &ring.mul(v, c));
        }
        out
    }

    fn mul(&self, ring: &ResidueRing, o: &ResX) -> ResX {
        let mut out = ResX(BTreeMap::new());
        for (&a, u) in &self.0 {
            for (&b, v) in &o.0 {
                out.add_into(ring, a + b, &ring.mul(u, v));
            }
        }
        out
    }

    /// The literal power P^(q^k): coefficients to the q^k, exponents times q^k.
    fn frob(&self, ring: &ResidueRing, q: u64, k: u32) -> ResX {
        let s = q.pow(k);
        ResX(self.0.iter().map(|(&e, c)| (e * s, ring.frob(c, k))).collect())
    }

    /// P(C(x)) for an additive C given by (exponent, coefficient) pairs.
    fn compose(&self, ring: &ResidueRing, c: &ResX) -> ResX {
        let mut out = ResX(BTreeMap::new());
        let mut pow = ResX::one(ring);
        let mut at = 0;
        for (&e, v) in &self.0 {
            while at < e {
                pow = pow.mul(ring, c);
                at += 1;
            }
            for (&k, w) in &pow.scale(ring, v).0 {
                out.add_into(ring, k, w);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

struct Prime {
    f: Poly,
    d: usize,
    ring: ResidueRing,
    /// φ̄_f, φ̄_(b_1), …, each truncated at τ-degree rd.
    phi_f: TwistedPoly<ResidueRing>,
    phi_b: Vec<TwistedPoly<ResidueRing>>,
}

impl Prime {
    fn new(phi: &DrinfeldModule, f: &Poly) -> Result<Prime> {
        let d = f.degree().expect("prime");
        let ring = ResidueRing::new(f)?;
        let kmax = phi.rank() * d;
        let data = frobenius_data(phi, f)?;
        let phi_f = phi.phi_bar_of(f, &ring, kmax);
        let phi_b = (1..=phi.rank()).map(|l| phi.phi_bar_of(&data.b(l), &ring, kmax)).collect();
        Ok(Prime { f: f.clone(), d, ring, phi_f, phi_b })
    }

    /// Terms (ℓ, ⟨b_ℓ⟩_(k−ℓd)) contributing at index k.
    fn b_terms(&self, k: usize) -> impl Iterator<Item = (usize, Poly)> + '_ {
        (1..=k / self.d).filter_map(move |l| self.phi_b.get(l - 1).map(|t| (l, t.coeff((k - l * self.d) as i64))))
    }
}

/// Checks (a) and (b) for every k, returning the number of identities.
fn parts_ab(phi: &DrinfeldModule, p: &Prime) -> (bool, u64) {
    let kmax = phi.rank() * p.d;
    let mut ok = true;
    for k in 0..=kmax {
        let lhs = p.phi_f.coeff(k as i64);
        if k < p.d {
            ok &= lhs.is_zero();
        }
        let rhs = p.b_terms(k).fold(p.ring.zero(), |acc, (_, c)| p.ring.add(&acc, &c));
        ok &= lhs == rhs;
    }
    (ok, 2 * (kmax as u64 + 1))
}

/// Part (c) for one P.
fn part_c(phi: &DrinfeldModule, pr: &Prime, big_p: &XPoly) -> Result<(bool, u64)> {
    let ring = &pr.ring;
    let q = phi.q();
    let kmax = phi.rank() * pr.d;
    let p = ResX::from_local(big_p, &pr.f)?;
    // C_(f^ℓ) evaluated in F_f[τ] (never in A, where its coefficients are huge), then f^ℓ ⋆ P
    let c_theta = TwistedPoly::new(ring, vec![ring.from_poly(&Poly::theta(phi.field())), ring.one()]);
    let starred: Vec<ResX> = (1..=phi.rank())
        .map(|l| {
            let c = c_theta.eval_poly_at(&pr.f.pow(l as u64), usize::MAX);
            let mut qj = 1u64;
            let mut terms = BTreeMap::new();
            for v in c.coeffs() {
                if !v.is_zero() {
                    terms.insert(qj, v.clone());
                }
                qj *= q;
            }
            p.compose(ring, &ResX(terms))
        })
        .collect();
    let mut ok = true;
    for k in 0..=kmax {
        let lhs = p.frob(ring, q, k as u32).scale(ring, &pr.phi_f.coeff(k as i64));
        let mut diff = lhs;
        for (l, c) in pr.b_terms(k) {
            if c.is_zero() {
                continue;
            }
            let t = starred[l - 1].frob(ring, q, (k - l * pr.d) as u32).scale(ring, &c);
            diff = diff.sub(ring, &t);
        }
        ok &= diff.is_zero();
    }
    Ok((ok, kmax as u64 + 1))
}

/// Exact brackets reduced mod f, for cases small enough to expand in A.
fn exact_brackets_agree(phi: &DrinfeldModule, pr: &Prime) -> bool {
    let kmax = phi.rank() * pr.d;
    (0..=kmax).all(|k| pr.ring.from_poly(&phi.brac(&pr.f, k as i64)) == pr.phi_f.coeff(k as i64))
}

const EXACT_LIMIT: u64 = 700;

/// Every prime of degree ≤ dmax with `polys` random P ∈ A_(f)[x] each.
fn sample_primes(phi: &DrinfeldModule, dmax: usize, polys: usize, rng: &mut ChaCha8Rng) -> Vec<(Poly, Vec<XPoly>)> {
    let field = phi.field();
    let mut out = Vec::new();
    for d in 1..=dmax {
        for f in irreducibles_of_degree(field, d) {
            let ps = (0..polys).map(|_| {
                let m = rng.gen_range(0..=2);
                gen::local_xpoly(rng, &f, m, 2)
            }).collect();
            out.push((f, ps));
        }
    }
    out
}

fn check(phi: &DrinfeldModule, primes: &[(Poly, Vec<XPoly>)]) -> Result<Case> {
    let mut ok = true;
    let mut checks = 0;
    let mut exact = 0;
    for (f, ps) in primes {
        let pr = Prime::new(phi, f)?;
        let (o, c) = parts_ab(phi, &pr);
        ok &= o;
        checks += c;
        for p in ps {
            let (o, c) = part_c(phi, &pr, p)?;
            ok &= o;
            checks += c;
        }
        if phi.q().saturating_pow((phi.rank() * pr.d) as u32) <= EXACT_LIMIT {
            ok &= exact_brackets_agree(phi, &pr);
            exact += 1;
        }
    }
    Ok(Case::new(format!("q={} {phi:?}", phi.q()), ok, checks, format!("{} primes, {exact} with exact brackets", primes.len())))
}

pub struct Congruences;

impl Suite for Congruences {
    fn name(&self) -> &'static str {
        "congruences"
    }

    fn describe(&self) -> &'static str {
        "bracket congruences (a), (b), (c) mod every prime of degree <= dmax, 5 random P in A_(f)[x] per prime"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(4);
        let fields = gen::fields(cfg.qmax)?;
        let mut jobs = Vec::new();
        for n in 0..cfg.samples {
            // cycle through the fields so each q is covered, then pick rank and degrees at random
            let field = &fields[n % fields.len()];
            let r = rng.gen_range(1..=cfg.rmax);
            let dk = rng.gen_range(0..=field.size() as usize);
            let phi = gen::module(&mut rng, field, r, dk);
            let primes = sample_primes(&phi, cfg.dmax, 5, &mut rng);
            jobs.push((phi, primes));
        }
        let cases = run_cases(&jobs, |(p, _)| format!("q={} {p:?}", p.q()), |(p, primes)| check(p, primes));
        Ok(SuiteReport::new(self.name(), cases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rank_two_over_f3() {
        let f = gen::field(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[1, 1]), Poly::from_ints(&f, &[2, 0, 1])]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let primes = sample_primes(&phi, 2, 3, &mut rng);
        let case = check(&phi, &primes).unwrap();
        assert!(case.ok, "{}", case.note);
    }

    #[test]
    fn wrong_b_is_caught() {
        let f = gen::field(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::from_ints(&f, &[0, 1]), Poly::one(&f)]).unwrap();
        let mut pr = Prime::new(&phi, &Poly::from_ints(&f, &[1, 1])).unwrap();
        assert!(parts_ab(&phi, &pr).0);
        pr.phi_b[0] = phi.phi_bar_of(&Poly::from_ints(&f, &[1]), &pr.ring, 2);
        assert!(!parts_ab(&phi, &pr).0);
    }

    #[test]
    fn compose_matches_star() {
        let f = gen::field(2).unwrap();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let ring = ResidueRing::new(&p).unwrap();
        let beta = XPoly::from_poly_terms(&f, [(0, Poly::theta(&f)), (2, Poly::one(&f))]);
        let a = Poly::from_ints(&f, &[1, 0, 1, 1]);
        let c = ResX::from_local(&crate::drinfeld::carlitz_act(&f, &a), &p).unwrap();
        let got = ResX::from_local(&beta, &p).unwrap().compose(&ring, &c);
        assert_eq!(got, ResX::from_local(&crate::drinfeld::star(&a, &beta), &p).unwrap());
    }
}
