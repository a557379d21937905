//! Drinfeld modules φ_θ = θ + κ_1τ + … + κ_rτ^r over A, their brackets,
//! exponential and logarithm coefficients.

mod expeval;
mod star;

pub use expeval::{exp_eval, exp_term_count};
pub use star::{carlitz_act, j0_upper, star, Ratio};

use std::sync::{Arc, Mutex};

use crate::algebra::{Field, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::twisted::{PolyRing, ResidueRing, TwistedPoly};

struct Caches {
    /// φ_(θ^i), i = 0, 1, …
    theta_pows: Vec<TwistedPoly<PolyRing>>,
    alpha: Vec<RatFunc>,
    beta: Vec<RatFunc>,
    /// β_i·L_i ∈ A
    log_num: Vec<Poly>,
}

/// A Drinfeld module of rank r over A = F_q[θ].
#[derive(Clone)]
pub struct DrinfeldModule {
    field: Field,
    kappa: Vec<Poly>,
    ring: PolyRing,
    caches: Arc<Mutex<Caches>>,
}

impl std::fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "φ_θ = θ")?;
        for (j, k) in self.kappa.iter().enumerate() {
            write!(f, " + ({k})τ^{}", j + 1)?;
        }
        Ok(())
    }
}

impl PartialEq for DrinfeldModule {
    fn eq(&self, o: &Self) -> bool {
        self.kappa == o.kappa
    }
}

/// L_i = ∏_(k=1..i) (θ^(q^k) − θ), the lcm of the monic polynomials of degree i.
pub fn carlitz_l(field: &Field, i: usize) -> Poly {
    let t = Poly::theta(field);
    (1..=i).fold(Poly::one(field), |acc, k| &acc * &(&t.pow_char_power(field.degree() * k as u32) - &t))
}

/// L_0, …, L_n.
pub fn carlitz_l_table(field: &Field, n: usize) -> Vec<Poly> {
    let t = Poly::theta(field);
    let mut out = vec![Poly::one(field)];
    for k in 1..=n {
        let f = &t.pow_char_power(field.degree() * k as u32) - &t;
        out.push(&out[k - 1] * &f);
    }
    out
}

impl DrinfeldModule {
    /// φ from κ_1..κ_r; κ_r must be nonzero.
    pub fn new(field: &Field, kappa: Vec<Poly>) -> Result<DrinfeldModule> {
        match kappa.last() {
            Some(k) if !k.is_zero() => {}
            _ => return Err(Error::ZeroLeadingCoefficient),
        }
        let ring = PolyRing::new(field);
        let phi_theta = {
            let mut c = vec![Poly::theta(field)];
            c.extend(kappa.iter().cloned());
            TwistedPoly::new(&ring, c)
        };
        let caches = Caches {
            theta_pows: vec![TwistedPoly::one(&ring), phi_theta],
            alpha: vec![RatFunc::one(field)],
            beta: vec![RatFunc::one(field)],
            log_num: vec![Poly::one(field)],
        };
        Ok(DrinfeldModule { field: field.clone(), kappa, ring, caches: Arc::new(Mutex::new(caches)) })
    }

    /// The Carlitz module C_θ = θ + τ.
    pub fn carlitz(field: &Field) -> DrinfeldModule {
        DrinfeldModule::new(field, vec![Poly::one(field)]).expect("nonzero")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size() as u64
    }

    pub fn rank(&self) -> usize {
        self.kappa.len()
    }

    /// κ_j for 0 ≤ j ≤ r, with κ_0 = θ; zero beyond r.
    pub fn kappa(&self, j: usize) -> Poly {
        match j {
            0 => Poly::theta(&self.field),
            _ => self.kappa.get(j - 1).cloned().unwrap_or_else(|| Poly::zero(&self.field)),
        }
    }

    pub fn kappas(&self) -> &[Poly] {
        &self.kappa
    }

    /// d_0 = max deg κ_j over nonzero κ_j.
    pub fn d0(&self) -> usize {
        self.kappa.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn phi_theta(&self) -> TwistedPoly<PolyRing> {
        self.theta_pow(1)
    }

    /// φ_(θ^i), memoized.
    pub fn theta_pow(&self, i: usize) -> TwistedPoly<PolyRing> {
        let mut c = self.caches.lock().expect("cache lock");
        while c.theta_pows.len() <= i {
            let next = c.theta_pows[1].tmul(c.theta_pows.last().unwrap()).expect("same ring");
            c.theta_pows.push(next);
        }
        c.theta_pows[i].clone()
    }

    /// φ_a = Σ a_i φ_(θ^i).
    pub fn phi_of(&self, a: &Poly) -> TwistedPoly<PolyRing> {
        let mut acc = TwistedPoly::zero(&self.ring);
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let t = self.theta_pow(i);
                acc = acc.add(&t.map(&self.ring, |x| x.scale(c)));
            }
        }
        acc
    }

    /// ⟨a⟩_k: coefficient of τ^k in φ_a (zero for k < 0 or k > r·deg a).
    pub fn brac(&self, a: &Poly, k: i64) -> Poly {
        if k < 0 {
            return Poly::zero(&self.field);
        }
        self.phi_of(a).coeff(k)
    }

    /// φ_a truncated at τ-degree kmax, by Horner (no cache).
    pub fn phi_of_trunc(&self, a: &Poly, kmax: usize) -> TwistedPoly<PolyRing> {
        self.phi_theta().eval_poly_at(a, kmax)
    }

    /// The reduction φ̄_θ in F_f[τ].
    pub fn phi_bar_theta(&self, ring: &ResidueRing) -> TwistedPoly<ResidueRing> {
        self.phi_theta().reduce_mod(ring)
    }

    /// φ̄_a in F_f[τ], truncated at τ-degree kmax.
    pub fn phi_bar_of(&self, a: &Poly, ring: &ResidueRing, kmax: usize) -> TwistedPoly<ResidueRing> {
        self.phi_bar_theta(ring).eval_poly_at(a, kmax)
    }

    /// α_0..α_n with α_i(θ^(q^i) − θ) = Σ_j κ_j α_(i−j)^(q^j); each is checked against
    /// |α_j| ≤ q^(q^j(d_0/(q−1) − j/r)).
    pub fn exp_coeffs(&self, n: usize) -> Result<Vec<RatFunc>> {
        let mut c = self.caches.lock().expect("cache lock");
        let deg = self.field.degree();
        let t = Poly::theta(&self.field);
        while c.alpha.len() <= n {
            let i = c.alpha.len();
            let mut s = RatFunc::zero(&self.field);
            for j in 1..=i.min(self.rank()) {
                let term = c.alpha[i - j].pow_char_power(deg * j as u32).mul_poly(&self.kappa(j));
                s = &s + &term;
            }
            let den = &t.pow_char_power(deg * i as u32) - &t;
            let a = s.div_rf(&RatFunc::from(den)).expect("nonzero");
            self.check_alpha_bound(i, &a)?;
            c.alpha.push(a);
        }
        Ok(c.alpha[..=n].to_vec())
    }

    fn check_alpha_bound(&self, j: usize, a: &RatFunc) -> Result<()> {
        let Some(deg) = a.degree() else { return Ok(()) };
        let (q, r, d0) = (self.q() as i128, self.rank() as i128, self.d0() as i128);
        let lhs = deg as i128 * (q - 1) * r;
        let rhs = q.pow(j as u32) * (d0 * r - j as i128 * (q - 1));
        if lhs > rhs {
            return Err(Error::TheoremViolation(format!("|alpha_{j}| exceeds its size bound (deg {deg})")));
        }
        Ok(())
    }

    /// β_0..β_n with β_i(θ − θ^(q^i)) = Σ_j β_(i−j) κ_j^(q^(i−j)).
    pub fn log_coeffs(&self, n: usize) -> Vec<RatFunc> {
        let mut c = self.caches.lock().expect("cache lock");
        let deg = self.field.degree();
        let t = Poly::theta(&self.field);
        while c.beta.len() <= n {
            let i = c.beta.len();
            let mut s = RatFunc::zero(&self.field);
            for j in 1..=i.min(self.rank()) {
                let k = self.kappa(j).pow_char_power(deg * (i - j) as u32);
                s = &s + &c.beta[i - j].mul_poly(&k);
            }
            let den = &t - &t.pow_char_power(deg * i as u32);
            let b = s.div_rf(&RatFunc::from(den)).expect("nonzero");
            c.beta.push(b);
        }
        c.beta[..=n].to_vec()
    }

    /// B_i = β_i·L_i ∈ A for i ≤ n, via B_i = −Σ_j B_(i−j)(L_(i−1)/L_(i−j)) κ_j^(q^(i−j)).
    pub fn log_numerators(&self, n: usize) -> Vec<Poly> {
        let mut c = self.caches.lock().expect("cache lock");
        let deg = self.field.degree();
        let t = Poly::theta(&self.field);
        while c.log_num.len() <= n {
            let i = c.log_num.len();
            let mut s = Poly::zero(&self.field);
            // L_(i−1)/L_(i−j) = ∏_(k=i−j+1..i−1) (θ^(q^k) − θ)
            let mut ratio = Poly::one(&self.field);
            for j in 1..=i.min(self.rank()) {
                if j >= 2 {
                    let k = i - j + 1;
                    ratio = &ratio * &(&t.pow_char_power(deg * k as u32) - &t);
                }
                let kap = self.kappa(j);
                if kap.is_zero() {
                    continue;
                }
                let term = &(&c.log_num[i - j] * &ratio) * &kap.pow_char_power(deg * (i - j) as u32);
                s = &s + &term;
            }
            c.log_num.push(-s);
        }
        c.log_num[..=n].to_vec()
    }
}
