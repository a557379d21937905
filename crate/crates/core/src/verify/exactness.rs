//! Finite identities with no tolerance: Euler product against the smooth Dirichlet sum,
//! exp ∘ log = log ∘ exp = z through z^(q^4), and the closed form of S_1(x^m) when d_0 = q.

use rand::Rng;

use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::{Field, Poly, RatFunc, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::logalg::{LogAlgebra, MuTable};
use crate::lvalues::euler_vs_dirichlet;

/// Exact agreement for every prime-degree bound B ≤ depth and s ∈ {1, 2}.
fn euler_case(phi: &DrinfeldModule, depth: usize) -> Result<Case> {
    let mu = MuTable::build(phi, depth)?;
    let mut ok = true;
    let mut n = 0;
    for bound in 1..=depth {
        for s in 1..=2 {
            ok &= euler_vs_dirichlet(phi, &mu, bound, depth, s)?.agrees();
            n += 1;
        }
    }
    Ok(Case::new(format!("euler q={} {phi:?}", phi.q()), ok, n, format!("B = 1..={depth}, s = 1, 2, total degree <= {depth}")))
}

/// Σ_j α_j β_(i−j)^(q^j) and Σ_j β_j α_(i−j)^(q^j) vanish for 1 ≤ i ≤ n.
fn exp_log_case(phi: &DrinfeldModule, n: usize) -> Result<Case> {
    let field = phi.field();
    let deg = field.degree();
    let alpha = phi.exp_coeffs(n)?;
    let beta = phi.log_coeffs(n);
    let compose = |outer: &[RatFunc], inner: &[RatFunc], i: usize| {
        (0..=i).fold(RatFunc::zero(field), |acc, j| acc.add_rf(&outer[j].mul_rf(&inner[i - j].pow_char_power(deg * j as u32))))
    };
    let mut ok = true;
    for i in 0..=n {
        let want = if i == 0 { RatFunc::one(field) } else { RatFunc::zero(field) };
        ok &= compose(&alpha, &beta, i) == want && compose(&beta, &alpha, i) == want;
    }
    Ok(Case::new(format!("exp/log q={} {phi:?}", phi.q()), ok, 2 * (n as u64 + 1), format!("through z^(q^{n})")))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// The closed form of S_1(x^m) for rank 2, deg g ≤ q and 0 ≤ m ≤ q − 2.
pub fn s1_closed_form(phi: &DrinfeldModule, m: u64) -> XPoly {
    let field: &Field = phi.field();
    let q = phi.q();
    let g = phi.kappa(1);
    let t = Poly::theta(field);
    let b = |i: u64| Poly::constant(field, g.coeff(i as usize));
    let lead = RatFunc::new(-&g, &t.pow(q) - &t).expect("nonzero").add_rf(&RatFunc::from(b(q)));
    let mut out = XPoly::monomial(lead, m * q);
    for l in 1..=m {
        for i in (q - l)..=(q - 1) {
            let c = field.from_int(binom(m, l) as i64 * binom(l - 1, q - 1 - i) as i64 * if i % 2 == 0 { 1 } else { -1 });
            let term = (&b(i) * &t.pow(l + i - q)).scale(c);
            out = out.sub_x(&XPoly::from_poly_terms(field, [(m * q - l * (q - 1), term)]));
        }
    }
    out
}

fn s1_case(phi: &DrinfeldModule) -> Result<Case> {
    let q = phi.q();
    let alg = LogAlgebra::new(phi, 1, (q - 2) as u32)?;
    let mut ok = true;
    for m in 0..=q - 2 {
        let beta = XPoly::monomial(RatFunc::one(phi.field()), m);
        ok &= alg.s(&beta, 1)? == s1_closed_form(phi, m);
    }
    Ok(Case::new(format!("S_1 q={q} {phi:?}"), ok, q - 1, format!("m = 0..={}", q - 2)))
}

pub struct Exactness;

impl Suite for Exactness {
    fn name(&self) -> &'static str {
        "exactness"
    }

    fn describe(&self) -> &'static str {
        "Euler product = smooth Dirichlet sum exactly; exp and log are formal inverses through z^(q^4); closed-form S_1(x^m) for q in {5, 7}, d0 = q"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(9);
        let mut cases = Vec::new();

        let mut euler = Vec::new();
        for (q, depth) in [(2u64, 6usize), (3, 4)] {
            let f = gen::field(q)?;
            euler.push(DrinfeldModule::carlitz(&f));
            for r in 1..=cfg.rmax.min(3) {
                euler.push(gen::module(&mut rng, &f, r, 2));
            }
            cases.extend(run_cases(&euler, |m| format!("euler q={} {m:?}", m.q()), |m| euler_case(m, depth)));
            euler.clear();
        }

        let fields = gen::fields(cfg.qmax)?;
        let mods: Vec<DrinfeldModule> = (0..cfg.samples)
            .map(|n| {
                let f = &fields[n % fields.len()];
                let r = rng.gen_range(1..=cfg.rmax);
                gen::module(&mut rng, f, r, f.size() as usize)
            })
            .collect();
        cases.extend(run_cases(&mods, |m| format!("exp/log q={} {m:?}", m.q()), |m| exp_log_case(m, 4)));

        let mut s1 = Vec::new();
        for q in [5u64, 7] {
            let f = gen::field(q)?;
            for _ in 0..(cfg.samples / 4).max(1) {
                s1.push(gen::module_with_d0(&mut rng, &f, 2, q as usize));
            }
        }
        cases.extend(run_cases(&s1, |m| format!("S_1 q={} {m:?}", m.q()), s1_case));
        Ok(SuiteReport::new(self.name(), cases))
    }
}
