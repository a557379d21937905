//! |φ̄(F_f)| from the matrix of φ̄_θ on F_f against c_f·P_f(1), plus the Carlitz case
//! P_f = x − f, |C(F_f)| = f − 1.

use rand::Rng;

use super::{gen, run_cases, Case, Suite, SuiteReport, VerifyConfig};
use crate::algebra::factor::irreducibles_of_degree;
use crate::algebra::{Field, Poly};
use crate::drinfeld::DrinfeldModule;
use crate::error::Result;
use crate::frobenius::{frobenius_data, unit_count};

/// c_f·P_f(1), read off the coefficient list of P_f.
fn cf_p_at_one(field: &Field, c_f: crate::algebra::Fe, p: &[Poly]) -> Poly {
    p.iter().fold(Poly::zero(field), |acc, c| &acc + c).scale(c_f)
}

fn check_module(phi: &DrinfeldModule, dmax: usize) -> Result<Case> {
    let field = phi.field();
    let (mut ok, mut checks, mut bad) = (true, 0, 0);
    for d in 1..=dmax {
        for f in irreducibles_of_degree(field, d) {
            let data = frobenius_data(phi, &f)?;
            if data.r0 == 0 {
                // φ̄ degenerates to θ; there is no Frobenius to compare with
                bad += 1;
                continue;
            }
            ok &= unit_count(phi, &f)? == cf_p_at_one(field, data.c_f, &data.p);
            checks += 1;
        }
    }
    Ok(Case::new(format!("q={} {phi:?}", phi.q()), ok, checks, format!("{checks} primes, {bad} with r0 = 0 skipped")))
}

fn check_carlitz(field: &Field, dmax: usize) -> Result<Case> {
    let c = DrinfeldModule::carlitz(field);
    let (mut ok, mut checks) = (true, 0);
    for d in 1..=dmax {
        for f in irreducibles_of_degree(field, d) {
            let data = frobenius_data(&c, &f)?;
            ok &= data.p == vec![-&f, Poly::one(field)];
            ok &= unit_count(&c, &f)? == &f - &Poly::one(field);
            checks += 2;
        }
    }
    Ok(Case::new(format!("carlitz q={}", field.size()), ok, checks, "P_f = x - f and |C(F_f)| = f - 1"))
}

pub struct FrobeniusSuite;

impl Suite for FrobeniusSuite {
    fn name(&self) -> &'static str {
        "frobenius"
    }

    fn describe(&self) -> &'static str {
        "matrix-oracle |phi(F_f)| = c_f P_f(1) at every prime of degree <= dmax; Carlitz P_f = x - f"
    }

    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport> {
        let mut rng = cfg.rng(5);
        let fields = gen::fields(cfg.qmax)?;
        let mods: Vec<DrinfeldModule> = (0..cfg.samples)
            .map(|n| {
                let field = &fields[n % fields.len()];
                let r = rng.gen_range(1..=cfg.rmax);
                let dk = rng.gen_range(0..=field.size() as usize);
                gen::module(&mut rng, field, r, dk)
            })
            .collect();
        let mut cases = run_cases(&fields, |f| format!("carlitz q={}", f.size()), |f| check_carlitz(f, cfg.dmax));
        cases.extend(run_cases(&mods, |m| format!("q={} {m:?}", m.q()), |m| check_module(m, cfg.dmax)));
        Ok(SuiteReport::new(self.name(), cases))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carlitz_f2() {
        let f = gen::field(2).unwrap();
        assert!(check_carlitz(&f, 3).unwrap().ok);
    }

    #[test]
    fn bad_reduction_is_skipped() {
        let f = gen::field(3).unwrap();
        let phi = DrinfeldModule::new(&f, vec![Poly::theta(&f)]).unwrap();
        let case = check_module(&phi, 1).unwrap();
        assert!(case.ok);
        assert_eq!(case.note, "2 primes, 1 with r0 = 0 skipped");
    }
}
