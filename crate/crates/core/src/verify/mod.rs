//! Verification suites: seeded, exact (or tolerance-pinned) checks of the library against
//! independent oracles, collected behind a trait-object registry.

mod congruences;
mod exactness;
mod frob;
pub mod gen;
mod golden;
mod logalg;
mod mu;
mod numeric;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use congruences::Congruences;
pub use exactness::Exactness;
pub use frob::FrobeniusSuite;
pub use golden::Golden;
pub use logalg::{LogAlgSuite, StarSums};
pub use mu::MuSuite;
pub use numeric::{Taelman, Torsion};

/// Knobs shared by every suite. Suites read the fields that apply to them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Largest field size q.
    pub qmax: u64,
    /// Largest prime degree for per-prime checks.
    pub dmax: usize,
    /// Largest rank.
    pub rmax: usize,
    /// Random modules per suite.
    pub samples: usize,
    /// Configurations in the log-algebraicity corpus.
    pub corpus: usize,
    /// Degree bound for the μ structure checks.
    pub mu_depth: usize,
    pub seed: u64,
    /// ∞-adic working precision for numeric suites.
    pub prec: i64,
    /// Required agreement q^(−tolerance) in numeric suites.
    pub tolerance: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { qmax: 5, dmax: 3, rmax: 3, samples: 20, corpus: 54, mu_depth: 6, seed: 0, prec: 40, tolerance: 30 }
    }
}

impl VerifyConfig {
    /// Random stream for one suite, independent of the order suites run in.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn validate(&self) -> Result<()> {
        if self.qmax < 2 || self.dmax == 0 || self.rmax == 0 {
            return Err(Error::InvalidArgument("need qmax >= 2, dmax >= 1 and rmax >= 1".into()));
        }
        Ok(())
    }
}

/// One configuration inside a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub label: String,
    pub ok: bool,
    /// Individual identities checked.
    pub checks: u64,
    pub note: String,
}

impl Case {
    pub fn new(label: impl Into<String>, ok: bool, checks: u64, note: impl Into<String>) -> Case {
        Case { label: label.into(), ok, checks, note: note.into() }
    }

    /// A case whose computation raised an error; that counts as a falsification.
    pub fn failed(label: impl Into<String>, err: &Error) -> Case {
        Case::new(label, false, 1, format!("error: {err}"))
    }

    fn from_result(label: String, r: Result<Case>) -> Case {
        r.unwrap_or_else(|e| Case::failed(label, &e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn new(suite: &str, cases: Vec<Case>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            passed: cases.iter().all(|c| c.ok),
            checks: cases.iter().map(|c| c.checks).sum(),
            cases,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.ok)
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig) -> Result<SuiteReport>;
}

/// Every registered suite, in a fixed order.
pub fn suites() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(Golden),
        Box::new(LogAlgSuite),
        Box::new(StarSums),
        Box::new(Congruences),
        Box::new(FrobeniusSuite),
        Box::new(MuSuite),
        Box::new(Taelman),
        Box::new(Torsion),
        Box::new(Exactness),
    ]
}

pub fn suite(name: &str) -> Result<Box<dyn Suite>> {
    suites().into_iter().find(|s| s.name() == name).ok_or_else(|| {
        let known: Vec<_> = suites().iter().map(|s| s.name()).collect();
        Error::InvalidArgument(format!("unknown suite '{name}' (known: {})", known.join(", ")))
    })
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    suite(name)?.run(cfg)
}

/// Runs independent jobs in parallel and keeps their order, so reports are byte-stable at
/// any thread count.
pub(crate) fn run_cases<T: Sync>(jobs: &[T], label: impl Fn(&T) -> String + Sync, f: impl Fn(&T) -> Result<Case> + Sync) -> Vec<Case> {
    jobs.par_iter().map(|j| Case::from_result(label(j), f(j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry() {
        let names: Vec<_> = suites().iter().map(|s| s.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(suite("congruences").is_ok());
        assert!(suite("nope").is_err());
        let bad = VerifyConfig { qmax: 1, ..VerifyConfig::default() };
        assert!(run_suite("golden", &bad).is_err());
    }

    #[test]
    fn streams_differ() {
        use rand::Rng;
        let cfg = VerifyConfig::default();
        let (a, b): (u64, u64) = (cfg.rng(1).gen(), cfg.rng(2).gen());
        assert_ne!(a, b);
        assert_eq!(a, cfg.rng(1).gen::<u64>());
    }
}
