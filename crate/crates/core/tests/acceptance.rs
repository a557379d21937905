//! End-to-end acceptance run: one line per criterion, then a single verdict.
//!
//! Every criterion maps to a verification suite run with the default configuration
//! (seed 0, precision 40, tolerance q^-30). A criterion passes when every case of its suite
//! passes, the suite covers the required number of configurations, and it finishes within
//! its time budget where one is set. Runs without the libtest harness so the criterion lines
//! are always printed.

use std::time::{Duration, Instant};

use logalg::verify::{run_suite, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    min_cases: usize,
    budget: Option<Duration>,
}

const MINUTE: Duration = Duration::from_secs(60);

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "q = 5 rank-2 closed forms for E(1,z), E(x,z)", suite: "golden", min_cases: 21, budget: Some(MINUTE) },
    Criterion { id: 2, title: "integrality and vanishing past i_max", suite: "logalg", min_cases: 50, budget: None },
    Criterion { id: 3, title: "bracket congruences mod f", suite: "congruences", min_cases: 20, budget: Some(MINUTE) },
    Criterion { id: 4, title: "unit count = c_f P_f(1)", suite: "frobenius", min_cases: 20, budget: Some(MINUTE) },
    Criterion { id: 5, title: "mu degree bounds and Carlitz mu = 1", suite: "mu", min_cases: 20, budget: None },
    Criterion { id: 6, title: "exp(L(phi^v, 0)) in A", suite: "taelman", min_cases: 11, budget: None },
    Criterion { id: 7, title: "twisted torsion identity", suite: "torsion", min_cases: 3, budget: None },
    Criterion { id: 8, title: "Euler product, exp/log inverse, S_1 closed form", suite: "exactness", min_cases: 3, budget: None },
];

fn main() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    let mut lines = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let line = match run_suite(c.suite, &cfg) {
            Ok(report) => {
                let elapsed = start.elapsed();
                let enough = report.cases.len() >= c.min_cases;
                let in_time = c.budget.is_none_or(|b| elapsed <= b);
                let ok = report.passed && enough && in_time;
                if !ok {
                    failed.push(c.id);
                    for case in report.failures() {
                        eprintln!("  criterion {} failed case {}: {}", c.id, case.label, case.note);
                    }
                }
                let mut why = Vec::new();
                if !enough {
                    why.push(format!("only {} cases, need {}", report.cases.len(), c.min_cases));
                }
                if !in_time {
                    why.push(format!("over the {:?} budget", c.budget.unwrap()));
                }
                format!(
                    "criterion {}: {} - {} [{}: {} cases, {} checks, {:.1}s]{}",
                    c.id,
                    if ok { "PASS" } else { "FAIL" },
                    c.title,
                    c.suite,
                    report.cases.len(),
                    report.checks,
                    elapsed.as_secs_f64(),
                    if why.is_empty() { String::new() } else { format!(" ({})", why.join("; ")) }
                )
            }
            Err(e) => {
                failed.push(c.id);
                format!("criterion {}: FAIL - {} [{}: error {e}]", c.id, c.title, c.suite)
            }
        };
        println!("{line}");
        lines.push(line);
    }
    println!("acceptance: {}/{} criteria pass", CRITERIA.len() - failed.len(), CRITERIA.len());
    if !failed.is_empty() {
        eprintln!("failed criteria {failed:?}:\n{}", lines.join("\n"));
        std::process::exit(1);
    }
}
