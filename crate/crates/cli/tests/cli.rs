use std::process::{Command, Output};

use logalg::json::Document;
use serde_json::Value;

const GOLDEN: &[&str] = &["--q", "5", "--kappa", "T^5+2*T^4,T"];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logalg")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> (String, Value) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap();
    (text, v)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn logalg_on_the_q5_family() {
    let (_, v) = ok_json(&[GOLDEN, &["logalg", "--beta", "1"]].concat());
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "logalg");
    assert_eq!(v["result"]["text"], "z + z^5");
    // z·1 + z^5·b_5 with b_5 = 1
    assert_eq!(v["result"]["poly"], serde_json::json!([[1, [[0, [[1]]]]], [5, [[0, [[1]]]]]]));

    let (_, v) = ok_json(&[GOLDEN, &["logalg", "--beta", "x", "--strategy", "exp-sum"]].concat());
    assert_eq!(v["result"]["text"], "x*z + (x^5+3*x)*z^5");
    assert_eq!(v["result"]["strategy"], "exp-sum");
    let e = v["result"]["E"].as_array().unwrap();
    assert_eq!(e.len(), v["result"]["i_max"].as_u64().unwrap() as usize + 3);
}

#[test]
fn zero_leading_coefficient_is_rejected() {
    let out = run(&["--q", "5", "--kappa", "0", "logalg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rank leading coefficient must be nonzero"));
}

#[test]
fn non_dual_series_rejects_s_below_one() {
    let out = run(&[GOLDEN, &["lvalue", "--s", "-1"]].concat());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("outside the convergence range"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["logalg"],
        vec!["--q", "6", "--kappa", "1", "logalg"],
        vec!["--q", "5", "--kappa", "T^2+", "logalg"],
        vec!["--q", "5", "--kappa", "T", "charpoly", "--f", "T^2+1"],
        vec!["--q", "5", "--kappa", "T", "lvalue", "--char", "T,1"],
        vec!["--bogus"],
        vec!["verify", "nope"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).contains("error"), "{args:?}");
    }
    assert!(stderr(&run(&["--q", "5", "--kappa", "T^2+", "logalg"])).contains("position"));
}

#[test]
fn carlitz_charpoly() {
    let (_, v) = ok_json(&["--q", "2", "--kappa", "1", "charpoly", "--f", "T^2+T+1"]);
    let r = &v["result"];
    assert_eq!(r["r0"], 1);
    // P = x − f = x + T^2 + T + 1 in characteristic 2
    assert_eq!(r["P"], serde_json::json!([[[1], [1], [1]], [[1]]]));
    assert_eq!(r["unit_count"], serde_json::json!([[0], [1], [1]]));
}

#[test]
fn mu_listing() {
    let (_, v) = ok_json(&["--q", "3", "--kappa", "T+1,1", "mu", "--a", "T,T+1,T+2,T^2+1"]);
    let vals = v["result"]["values"].as_array().unwrap();
    // μ(T + c) = κ_1(−c): 1, 0, 2
    let mu: Vec<&Value> = vals.iter().map(|p| &p[1]).collect();
    assert_eq!(mu[0], &serde_json::json!([[1]]));
    assert_eq!(mu[1], &serde_json::json!([]));
    assert_eq!(mu[2], &serde_json::json!([[2]]));
    let out = run(&["--q", "3", "--kappa", "T+1,1", "mu", "--a", "2*T"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn taelman_lvalue() {
    let (_, v) = ok_json(&[GOLDEN, &["--prec", "30", "lvalue", "--dual"]].concat());
    let r = &v["result"];
    assert_eq!(r["kind"], "dual");
    assert_eq!(r["series"]["e"], 1);
    assert_eq!(r["series"]["err_exp"], -30);
    assert_eq!(r["exp"]["nearest_A"], serde_json::json!([[2]]));
    assert_eq!(r["exp"]["dist"]["kind"], "at_most");
    assert!(r["exp"]["dist"]["exp"].as_i64().unwrap() <= -30);
}

#[test]
fn twisted_lvalue() {
    let (_, v) = ok_json(&["--q", "3", "--kappa", "1", "--prec", "20", "lvalue", "--dual", "--char", "T,1"]);
    let r = &v["result"];
    assert_eq!(r["kind"], "twisted");
    assert_eq!(r["character"], serde_json::json!([[[0], [1]], 1]));
    assert_eq!(r["dist"]["kind"], "exact");
}

#[test]
fn output_round_trips_and_is_deterministic() {
    let args = [GOLDEN, &["logalg", "--beta", "x^2+T"]].concat();
    let (text, _) = ok_json(&args);
    let doc = Document::from_json(&text).unwrap();
    assert_eq!(doc.to_json() + "\n", text);
    let (one_job, _) = ok_json(&[&["--jobs", "1"], args.as_slice()].concat());
    assert_eq!(one_job, text);

    let verify = ["verify", "congruences", "--qmax", "5", "--dmax", "3"];
    let (a, v) = ok_json(&verify);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(Document::from_json(&a).unwrap().to_json() + "\n", a);
    let (b, _) = ok_json(&[&["--jobs", "1"], verify.as_slice()].concat());
    assert_eq!(a, b);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("logalg-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&["--q", "2", "--kappa", "1", "--output", p, "charpoly", "--f", "T"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(Document::from_json(&text).is_ok());
}

#[test]
fn falsified_verification_exits_one() {
    // precision 40 cannot certify agreement to q^-100
    let out = run(&["verify", "taelman", "--samples", "1", "--tolerance", "100"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], false);
}
