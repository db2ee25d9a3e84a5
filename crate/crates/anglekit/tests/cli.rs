use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_anglekit"));
    c.env_remove("ANGLEKIT_THREADS");
    c
}

fn input(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("anglekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn approx(v: &Value, want: f64) {
    let got = v.as_f64().unwrap();
    assert!((got - want).abs() < 1e-12, "{got} vs {want}");
}

#[test]
fn check_psd_exit_codes() {
    let c = input("c.json", r#"{"n": 3, "entries": [1, 1, 0.1, 1, 1, 0.1, 0.1, 0.1, 1]}"#);
    let o = run(&["check-psd", c.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["schema"], 1);
    let bad = input("neg.json", r#"{"sym3": [-1, -1, -1]}"#);
    assert_eq!(code(&run(&["check-psd", bad.to_str().unwrap()])), 1);
    let cut = input("cut.json", r#"{"n": 2, "entries": [1, 0"#);
    let o = run(&["check-psd", cut.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&run(&["check-psd", "/nonexistent/m.json"])), 2);
}

#[test]
fn angles_tables() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = input("v.json", &format!(r#"{{"vectors": [[0, 0, 1], [{h}, 0, {h}], [0, 1, 0]]}}"#));
    let o = run(&["angles", v.to_str().unwrap(), "--kind", "theta"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let pairs = j["tables"]["theta"]["pairs"].as_array().unwrap();
    let pi = std::f64::consts::PI;
    for (p, want) in pairs.iter().zip([pi / 4.0, pi / 2.0, pi / 2.0]) {
        approx(&p["angle"], want);
    }
    assert_eq!(j["tables"]["theta"]["triangles"][0]["pass"], true);
    assert!(j["tables"].get("cap_theta").is_none());

    let o = run(&["angles", v.to_str().unwrap(), "--kind", "both"]);
    assert_eq!(json(&o)["tables"].as_object().unwrap().len(), 2);

    let same = input("same.json", r#"{"vectors": [[1, [0, 1]], [1, [0, 1]]]}"#);
    let j = json(&run(&["angles", same.to_str().unwrap()]));
    approx(&j["tables"]["theta"]["pairs"][0]["angle"], 0.0);
    approx(&j["tables"]["cap_theta"]["pairs"][0]["angle"], 0.0);

    let zero = input("zero.json", r#"{"vectors": [[0, 0], [1, 0]]}"#);
    assert_eq!(code(&run(&["angles", zero.to_str().unwrap()])), 2);
}

#[test]
fn complete_intervals() {
    for (a, b, lo, hi) in [("0", "0", -1.0, 1.0), ("0.5", "0.5", -0.5, 1.0), ("1", "0", 0.0, 0.0)] {
        let j = json(&run(&["complete", "--a", a, "--b", b]));
        approx(&j["c_minus"], lo);
        approx(&j["c_plus"], hi);
    }
    let o = run(&["complete", "--a", "-0.5", "--b", "0.5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("a,b,c_minus,c_plus"));
    assert_eq!(code(&run(&["complete", "--a", "1.5", "--b", "0"])), 2);
}

#[test]
fn rk_table() {
    let j = json(&run(&["rk", "--k", "2,10,100,1000", "--grid", "400"]));
    let rows = j["rows"].as_array().unwrap();
    approx(&rows[0]["closed_form"], 1.0);
    let ratios: Vec<f64> = rows.iter().map(|r| r["ratio"].as_f64().unwrap()).collect();
    assert!(ratios.windows(2).all(|w| w[0] > w[1]) && ratios[3] > 1.0);
    assert!((ratios[2] - 1.0025).abs() < 1e-4);
    assert_eq!(code(&run(&["rk", "--k", "1"])), 2);
    assert_eq!(code(&run(&["rk", "--k", "2.5"])), 2);
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "--seed", "5", "--samples", "300"];
    let one = bin().args(args).env("ANGLEKIT_THREADS", "1").output().unwrap();
    let three = bin().args(args).env("ANGLEKIT_THREADS", "3").output().unwrap();
    assert_eq!(code(&one), 0, "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, three.stdout);
    let j = json(&one);
    assert_eq!(j["summary"]["failed"], 0);
    assert_eq!(j["regressions_ok"], true);

    let csv = run(&["verify", "--seed", "5", "--samples", "50", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&csv.stdout).starts_with("section,family,suite"));
}

#[test]
fn verify_rejects_bad_config() {
    assert_eq!(code(&run(&["verify", "--samples", "0"])), 2);
    assert_eq!(code(&run(&["verify", "--samples", "10", "--tol", "-1"])), 2);
    assert_eq!(code(&run(&["verify", "--samples", "10", "--k", "0.5"])), 2);
    assert_eq!(code(&bin().args(["verify", "--samples", "10"]).env("ANGLEKIT_THREADS", "zero").output().unwrap()), 2);
}

#[test]
fn construct_from_factors() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let f = input(
        "factors.json",
        &format!(
            r#"{{"factors": [{{"n": 2, "entries": [1, 0, 0, 0]}}, {{"n": 2, "entries": [{h}, 0, 0, [0, {h}]]}}]}}"#
        ),
    );
    let o = run(&["construct", f.to_str().unwrap(), "--kind", "trace"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j = json(&o);
    assert_eq!(j["matrix"]["n"], 2);
    approx(&j["matrix"]["entries"][1][0], h);
    let o = run(&["construct", f.to_str().unwrap(), "--kind", "abs_trace"]);
    assert_eq!(code(&o), 0);

    let iso = input(
        "iso.json",
        r#"{"isometries": [{"rows": 2, "cols": 1, "entries": [1, 0]}, {"rows": 2, "cols": 1, "entries": [0, 1]}]}"#,
    );
    let j = json(&run(&["construct", iso.to_str().unwrap(), "--kind", "det"]));
    approx(&j["matrix"]["entries"][1], 0.0);

    let not_unit = input("bad.json", r#"{"factors": [{"n": 1, "entries": [2]}]}"#);
    assert_eq!(code(&run(&["construct", not_unit.to_str().unwrap(), "--kind", "trace"])), 2);
}

#[test]
fn check_fn_verdicts() {
    let o =
        run(&["check-fn", "--fn", r#"{"fn": "p_k", "k": 3}"#, "--property", "triangle_preserving", "--window", "0,10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdicts"][0]["pass"], true);

    let o = run(&["check-fn", "--fn", r#"{"fn": "power", "p": 2}"#, "--property", "subadditive", "--window", "0,3"]);
    assert_eq!(code(&o), 1);
    assert!(json(&o)["verdicts"][0]["witness"].is_array());

    let o = run(&[
        "check-fn",
        "--fn",
        r#"{"fn": "cos_r", "r": 2}"#,
        "--property",
        "cosine_addition",
        "--spacing",
        "chebyshev",
    ]);
    assert_eq!(code(&o), 0);

    let o = run(&[
        "check-fn",
        "--fn",
        r#"{"fn": "power", "p": 0.5}"#,
        "--property",
        "concave_implies_nondecreasing",
        "--window",
        "0,4",
    ]);
    assert_eq!(json(&o)["implication"]["outcome"], "holds");

    assert_eq!(code(&run(&["check-fn", "--fn", r#"{"fn": "p_k", "k": 3}"#])), 2);
    assert_eq!(code(&run(&["check-fn", "--fn", r#"{"fn": "tan"}"#])), 2);
    assert_eq!(code(&run(&["check-fn", "--fn", r#"{"fn": "identity"}"#, "--window", "0"])), 2);
    assert_eq!(
        code(&run(&["check-fn", "--fn", r#"{"fn": "identity"}"#, "--window", "0,1", "--property", "convex"])),
        2
    );
}

#[test]
fn usage_errors_and_output_file() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    let out = std::env::temp_dir().join(format!("anglekit-cli-{}-out.json", std::process::id()));
    let o = run(&["complete", "--a", "0", "--b", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(j["command"], "complete");
    std::fs::remove_file(out).ok();
}
