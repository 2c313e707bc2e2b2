//! End-to-end CLI checks: golden comparisons against the blessed sidecars
//! in `jobs/`, exit-code contract, and JSON determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chern"))
}

fn jobs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("jobs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn chern binary")
}

fn json_stdout(out: &Output) -> Value {
    assert!(
        !out.stdout.is_empty(),
        "no stdout; stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn strip_timings(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("timings");
    }
    v
}

fn golden(command: &[&str], job: &str) {
    let job_path = jobs_dir().join(job);
    let sidecar = job_path.with_extension("expected.json");
    let expected: Value =
        serde_json::from_slice(&std::fs::read(&sidecar).expect("sidecar exists"))
            .expect("sidecar is JSON");
    let mut args: Vec<&str> = vec!["--json"];
    args.extend_from_slice(command);
    let path_str = job_path.to_str().unwrap().to_string();
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.push(path_str);
    let out = bin().args(&full).output().expect("spawn");
    let got = strip_timings(json_stdout(&out));
    assert_eq!(got, expected, "report for {job} drifted from its sidecar");
}

#[test]
fn golden_corpus_reports() {
    for job in [
        "m2-plane.json",
        "deg4-plane.json",
        "non-cm-line.json",
        "cusp.json",
        "semigroup-456.json",
        "closure-x3y2.json",
    ] {
        golden(&["chern"], job);
    }
    golden(&["verify", "rees"], "principal-negative-control.json");
}

#[test]
fn corpus_coefficients() {
    for (job, expected) in [
        ("m2-plane.json", vec!["4", "1", "0"]),
        ("non-cm-line.json", vec!["1", "-1"]),
        ("closure-x3y2.json", vec!["6", "1", "0"]),
        ("deg4-plane.json", vec!["16", "6", "0"]),
    ] {
        let path = jobs_dir().join(job);
        let out = run(&["--json", "hilbert", path.to_str().unwrap()]);
        assert!(out.status.success());
        let v = json_stdout(&out);
        let coeffs: Vec<&str> =
            v["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        assert_eq!(coeffs, expected, "{job}");
    }
}

#[test]
fn exit_codes() {
    let m2 = jobs_dir().join("m2-plane.json");
    let m2 = m2.to_str().unwrap();

    let ok = run(&["chern", m2]);
    assert_eq!(ok.status.code(), Some(0));

    // hypothesis-not-met still exits 0.
    let neg = jobs_dir().join("principal-negative-control.json");
    let neg_out = run(&["verify", "rees", neg.to_str().unwrap()]);
    assert_eq!(neg_out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&neg_out.stdout).contains("hypothesis-not-met"));

    // input errors exit 2.
    assert_eq!(run(&["hilbert", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["closure", m2]).status.code(), Some(2));
    assert_eq!(run(&["verify", "not-a-theorem", m2]).status.code(), Some(2));

    // usage errors exit 2 (clap).
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_verdicts_on_corpus() {
    for (id, job, needle) in [
        ("rees", "cusp.json", "verified"),
        ("lipman", "cusp.json", "verified"),
        ("huneke-dim1", "cusp.json", "verified"),
        ("sally", "semigroup-456.json", "verified"),
        ("fundamental-lemma", "m2-plane.json", "verified"),
        ("modified-koszul", "m2-plane.json", "verified"),
        ("closure-dim2", "closure-x3y2.json", "verified"),
    ] {
        let path = jobs_dir().join(job);
        let out = run(&["verify", id, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{id} on {job}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.starts_with(&format!("{id}: {needle}")), "{id} on {job}: {text}");
    }
}

#[test]
fn json_reports_are_deterministic() {
    let path = jobs_dir().join("m2-plane.json");
    let a = strip_timings(json_stdout(&run(&["--json", "chern", path.to_str().unwrap()])));
    let b = strip_timings(json_stdout(&run(&["--json", "chern", path.to_str().unwrap()])));
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn global_flag_overrides() {
    let path = jobs_dir().join("m2-plane.json");
    let out = run(&["--json", "--max-n", "8", "hilbert", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["hilbert"].as_array().unwrap().len(), 8);
    // A different prime characteristic still gives the same coefficients.
    let out = run(&["--json", "--char", "101", "hilbert", path.to_str().unwrap()]);
    let v = json_stdout(&out);
    let coeffs: Vec<&str> =
        v["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, vec!["4", "1", "0"]);
    // A non-prime override is an input error.
    assert_eq!(
        run(&["--char", "100", "hilbert", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn fuzz_smoke() {
    let out = run(&["--seed", "9", "fuzz", "--count", "3", "--max-deg", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("3/3 consistent"));
    let empty = run(&["fuzz", "--count", "0"]);
    assert_eq!(empty.status.code(), Some(0));
}

#[test]
fn closure_subcommand_lists_terms() {
    let path = jobs_dir().join("closure-x3y2.json");
    let out = run(&["--max-n", "2", "closure", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("I_1 = (y^2, x^2*y, x^3)"), "{text}");
    assert!(text.contains("I_2 = (y^4, x^2*y^3, x^3*y^2, x^5*y, x^6)"), "{text}");
}
