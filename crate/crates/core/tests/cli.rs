use fourier_eigen::cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str], cache: &std::path::Path) -> (i32, String, String) {
    let mut argv = vec!["fourier-eigen", "--cache-dir", cache.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn solve_reports_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["solve", "--dim", "24", "--sign", "plus"], dir.path());
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    let p = &v["result"]["polynomials"];
    assert_eq!(p["P"]["coefficients"], serde_json::json!(["-3528", "1"]));
    assert_eq!(p["Q"]["coefficients"], serde_json::json!(["1"]));
    assert_eq!(p["R"]["coefficients"], serde_json::json!(["1800", "1"]));
    assert_eq!(v["config"]["trunc"], 64);
    assert_eq!(v["config"]["precision"], 256);
    assert_eq!(v["result"]["last_sign_change"], "sqrt(4)");
    assert!(dir.path().join("solutions").read_dir().unwrap().count() == 1);
    let (_, again, _) = call(&["solve", "--dim", "24", "--sign", "plus"], dir.path());
    assert_eq!(out, again);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = call(&["solve", "--dim", "10"], dir.path());
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("dimension 10"));
    assert_eq!(call(&["solve", "--dim", "8", "--sign", "zero"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["solve"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "--dim", "8", "--origin-zero"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["solve", "--dim", "8", "--sign", "plus", "--lower-depth"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["eval", "--dim", "8", "--grid", "2:1:0.5"], dir.path()).0, EXIT_USAGE);
    assert_eq!(call(&["dump-forms", "--generator", "E5"], dir.path()).0, EXIT_USAGE);
}

#[test]
fn functional_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["verify", "--dim", "12", "--sign", "minus", "--check", "functional"], dir.path());
    assert_eq!(code, EXIT_OK);
    let v = json(&out);
    assert_eq!(v["result"]["passed"], true);
    assert!(v["result"]["details"]["max_residual"].as_f64().unwrap() < 1e-20);
}

#[test]
fn other_checks() {
    let dir = tempfile::tempdir().unwrap();
    for check in ["orders", "ode", "cross", "positivity"] {
        for sign in ["plus", "minus"] {
            let (code, out, err) = call(&["verify", "--dim", "16", "--sign", sign, "--check", check, "--trunc", "24"], dir.path());
            assert_eq!(code, EXIT_OK, "{check} {sign}: {err}");
            assert_eq!(json(&out)["result"]["passed"], true);
        }
    }
    let (code, out, _) = call(&["verify", "--dim", "16", "--sign", "minus", "--lower-depth", "--check", "orders"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["details"]["depth"], 1);
}

#[test]
fn failed_verification_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // Too short a truncation for the remainder tolerance at these sample points.
    let (code, _, err) = call(&["verify", "--dim", "24", "--sign", "plus", "--check", "functional", "--trunc", "6"], dir.path());
    assert_eq!(code, EXIT_FAILED, "{err}");
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["table", "--sign", "plus", "--from", "8", "--to", "88"], dir.path());
    assert_eq!(code, EXIT_OK);
    let rows = json(&out)["result"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0]["d"], 8);

    let (code, out, _) = call(&["table", "--from", "12", "--to", "8"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"], serde_json::json!([]));

    let csv = dir.path().join("minus.csv");
    let (code, _, _) = call(&["table", "--sign", "minus", "--from", "4", "--to", "92", "--out", csv.to_str().unwrap()], dir.path());
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("d,sign,n,ell,k,n_pm,"));
    assert_eq!(text.lines().count(), 24);
    assert!(text.contains("12,minus,-1,1,4,1,\"0\",\"j + 768\",\"-256\",sqrt(2)"));
}

#[test]
fn eval_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let (code, _, _) = call(&["eval", "--dim", "8", "--r", "0.5,1.5,3", "--out", path.to_str().unwrap()], dir.path());
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("r,F(r),residual"));
    assert_eq!(text.lines().count(), 4);
    let (code, out, _) = call(&["eval", "--dim", "8", "--grid", "0:1:0.25"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn positivity_and_forms() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["positivity", "--from", "8", "--to", "16"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"].as_array().unwrap().len(), 5);
    let (code, out, _) = call(&["dump-forms", "--generator", "E4", "--trunc", "3"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert_eq!(json(&out)["result"]["E4"]["coeffs"], serde_json::json!(["1/1", "240/1", "2160/1"]));
    assert!(dir.path().join("E4-3.json").exists());
}

#[test]
fn artifacts_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--dim", "8", "--sign", "plus", "--check", "functional"];
    let (_, a, _) = call(&args, dir.path());
    let (_, b, _) = call(&args, dir.path());
    assert_eq!(a, b);
    assert_eq!(json(&a)["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn help_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["--help"], dir.path());
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dump-forms"));
}
