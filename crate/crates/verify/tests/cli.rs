use std::process::{Command, Output};

fn qverify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qverify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_ascending_terms() {
    let o = qverify(&["expand", "phi(1)", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + 2 q + 2 q^4");
    let o = qverify(&["expand", "root(alpha(), 2)", "-n", "3", "-g", "8"]);
    assert_eq!(stdout(&o).trim(), "4 q^(1/2) - 16 q^(3/2) + 56 q^(5/2)");
}

#[test]
fn expand_json_lists_exponent_coefficient_pairs() {
    let o = qverify(&["expand", "psi(1)*psi(1)", "-n", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "6");
    let terms: Vec<(String, String)> = serde_json::from_value(v["terms"].clone()).unwrap();
    let want = [("0", "1"), ("1", "2"), ("2", "1"), ("3", "2"), ("4", "2")];
    assert_eq!(terms, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn verify_single_record() {
    let o = qverify(&["verify", "R-MEQ5", "--order", "60", "--granularity", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS  R-MEQ5"));
    let o = qverify(&["verify", "R-NOPE"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_have_the_stable_fields() {
    let o = qverify(&["verify-all", "--id", "R-51", "--format", "json", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 2);
    let fields = ["id", "ref", "quote", "order", "status", "first_fail_exponent", "discrepancy", "elapsed_ms"];
    for r in &v {
        for f in fields {
            assert!(r.get(f).is_some(), "missing {f}");
        }
    }
    assert_eq!(v[0]["id"], "R-51");
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[1]["status"], "fail");
    assert_eq!(v[1]["first_fail_exponent"], "0");
    assert_eq!(v[1]["discrepancy"], "-1/16");
}

#[test]
fn text_and_json_agree_on_status() {
    let args = ["verify-all", "--id", "R-T42", "--order", "30"];
    let text = stdout(&qverify(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&qverify(&json_args).stdout).unwrap();
    for r in v {
        let id = r["id"].as_str().unwrap();
        let status = r["status"].as_str().unwrap().to_uppercase();
        let line = text.lines().find(|l| l.split_whitespace().nth(1) == Some(id)).unwrap();
        assert!(line.starts_with(&status), "{line} vs {status}");
    }
}

#[test]
fn bad_flags_exit_with_usage() {
    for args in [
        &["verify-all", "-g", "3"][..],
        &["expand", "1", "-n", "0"],
        &["frobnicate"],
        &["verify-all", "--format", "xml"],
    ] {
        let o = qverify(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("Usage") || !o.stderr.is_empty());
    }
}

#[test]
fn evaluation_errors_exit_one() {
    let o = qverify(&["expand", "phi(", "-n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qverify(&["expand", "1/(q - q)", "-n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn flagged_failures_keep_the_exit_code_zero() {
    let o = qverify(&["verify-all", "--id", "printed", "--order", "20", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("FAIL")).count() >= 8, "{out}");
}

#[test]
fn custom_registry_and_lint() {
    let dir = std::env::temp_dir().join(format!("qverify-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(
        &good,
        r#"[{"id":"X","ref":"r","quote":"q","lhs":"theta(x, x)","rhs":"phi(x)",
             "params":[[{"name":"x","sign":1,"exp_num":2,"exp_den":1}]],"order":30,"expected":"pass"},
            {"id":"Y","ref":"r","quote":"q","lhs":"phi(1)","rhs":"1",
             "params":[[]],"order":30,"expected":"pass"}]"#,
    )
    .unwrap();
    let reg = good.to_str().unwrap();
    assert_eq!(qverify(&["corpus-lint", "--registry", reg]).status.code(), Some(0));
    let o = qverify(&["verify-all", "--registry", reg]);
    assert_eq!(o.status.code(), Some(1), "expected-pass failure breaks the run");
    assert!(stdout(&o).contains("FAIL  Y"));
    assert_eq!(qverify(&["verify", "X", "--registry", reg]).status.code(), Some(0));
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"[{"id":"X","ref":"","quote":"","lhs":"theta(x, y)","rhs":"1","params":[[]],"order":5,"expected":"pass"}]"#,
    )
    .unwrap();
    let o = qverify(&["corpus-lint", "--registry", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unbound"));
    assert_eq!(qverify(&["corpus-lint"]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn numeric_samples() {
    let o = qverify(&["corpus-lint", "--numeric-q", "0.05", "--numeric-q", "0.1", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let o = qverify(&["corpus-lint", "--numeric-q", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
}
