//! End-to-end behavior of the `multitrig` binary: exit codes, printed
//! values, byte-determinism, and certificate round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multitrig"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("multitrig-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn values_catalan_digits() {
    let out = run(&["values", "beta", "2", "--digits", "18"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("0.915965594177219015"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn values_zeta3_digits() {
    let out = run(&["values", "zeta", "3", "--digits", "16"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1.202056903159594"));
}

#[test]
fn values_multicos_closed_form() {
    // log C_1(1/4) = (1/2) log 2 = 0.34657359027997265...
    let out = run(&["values", "multicos", "1", "0.25", "--digits", "20"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0.34657359027997265471"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["values", "zeta", "1"]).status.code(), Some(2));
    assert_eq!(run(&["values", "martian", "3"]).status.code(), Some(2));
    assert_eq!(run(&["values", "multicos", "0", "0.25"]).status.code(), Some(2));
    assert_eq!(run(&["values", "multisin", "2", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--which", "bogus", "--rmax", "4"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["approximate", "--alpha", "x?", "--basis", "multicos"]).status.code(),
        Some(2)
    );
}

#[test]
fn unreachable_tolerance_exits_one() {
    let out = run(&["verify", "--suite", "identities", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn full_suite_passes_end_to_end() {
    let out = run(&["verify", "--suite", "all"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(!text.contains("FAIL"));
    // identities, lemma battery, and resolutions all contribute lines
    assert!(text.contains("eq114[r=8]"));
    assert!(text.contains("lemma-battery"));
    assert!(text.contains("PASS resolution"));
}

#[test]
fn resolutions_suite_prints_four_winners() {
    let out = run(&["verify", "--suite", "resolutions"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS resolution"))
        .collect();
    assert_eq!(lines.len(), 4, "expected four resolution lines:\n{text}");
    for key in [
        "orr_interval",
        "lambda3_constant",
        "coslog_log2_term",
        "cot_indexing",
    ] {
        assert!(text.contains(key), "missing {key}");
    }
    assert!(text.contains("non-finite"), "divergent reading not reported");
}

#[test]
fn byte_determinism_values_and_tables() {
    let a = run(&["values", "zeta", "7", "--digits", "30"]);
    let b = run(&["values", "zeta", "7", "--digits", "30"]);
    assert_eq!(a.stdout, b.stdout);
    let t1 = tmp_path("det1.csv");
    let t2 = tmp_path("det2.csv");
    let a = run(&[
        "table", "--which", "lemma31", "--rmax", "4", "--format", "csv", "--out",
        t1.to_str().unwrap(),
    ]);
    let b = run(&[
        "table", "--which", "lemma31", "--rmax", "4", "--format", "csv", "--out",
        t2.to_str().unwrap(),
    ]);
    assert!(a.status.success() && b.status.success());
    let c1 = std::fs::read(&t1).unwrap();
    let c2 = std::fs::read(&t2).unwrap();
    assert!(!c1.is_empty());
    assert_eq!(c1, c2);
    let _ = std::fs::remove_file(t1);
    let _ = std::fs::remove_file(t2);
}

#[test]
fn table_eq114_has_seven_rows() {
    let path = tmp_path("eq114.csv");
    let out = run(&[
        "table", "--which", "eq114", "--rmax", "8", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines[0], "r,lhs,rhs,residual");
    assert_eq!(lines.len(), 8, "header plus 7 rows");
    for line in &lines[1..] {
        let residual: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual <= 1e-12);
    }
    let _ = std::fs::remove_file(path);
}

#[test]
fn table_empty_range_is_header_only() {
    let path = tmp_path("empty.csv");
    let out = run(&[
        "table", "--which", "eq1", "--rmax", "1", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content, "r,lhs,rhs,residual\n");
    let _ = std::fs::remove_file(path);
}

#[test]
fn table_json_format() {
    let path = tmp_path("eq1.json");
    let out = run(&[
        "table", "--which", "eq1", "--rmax", "4", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("[\n"));
    assert!(content.contains("\"r\": 2"));
    assert!(content.contains("\"r\": 4"));
    let _ = std::fs::remove_file(path);
}

#[test]
fn certificate_roundtrip_through_binary() {
    let path = tmp_path("cert.json");
    let out = run(&[
        "approximate",
        "--alpha",
        "1.41421356237309505",
        "--basis",
        "lupuWu",
        "--k0",
        "1",
        "--q",
        "1",
        "--n",
        "16",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));
    // coefficients match the odd-zeta formula applied to the emitted
    // polynomial: recompute through the library on the parsed file
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = multitrig::certificate::parse(&text).unwrap();
    for (_, c, elem) in &parsed.coefficients {
        assert!(elem.starts_with("zeta("));
        assert!(!c.denom().to_string().is_empty());
    }
    let verify = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert!(verify.status.success(), "{}", stdout(&verify));
    assert!(stdout(&verify).contains("match=true"));
    // rerun is byte-identical
    let path2 = tmp_path("cert2.json");
    let out2 = run(&[
        "approximate",
        "--alpha",
        "1.41421356237309505",
        "--basis",
        "lupuWu",
        "--k0",
        "1",
        "--q",
        "1",
        "--n",
        "16",
        "--out",
        path2.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&path2).unwrap());
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(path2);
}

#[test]
fn negative_alpha_certificate_roundtrip() {
    let path = tmp_path("neg.json");
    let out = run(&[
        "approximate", "--alpha", "-0.75", "--basis", "zetaBeta", "--k0", "2", "--q", "1",
        "--n", "12", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    // the eta/beta certificate reports the residual both with and without
    // the log-2 correction term
    assert!(stdout(&out).contains("residual-without-log2-term"));
    let verify = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert!(verify.status.success());
    let _ = std::fs::remove_file(path);
}

#[test]
fn zero_alpha_gives_zero_certificate() {
    let path = tmp_path("zero.json");
    let out = run(&[
        "approximate", "--alpha", "0", "--basis", "multicos", "--x", "0.25", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = multitrig::certificate::parse(&text).unwrap();
    assert!(parsed.coefficients.is_empty());
    assert_eq!(parsed.residual, 0.0);
    let _ = std::fs::remove_file(path);
}

#[test]
fn corrupt_certificate_fails_verification() {
    let path = tmp_path("bad.json");
    let out = run(&[
        "approximate", "--alpha", "0.5", "--basis", "lupuWu", "--n", "8", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    // corrupt one basis value
    let tampered = text.replacen("0.", "1.", 1);
    std::fs::write(&path, tampered).unwrap();
    let verify = run(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1));
    let _ = std::fs::remove_file(path);
}
