use std::process::{Command, Output};

use serde_json::Value;

fn weilcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilcheck")).args(args).env_remove("WEILCHECK_Q").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn find<'a>(report: &'a Value, check: &str) -> Vec<&'a Value> {
    report["records"].as_array().unwrap().iter().filter(|r| r["check"] == check).collect()
}

#[test]
fn weil_n2_q2_report() {
    let out = weilcheck(&["--suite", "weil", "--n", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let fields = ["check", "anchor", "params", "expected", "actual", "status"];
    for rec in r["records"].as_array().unwrap() {
        let keys: Vec<&str> = rec.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), fields.len());
        assert!(fields.iter().all(|f| keys.contains(f)));
        assert_eq!(rec["status"], "PASS", "{rec}");
    }
    let swap = find(&r, "trace at coordinate swap");
    assert_eq!(swap[0]["actual"], "-2");
    assert_eq!(find(&r, "trace").len(), 9);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn howe_n1_reports_zero_lift_literally() {
    let out = weilcheck(&["--suite", "howe", "--n", "1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let z = find(&r, "theta zero lift");
    assert_eq!(z.len(), 1);
    assert_eq!((z[0]["expected"].as_str(), z[0]["actual"].as_str(), z[0]["status"].as_str()), (Some("0"), Some("2"), Some("FAIL")));
    for c in ["<chi,chi>_Sp by characters", "<chi,chi>_Sp by orbits"] {
        assert_eq!(find(&r, c)[0]["actual"], "5");
    }
}

#[test]
fn invalid_input_exit_codes() {
    assert_eq!(weilcheck(&["--q", "6"]).status.code(), Some(2));
    assert_eq!(weilcheck(&["--n", "0"]).status.code(), Some(2));
    assert_eq!(weilcheck(&["--q", "2", "--psi", "2"]).status.code(), Some(2));
    assert_eq!(weilcheck(&["--suite", "nope"]).status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_weilcheck")).env("WEILCHECK_Q", "6").output().unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn budget_skips_and_strict() {
    let args = ["--suite", "weil", "--n", "3", "--q", "2", "--budget", "100"];
    let out = weilcheck(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["summary"]["skipped"].as_u64().unwrap() > 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(weilcheck(&strict).status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--suite", "all", "--n", "2", "--q", "2", "--seed", "7"];
    let a = weilcheck(&args);
    let b = weilcheck(&args);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timing").is_none());
    assert!(json(&weilcheck(&["--suite", "lusztig", "--timing"])).get("timing").is_some());
}

#[test]
fn q4_runs_and_csv_has_tables_only() {
    let out = weilcheck(&["--suite", "weil", "--n", "1", "--q", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,anchor,params,expected,actual,status"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|l| l.contains(",weil-trace,") || l.contains(",isotypic-dimension,")));
}

#[test]
fn writes_out_file() {
    let path = std::env::temp_dir().join(format!("weilcheck-{}.txt", std::process::id()));
    let out = weilcheck(&["--suite", "lusztig", "--n", "2", "--q", "2", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("rm_dim unitary"));
    assert!(text.lines().last().unwrap().starts_with("summary:"));
}
