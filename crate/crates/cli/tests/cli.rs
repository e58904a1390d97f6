use std::process::{Command, Output};

use fracineq::verify::{InequalityReport, ReasonCode, Status};

fn fracineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracineq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_fractional_chain_json() {
    let o = fracineq(&["verify", "--theorem", "eq16", "--f", "f=power:2@[0,1]", "--alpha", "1", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = InequalityReport::from_json(&text).unwrap();
    let want = [0.25, 1.0 / 3.0, 0.5];
    for (g, w) in r.side_values().iter().zip(want) {
        assert!((g - w).abs() < 1e-12);
    }
    assert_eq!(r.to_json() + "\n", text);
}

#[test]
fn divergent_moment_exits_three() {
    let o = fracineq(&[
        "verify",
        "--theorem",
        "thm_main",
        "--h",
        "h=recip",
        "--alpha",
        "1",
        "--p",
        "2",
        "--f",
        "f=power:2@[0,1]",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let r = InequalityReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Inapplicable);
    assert_eq!(r.reason.unwrap().code, ReasonCode::DivergentHMoment);
}

#[test]
fn selftest_passes() {
    let o = fracineq(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("quadcore:") && text.contains("fracint:"), "{text}");
    let o = fracineq(&["selftest", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn usage_errors_exit_one() {
    let o = fracineq(&["verify", "--theorem", "eq16", "--f", "f=power:2@[0,1]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--alpha"));
    let o = fracineq(&["verify", "--theorem", "eq16", "--f", "f=power:@[0,1]", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 8"));
    let o = fracineq(&["verify", "--theorem", "eq99", "--f", "f=exp@[0,1]"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_csv_is_stable() {
    let args = [
        "sweep",
        "--theorem",
        "thm_main",
        "--f",
        "f=power:2@[0,1]",
        "--h",
        "h=id",
        "--alpha",
        "0.5",
        "--param",
        "p",
        "--values",
        "1.5,1.9,1.99,2",
        "--output",
        "csv",
    ];
    let a = fracineq(&args);
    let b = fracineq(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(3));
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "param,fractional_pair,moment_bound,holder_bound,moment_bound-fractional_pair,holder_bound-moment_bound,status,quad_error"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1.5,") && lines[1].contains(",holds,"));
    assert!(lines[4].starts_with("2.0,,,,,,inapplicable,"));
}

#[test]
fn class_checks() {
    let o = fracineq(&["check", "--f", "f=power:0.5@[0,1]", "--h", "h=id", "--output", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["witness"]["kind"], "triple");
    let o = fracineq(&["check", "--f", "f=power:2@[0,1]", "--h", "h=pow:0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fracineq(&["check", "--superadditive", "--h", "h=pow:0.5", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("superadditive"));
}

#[test]
fn search_is_thread_count_invariant() {
    let args =
        ["search", "--theorem", "eq16", "--families", "power", "--budget", "40", "--seed", "7", "--output", "json"];
    let a = fracineq(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = Command::new(env!("CARGO_BIN_EXE_fracineq")).args(args).env("FRACINEQ_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["min_slack"].as_f64().unwrap() >= -1e-8);
    assert_eq!(v["n_evaluated"].as_u64().unwrap() + v["n_inapplicable"].as_u64().unwrap(), 40);
}

#[test]
fn out_path() {
    let path = std::env::temp_dir().join(format!("fracineq-cli-test-{}.json", std::process::id()));
    let o = fracineq(&[
        "verify",
        "--theorem",
        "lemma1",
        "--f",
        "f=exp@[0,1]",
        "--alpha",
        "0.5",
        "--output",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r = InequalityReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(r.slacks[0].value.abs() < 1e-8);
    std::fs::remove_file(path).unwrap();
}
