use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projconn"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_json_matches_golden() {
    let o = run(&[
        "verify",
        "ellipsoid",
        "--p",
        "2",
        "--q",
        "3",
        "--r",
        "4",
        "--json",
        "--parallel",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        include_str!("golden/verify_ellipsoid_2_3_4.json")
    );
}

#[test]
fn verify_text_matches_golden() {
    let o = run(&["verify", "sphere", "--p", "1", "--q", "1", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/verify_sphere_1_1_1.txt"));
}

#[test]
fn list_checks_matches_golden() {
    let o = run(&["report", "--list-checks"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/list_checks.txt"));
}

#[test]
fn text_output_is_uncolored_when_piped() {
    let o = Command::new(env!("CARGO_BIN_EXE_projconn"))
        .args(["verify", "sphere", "--p", "1", "--q", "1", "--r", "1"])
        .env_remove("NO_COLOR")
        .output()
        .unwrap();
    assert!(!stdout(&o).contains('\x1b'));
}

#[test]
fn sphere_reports_discrepancies_not_failures() {
    let o = run(&[
        "verify", "sphere", "--p", "1", "--q", "1", "--r", "1", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let discrepancies: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "discrepancy")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        discrepancies,
        ["D3M-display", "R13-display", "R23-display", "trace-display"]
    );
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn timings_flag_adds_elapsed() {
    let o = run(&[
        "verify",
        "sphere",
        "--p",
        "1",
        "--q",
        "1",
        "--r",
        "1",
        "--json",
        "--timings",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"][0]["elapsed_ms"].is_number());
    let o = run(&[
        "verify",
        "sphere",
        "--p",
        "1",
        "--q",
        "1",
        "--r",
        "1",
        "--timings",
    ]);
    assert!(stdout(&o).contains(" ms]"));
}

#[test]
fn sweep_counts() {
    let o = run(&["sweep", "ellipsoid", "--max", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["triples"], 1);

    let o = run(&["sweep", "sphere", "--max", "2", "--json", "--parallel", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 8);
    let order: Vec<(u64, u64, u64)> = reports
        .iter()
        .map(|r| {
            let p = &r["parameters"];
            (
                p["p"].as_u64().unwrap(),
                p["q"].as_u64().unwrap(),
                p["r"].as_u64().unwrap(),
            )
        })
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
    for r in reports {
        for name in ["P-involution", "M-idempotent"] {
            let c = r["checks"]
                .as_array()
                .unwrap()
                .iter()
                .find(|c| c["name"] == name)
                .unwrap();
            assert_eq!(c["status"], "pass");
        }
    }
}

#[test]
fn sweep_is_deterministic_across_parallelism() {
    let a = run(&["sweep", "sphere", "--max", "2", "--json", "--parallel", "1"]);
    let b = run(&["sweep", "sphere", "--max", "2", "--json", "--parallel", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn eval_examples() {
    let m = "x^2+y^2+z^2-1";
    for (expr, want) in [
        ("x^2+y^2+z^2", "1"),
        ("x*(x^2+y^2+z^2-1)", "0"),
        ("(y+i*z)*(y-i*z)+x^2", "1"),
    ] {
        let o = run(&["eval", expr, "--mod", m]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{want}\n"));
    }
    let o = run(&["eval", "u*v-1", "--mod", "u^2-v", "--vars", "u,v"]);
    assert_eq!(stdout(&o), "u*v-1\n");
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["verify", "ellipsoid", "--p", "1", "--q", "2", "--r", "2"],
        &["verify", "sphere", "--p", "0", "--q", "1", "--r", "1"],
        &["verify", "torus", "--p", "2", "--q", "2", "--r", "2"],
        &[
            "verify",
            "ellipsoid",
            "--p",
            "2",
            "--q",
            "2",
            "--r",
            "2",
            "--parallel",
            "0",
        ],
        &["sweep", "ellipsoid", "--max", "1"],
        &["eval", "x^", "--mod", "x^2-1"],
        &["eval", "x", "--mod", "x", "--vars", "x,i"],
        &["eval", "x", "--mod", "3"],
        &["report", "--list-checks", "--example", "torus"],
        &["frobnicate"],
        &[],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_report_position() {
    let o = run(&["eval", "x+*y", "--mod", "x^2-1"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("position 2"), "{err}");
}
