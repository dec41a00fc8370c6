//! End-to-end tests of the `nrdyn` binary: output contents, determinism and
//! the exit-code contract.

use std::process::{Command, Output};

fn nrdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nrdyn"))
        .args(args)
        .env_remove("NRDYN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_reports_omega_geometry() {
    let v = stdout_json(&nrdyn(&["analyze", "--a", "4", "--b", "2"]));
    assert_eq!(v["omega"]["center_x"], -0.5);
    assert_eq!(v["omega"]["rx"], 1.5);
    assert_eq!(v["omega"]["ry"], 2.5);
    assert_eq!(v["matrices"]["det_b"], 4.0);
    assert_eq!(v["partition"]["xs"].as_array().unwrap().len(), 13);
    assert_eq!(v["t14"]["involutory"], true);
    assert_eq!(v["t14"]["det"], 1);
    assert_eq!(v["vertex_images"]["zero_img"]["re"], 1.0);
}

#[test]
fn analyze_det_b_is_squared_difference() {
    let v = stdout_json(&nrdyn(&["analyze", "--a", "4.01", "--b", "2.5"]));
    let det_b = v["matrices"]["det_b"].as_f64().unwrap();
    assert!((det_b - 2.2801).abs() < 1e-12);
}

#[test]
fn analyze_json_round_trips() {
    let out = nrdyn(&["analyze", "--a", "4.01", "--b", "2.5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let re = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(text.trim_end(), re);
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        vec!["analyze", "--a", "2", "--b", "4"],
        vec!["analyze", "--a", "4", "--b", "0"],
        vec!["check", "--a", "-1", "--b", "-2"],
        vec!["itinerary", "--a", "4", "--b", "2", "--x0", "wat"],
        vec!["scan", "--a-range", "3:4", "--b-range", "1:2:0.5"],
        vec!["scan", "--a-range", "3:4:0.5", "--b-range", "2:1:0.5"],
        vec!["analyze", "--a", "4", "--b", "2", "--format", "svg"],
    ] {
        let out = nrdyn(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn partition_verification_passes() {
    let v = stdout_json(&nrdyn(&["partition", "--a", "4", "--b", "2"]));
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["verification"]["ordering_ok"], true);
    let roles = v["partition"]["roles"].as_array().unwrap();
    assert_eq!(roles[6], "critical:origin");
}

#[test]
fn itinerary_from_infinity() {
    let v = stdout_json(&nrdyn(&[
        "itinerary", "--a", "4", "--b", "2", "--x0", "inf", "--n", "3",
    ]));
    assert_eq!(v["orbit"][0], "inf");
    assert_eq!(v["orbit"][1], 1.0);
    assert_eq!(v["orbit"][2], 3.0);
    assert_eq!(v["interval"]["symbols"][0], "junction");
    assert_eq!(v["arc"]["symbols"][0], "junction");
}

#[test]
fn itinerary_with_zero_steps() {
    let v = stdout_json(&nrdyn(&[
        "itinerary", "--a", "4", "--b", "2", "--x0", "0.5", "--n", "0",
    ]));
    assert_eq!(v["interval"]["symbols"].as_array().unwrap().len(), 1);
    assert_eq!(v["orbit"].as_array().unwrap().len(), 1);
}

#[test]
fn itinerary_showcase_pair_is_periodic_in_both_encodings() {
    let v = stdout_json(&nrdyn(&["itinerary", "--a", "4.01", "--b", "2.5"]));
    assert_eq!(v["interval"]["periodicity"]["eventually_periodic"], true);
    assert_eq!(v["arc"]["periodicity"]["eventually_periodic"], true);
    assert_eq!(
        v["interval"]["periodicity"]["period"],
        v["arc"]["periodicity"]["period"]
    );
    assert_eq!(v["encodings_agree"], true);
}

#[test]
fn scan_csv_contract() {
    let args = [
        "scan",
        "--a-range",
        "3.9:4.12:0.11",
        "--b-range",
        "2.5:4.5:2",
        "--n",
        "3000",
    ];
    let out = nrdyn(&args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,status,preperiod,period");
    // grid order: b varies fastest
    assert!(lines[1].starts_with("3.9,2.5,"));
    assert!(lines[2].starts_with("3.9,4.5,skipped,,"));
    assert!(lines
        .iter()
        .any(|l| l.starts_with("4.01,2.5,periodic,") && l.ends_with(",5")));

    // byte-identical rerun, also across thread counts
    let again = nrdyn(&args);
    assert_eq!(out.stdout, again.stdout);
    let mut threaded_args: Vec<&str> = args.to_vec();
    threaded_args.extend(["--threads", "3"]);
    let threaded = nrdyn(&threaded_args);
    assert_eq!(out.stdout, threaded.stdout);
}

#[test]
fn scan_respects_threads_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_nrdyn"))
        .args([
            "scan",
            "--a-range",
            "4:4.2:0.2",
            "--b-range",
            "2:2.2:0.2",
            "--n",
            "500",
        ])
        .env("NRDYN_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_nrdyn"))
        .args(["scan", "--a-range", "4:4.2:0.2", "--b-range", "2:2.2:0.2"])
        .env("NRDYN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn check_passes_for_showcase_pairs() {
    for (a, b) in [("4", "2"), ("4.01", "2.5")] {
        let out = nrdyn(&["check", "--a", a, "--b", b]);
        let v = stdout_json(&out);
        assert_eq!(v["passed"], true, "({a},{b})");
    }
}

#[test]
fn check_negative_control_fails_with_exit_1() {
    let out = nrdyn(&["check", "--a", "4", "--b", "2", "--tol-ellipse", "1e-18"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let membership = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "ellipse-membership")
        .unwrap();
    assert_eq!(membership["passed"], false);
}

#[test]
fn plot_is_deterministic_svg() {
    let dir = std::env::temp_dir().join("nrdyn-plot-test");
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("one.svg");
    let p2 = dir.join("two.svg");
    let args1 = ["plot", "--a", "4", "--b", "2", "--out", p1.to_str().unwrap()];
    let args2 = ["plot", "--a", "4", "--b", "2", "--out", p2.to_str().unwrap()];
    assert!(nrdyn(&args1).status.success());
    assert!(nrdyn(&args2).status.success());
    let one = std::fs::read(&p1).unwrap();
    let two = std::fs::read(&p2).unwrap();
    assert_eq!(one, two);
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("</svg>"));
    assert_eq!(text.matches("<ellipse").count(), 2);
    assert!(text.contains(">S13<") && text.contains(">S1<"));
    assert!(text.contains("z(inf)") && text.contains("z(pole)"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn plot_unwritable_path_exits_4() {
    let out = nrdyn(&[
        "plot",
        "--a",
        "4",
        "--b",
        "2",
        "--out",
        "/nonexistent-dir/figure.svg",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn plot_with_orbit_polyline() {
    let out = nrdyn(&["plot", "--a", "4.01", "--b", "2.5", "--x0", "0", "--n", "40"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("<polyline"));
}
