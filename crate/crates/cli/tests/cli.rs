//! End-to-end tests of the `torica` binary: exit codes, report shapes,
//! golden values, and determinism across thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_torica")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary()).args(args).env_remove("TORICA_THREADS").output().expect("binary runs")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(binary())
        .args(args)
        .env("TORICA_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn write_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

struct Fixtures {
    _dir: tempfile::TempDir,
    plane: PathBuf,
    quadric: PathBuf,
    blown_quadric: PathBuf,
    cubic: PathBuf,
    quartic: PathBuf,
    bidegree_two_three: PathBuf,
    double_anticanonical: PathBuf,
    not_ample: PathBuf,
    bad_fan: PathBuf,
    malformed: PathBuf,
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let at = dir.path();
    Fixtures {
        plane: write_file(at, "plane.json", r#"{"rays": [[1, 0], [0, 1], [-1, -1]]}"#),
        quadric: write_file(at, "quadric.json", r#"{"profile": [0, 0, 0, 0]}"#),
        blown_quadric: write_file(
            at,
            "blown_quadric.json",
            r#"{"rays": [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]]}"#,
        ),
        cubic: write_file(at, "cubic.json", r#"{"coefficients": [0, 0, 3]}"#),
        quartic: write_file(at, "quartic.json", r#"{"coefficients": [0, 0, 4]}"#),
        bidegree_two_three: write_file(at, "l23.json", r#"{"coefficients": [0, 0, 2, 3]}"#),
        double_anticanonical: write_file(
            at,
            "minus2k.json",
            r#"{"coefficients": [2, 2, 2, 2, 2]}"#,
        ),
        not_ample: write_file(at, "notample.json", r#"{"coefficients": [0, 0, -1]}"#),
        bad_fan: write_file(at, "bad.json", r#"{"rays": [[1, 0], [0, 1], [1, 1]]}"#),
        malformed: write_file(at, "broken.json", "not json at all"),
        _dir: dir,
    }
}

#[test]
fn fan_validate_accepts_good_fans() {
    let f = fixtures();
    let out = run(&["fan", "validate", f.plane.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("\"valid\": true"));

    let out = run(&["fan", "validate", f.quadric.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fan_validate_rejects_bad_fans_with_exit_two() {
    let f = fixtures();
    let out = run(&["fan", "validate", f.bad_fan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("positively oriented"), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_input_is_a_config_error() {
    let f = fixtures();
    let out = run(&["fan", "validate", f.malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["fan", "validate", "/definitely/not/a/real/path.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["fan", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("torica"));
}

#[test]
fn fan_info_reports_plane_invariants() {
    let f = fixtures();
    let out = run(&["fan", "info", f.plane.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"euler\": 3"));
    assert!(text.contains("\"k_square\": \"9\""));
    assert!(text.contains("\"k_square_identity\": true"));
    assert!(text.contains("\"picard_rank\": 1"));
}

#[test]
fn divisor_check_reports_positivity() {
    let f = fixtures();
    let out =
        run(&["divisor", "check", f.plane.to_str().unwrap(), f.cubic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"ample\": true"));
    assert!(text.contains("\"sectional_genus\": \"1\""));

    let out =
        run(&["divisor", "check", f.plane.to_str().unwrap(), f.not_ample.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "check is a report, not a gate");
    assert!(stdout(&out).contains("\"ample\": false"));
}

#[test]
fn adjoin_classifies_the_anticanonical_plane() {
    let f = fixtures();
    let out = run(&["adjoin", f.plane.to_str().unwrap(), f.cubic.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"length\": 0"));
    assert!(text.contains("\"kind\": \"anticanonical\""));
    assert!(text.contains("\"identity_holds\": true"));
}

#[test]
fn adjoin_reports_fibrations() {
    let f = fixtures();
    let out =
        run(&["adjoin", f.quadric.to_str().unwrap(), f.bidegree_two_three.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"kind\": \"fibration\""), "report: {text}");
    assert!(text.contains("\"fiber_degree\": \"2\""));
    assert!(text.contains("\"multiplicity\": \"1\""));
}

#[test]
fn adjoin_refuses_non_ample_classes_with_exit_three() {
    let f = fixtures();
    let out = run(&["adjoin", f.plane.to_str().unwrap(), f.not_ample.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("ample"));
}

#[test]
fn bounds_eval_prints_golden_values() {
    let out = run(&["bounds", "eval", "--r", "2", "--e", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "179\n");

    let out = run(&["bounds", "eval", "--r", "1", "--e", "7"]);
    assert_eq!(stdout(&out), "9\n");

    // Non-integer value keeps its exact fraction form.
    let out = run(&["bounds", "eval", "--r", "1", "--e", "15"]);
    assert_eq!(stdout(&out), "76\n");

    let out = run(&["bounds", "eval", "--r", "1", "--e", "6"]);
    assert_eq!(out.status.code(), Some(1), "six rays are below the bound's domain");
}

#[test]
fn bounds_surface_emits_golden_csv() {
    let out = run(&["bounds", "surface", "--rmin", "1", "--rmax", "1", "--emin", "13", "--emax", "14"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "r,e,b,bound_num,bound_den,scaled");
    assert_eq!(lines[1], "1,13,1,56,1,0.615384615385");
    assert_eq!(lines[2], "1,14,1,66,1,0.673469387755");

    let out = run(&[
        "bounds", "surface", "--rmin", "1", "--rmax", "1", "--emin", "13", "--emax", "14",
        "--scaled", "false",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("r,e,b,bound_num,bound_den\n"));
    assert!(text.contains("1,13,1,56,1\n"));

    let out = run(&[
        "bounds", "surface", "--rmin", "1", "--rmax", "1", "--emin", "13", "--emax", "13",
        "--format", "json",
    ]);
    assert!(stdout(&out).contains("\"bound\": \"56\""));

    let out = run(&["bounds", "surface", "--emin", "5", "--emax", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bounds_claims_reports_the_known_failure_honestly() {
    let out = run(&["bounds", "claims"]);
    assert_eq!(out.status.code(), Some(4), "the five-multiple claim fails on the fifth band");
    let text = stdout(&out);
    assert!(text.contains("\"verdict\": false"));
    assert!(text.contains("bound >= 5 r^2 e"));

    let out = run(&["bounds", "claims", "--ecap", "500"]);
    assert_eq!(out.status.code(), Some(1), "caps below the stated grids are refused");
}

#[test]
fn table_catalogue_checks_out() {
    let out = run(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("\"instance\"").count(), 14);
    assert!(text.contains("c2 >= 7 open"));
}

#[test]
fn verify_is_clean_and_deterministic_across_thread_counts() {
    let args =
        ["verify", "--emax", "6", "--emin", "3", "--amax", "3", "--tmax", "3", "--r", "1,2"];
    let single = run_with_threads(&args, "1");
    assert_eq!(single.status.code(), Some(0), "stderr: {}", stderr(&single));
    let text = stdout(&single);
    assert!(text.contains("\"counterexamples\": []"));
    assert!(text.contains("\"fail\": 0"));

    let quad = run_with_threads(&args, "4");
    assert_eq!(quad.status.code(), Some(0));
    assert_eq!(single.stdout, quad.stdout, "reports must be byte-identical");
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let out = run_with_threads(&["bounds", "eval", "--r", "1", "--e", "7"], "zero");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("TORICA_THREADS"));
}

#[test]
fn enumerate_lists_the_four_ray_inventory() {
    let f = fixtures();
    let out = run(&["enumerate", "--emax", "4", "--amax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"count\": 5"));

    // --out writes the same bytes to a file.
    let target = f._dir.path().join("inventory.json");
    let out = run(&[
        "enumerate", "--emax", "4", "--amax", "3", "--out", target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), text);
}

#[test]
fn bogomolov_search_finds_the_plane_destabilizer() {
    let f = fixtures();
    let out = run(&[
        "bogomolov", "search",
        "--fan", f.plane.to_str().unwrap(),
        "--h", f.quartic.to_str().unwrap(),
        "--c2", "3",
        "--box", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("\"cycle_degree\"").count(), 1, "unique candidate expected");
    assert!(text.contains("\"cycle_degree\": \"0\""));

    // A stable pair is rejected as a configuration error.
    let out = run(&[
        "bogomolov", "search",
        "--fan", f.plane.to_str().unwrap(),
        "--h", f.quartic.to_str().unwrap(),
        "--c2", "4",
        "--box", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bogomolov_restrict_clears_the_blown_quadric() {
    let f = fixtures();
    let out = run(&[
        "bogomolov", "restrict",
        "--fan", f.blown_quadric.to_str().unwrap(),
        "--h", f.double_anticanonical.to_str().unwrap(),
        "--c2", "6",
        "--box", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"applicable\": true"));
    assert!(text.contains("\"survivors\": []"));
    assert!(text.contains("\"flagged_del_pezzo\": []"));
}
