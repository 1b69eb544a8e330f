use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paracontact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes_follow_verdicts() {
    assert_eq!(run_on("check", "ps3", &[]).status.code(), Some(0));
    let typo = run_on("check", "ps3-typo", &[]);
    assert_eq!(typo.status.code(), Some(1));
    let text = stdout(&typo);
    assert!(text.contains("(∂y,∂y) : (y^2 - 1)/4"), "{text}");
    assert_eq!(run_on("check", "flat3", &[]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let missing = run(&["check", "no/such/file.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("cannot read"));
    // POLAR2 has no paracontact structure.
    assert_eq!(run_on("check", "polar2", &[]).status.code(), Some(2));
    assert_eq!(
        run_on("curvature", "ps3", &["--frame", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run_on("soliton", "ps3", &["--lambda", "1 +"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn soliton_prints_exact_solution() {
    let o = run_on("soliton", "ps3", &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lambda        : p/2 - 8/3"), "{text}");
    assert!(text.contains("mu            : 3"), "{text}");
    assert!(
        text.contains("case                                : phi-invariant"),
        "{text}"
    );
}

#[test]
fn soliton_given_scalars_are_checked() {
    let ok = run_on("soliton", "ps3", &["--lambda", "p/2 - 8/3", "--mu", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run_on("soliton", "ps3", &["--lambda", "-1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("not a soliton"));
}

#[test]
fn conflicting_modes_are_rejected() {
    let o = run_on("soliton", "ps3", &["--solve", "--gradient"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_json_is_deterministic_and_complete() {
    let a = run_on("report", "ps3", &["--json"]);
    let b = run_on("report", "ps3", &["--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["fixture"], "PS3");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 20);
    for c in checks {
        let status = c["status"].as_str().unwrap();
        assert!(
            ["pass", "solved", "outside-hypothesis"].contains(&status),
            "{}: {status}",
            c["name"]
        );
        assert!(c["payload"].is_object());
    }
}

#[test]
fn curvature_frame_values() {
    let o = run_on("curvature", "ps3", &["--frame", "e"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("R(e1,e2)e1 : -3*e2"), "{text}");
    assert!(text.contains("r : 2"), "{text}");
}

#[test]
fn version_flag() {
    let o = run(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(env!("CARGO_PKG_VERSION")));
}
