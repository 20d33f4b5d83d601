use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bridgecert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bridgecert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_exit_codes() {
    let kappa = bridgecert(&["certify", path(&fixture("kappa.json"))]);
    assert_eq!(kappa.status.code(), Some(0));
    let text = stdout(&kappa);
    assert!(text.contains("locally minimal: yes"));
    assert!(text.contains("Hempel distance exactly 2"));

    let trivial = bridgecert(&["certify", path(&fixture("trivial3.json"))]);
    assert_eq!(trivial.status.code(), Some(1));
    assert!(stdout(&trivial).contains("well-mixed: no"));
}

#[test]
fn certify_json_is_a_certificate() {
    let out = bridgecert(&["--json", "certify", path(&fixture("kappa.json"))]);
    let cert: bridge_core::Certificate = serde_json::from_slice(&out.stdout).unwrap();
    assert!(cert.locally_minimal);
    assert_eq!(cert.name.as_deref(), Some("kappa"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":2,"word":[4]}"#).unwrap();
    let out = bridgecert(&["certify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));

    fs::write(&bad, "{not json").unwrap();
    assert_eq!(
        bridgecert(&["check", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        bridgecert(&["build", "/no/such/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(bridgecert(&["width", "v^v^"]).status.code(), Some(2));
}

#[test]
fn unknown_command_prints_usage() {
    let out = bridgecert(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn width_of_four_bridge_word() {
    let out = bridgecert(&["width", "vvvv^^^^"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("width: 32\n"));
    assert!(text.contains("bridge position: yes"));

    let out = bridgecert(&["--json", "width", "vv^v^^"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["width"], 14);
    assert_eq!(v["levels"][1], "THICK");
}

#[test]
fn build_round_trips_through_validate_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let form = dir.path().join("kappa_nf.json");
    let out = bridgecert(&[
        "build",
        path(&fixture("kappa.json")),
        "--out",
        form.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let frozen = fs::read_to_string(fixture("kappa.normal_form.json")).unwrap();
    assert_eq!(fs::read_to_string(&form).unwrap(), frozen);

    let out = bridgecert(&["validate", form.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("358 crossings"));

    // a normal form is certified directly, without its plat
    let out = bridgecert(&["certify", form.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let out = bridgecert(&["check", path(&fixture("kappa.json"))]);
    assert!(stdout(&out).contains("overall: well-mixed"));
    let out = bridgecert(&["--json", "check", path(&fixture("trivial4.json"))]);
    let report: bridge_core::WellMixedReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.overall);
    assert_eq!(report.results.len(), 12);
}

#[test]
fn validate_reports_closure() {
    let out = bridgecert(&["validate", path(&fixture("kappa.json"))]);
    assert!(stdout(&out).contains("closure is a knot"));
    let out = bridgecert(&["validate", path(&fixture("trivial3.json"))]);
    assert!(stdout(&out).contains("3-component link"));
}

#[test]
fn snapshots_write_one_file_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = bridgecert(&[
        "snapshots",
        path(&fixture("kappa.json")),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 26);
    assert_eq!(names[0], "level_00.json");
    assert_eq!(names[25], "level_25.json");
    let last = fs::read_to_string(dir.path().join("level_25.json")).unwrap();
    assert_eq!(
        last,
        fs::read_to_string(fixture("kappa.normal_form.json")).unwrap()
    );

    assert_eq!(
        bridgecert(&["snapshots", path(&fixture("kappa.json"))])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn witness_command() {
    let out = bridgecert(&["witness", path(&fixture("kappa.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("gap 3"));
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    fs::write(&two, r#"{"n":2,"word":[2]}"#).unwrap();
    assert_eq!(
        bridgecert(&["witness", two.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for target in [&a, &b] {
        let out = bridgecert(&[
            "render",
            path(&fixture("kappa.json")),
            "--level",
            "15",
            "--out",
            target.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("kappa, S_15"));

    let out = bridgecert(&["render", path(&fixture("kappa.json")), "--level", "26"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bridgecert(&["render", path(&fixture("trivial4.json"))]);
    assert_eq!(stdout(&out).matches("class=\"arc\"").count(), 4);
}
