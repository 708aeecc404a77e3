use std::path::Path;
use std::process::{Command, Output};

use bjortho::NormedSpace;
use serde_json::Value;

fn bjortho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjortho"))
        .args(args)
        .env_remove("BJORTHO_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn check_reports_orthogonal_pair() {
    let o = bjortho(&["check", "--space", "dayjames:3:1.5", "--x", "1,1", "--y", "1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("orthogonal"));
}

#[test]
fn check_accepts_negative_coordinates() {
    let o = bjortho(&["check", "--space", "lp:2:2", "--x", "-1,0", "--y", "-1,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("strictly acute"));
}

#[test]
fn radon_on_l3_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let json = dir.path().join("radon.json");
    let o = bjortho(&[
        "radon", "--space", "lp:2:3", "--grid", "720", "--csv", csv.to_str().unwrap(), "--out", json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
    let r = read_json(&json);
    assert!(r["defect"].as_f64().unwrap() > 1e-2);
    assert!(r["witness"].is_array());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 721);
}

#[test]
fn radon_on_day_james_passes() {
    let o = bjortho(&["radon", "--space", "dayjames:3:1.5", "--grid", "360"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn preserver_verify_writes_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = bjortho(&[
        "preserver-verify", "--target", "dayjames:3:1.5", "--grid", "1024", "--samples", "10000", "--seed", "7",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&out);
    assert_eq!(r["pass"], Value::Bool(true));
    assert_eq!(r["seed"], 7);
    assert_eq!(r["samples"], 10000);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    for key in ["disagreements", "boundary_excluded", "max_norm_error", "max_homog_error", "continuity_modulus"] {
        assert!(r.get(key).is_some(), "{key}");
    }
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("verify.json", vec!["preserver-verify", "--target", "sum(dayjames:3:1.5,linf:2)", "--grid", "256", "--samples", "500", "--seed", "3"]),
        ("sum.json", vec!["sum-acute", "--x-space", "lp:2:2", "--y-space", "linf:1", "--samples", "500", "--seed", "3"]),
        ("sections.json", vec!["sections", "--space", "sum(lp:2:2,linf:1)", "--candidates", "40", "--seed", "3"]),
        ("eta.csv", vec!["preserver-build", "--target", "dayjames:3:1.5", "--grid", "64"]),
        ("circle.csv", vec!["circle", "--space", "lp:2:3", "--points", "32"]),
    ];
    for (name, args) in runs {
        let mut contents = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{k}-{name}"));
            let mut a = args.clone();
            a.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(bjortho(&a).status.code(), Some(0), "{name}");
            contents.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(contents[0], contents[1], "{name}");
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bjortho"))
        .args(["smooth", "--space", "lp:2:3", "--samples", "50"])
        .env("BJORTHO_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&dir.path().join("smooth.json"));
    assert_eq!(r["smooth"], Value::Bool(true));
    assert_eq!(r["space"], "lp:2:3");
}

#[test]
fn non_smooth_space_fails_probe() {
    assert_eq!(bjortho(&["smooth", "--space", "linf:2", "--samples", "20"]).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        vec!["check", "--space", "lp:2:0.5", "--x", "1,1", "--y", "1,-1"],
        vec!["check", "--space", "lp:2:2", "--x", "1", "--y", "1,-1"],
        vec!["check", "--space", "lp:2:2", "--x", "1,z", "--y", "1,-1"],
        vec!["check", "--space", "missing.json", "--x", "1,1", "--y", "1,-1"],
        vec!["radon", "--space", "lp:3:2"],
        vec!["preserver-build", "--target", "lp:2:3"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = bjortho(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_descriptor_files_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("space.json");
    std::fs::write(&path, r#"{"type":"inf_sum","parts":[{"type":"day_james","p":3.0,"q":1.5},{"type":"linf","dim":2}]}"#)
        .unwrap();
    let out = dir.path().join("check.json");
    let o = bjortho(&[
        "check", "--space", path.to_str().unwrap(), "--x", "1,1,0,0", "--y", "1,-1,0,0", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&out);
    assert_eq!(r["space"], "sum(dayjames:3:1.5,linf:2)");
    assert_eq!(r["tag"], "orthogonal");
}

#[test]
fn printed_compact_specs_reparse_to_equal_spaces() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["lp:2:3", "linf:4", "dayjames:3:1.5", "sum(dayjames:3:1.5,linf:2)", "sum(lp:2:2,sum(linf:1,lp:3:1.25))"] {
        let out = dir.path().join("s.json");
        let dim = NormedSpace::parse_compact(spec).unwrap().dim();
        let ones = vec!["1"; dim].join(",");
        let o = bjortho(&["check", "--space", spec, "--x", &ones, "--y", &ones, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let printed = read_json(&out)["space"].as_str().unwrap().to_owned();
        assert_eq!(NormedSpace::parse_compact(&printed).unwrap(), NormedSpace::parse_compact(spec).unwrap());
    }
}

#[test]
fn prebuilt_eta_table_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let eta = dir.path().join("eta.csv");
    let o = bjortho(&["preserver-build", "--target", "dayjames:3:1.5", "--grid", "128", "--out", eta.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = bjortho(&[
        "preserver-verify", "--target", "dayjames:3:1.5", "--eta", eta.to_str().unwrap(), "--samples", "500",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn orthograph_edge_list() {
    let o = bjortho(&["orthograph", "--space", "lp:2:2", "--directions", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 2\n1 3\n");
}

#[test]
fn circle_csv_header_and_rows() {
    let o = bjortho(&["circle", "--space", "dayjames:3:1.5", "--points", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("theta,x,y\n"));
    assert_eq!(text.lines().count(), 9);
}
