use std::path::PathBuf;
use std::process::Command;

use dp_alpha::catalog::SurfaceConfig;
use dp_alpha::exactmath::Rational;
use dp_alpha::output::OutputRecord;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dp-alpha"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dp-alpha-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn cases_lists_every_id() {
    let (code, out, _) = run(&["cases"]);
    assert_eq!(code, 0);
    for c in SurfaceConfig::all() {
        assert!(out.lines().any(|l| l.starts_with(c.id())), "{}", c.id());
    }
}

#[test]
fn verify_passes() {
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), SurfaceConfig::all().len());
    let (code, out, _) = run(&["verify", "--case", "deg5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS deg5  1 on (0/1, 1/2]; 1/(2b) on [1/2, 1/1]"), "{out}");
}

#[test]
fn alpha_text() {
    let (code, out, _) = run(&["alpha", "--case", "deg9", "--beta", "1/2"]);
    assert_eq!(code, 0);
    assert!(out.contains("(1+3·(1/2))/(9·(1/2)) = 5/9"));
}

#[test]
fn alpha_json_round_trip() {
    for source in ["formula", "engine"] {
        let (code, out, _) = run(&["alpha", "--case", "deg4-conic-pair", "--beta", "3/4", "--format", "json", "--source", source]);
        assert_eq!(code, 0);
        let r = OutputRecord::from_json(&out).unwrap();
        assert_eq!(format!("{}\n", r.to_json()), out);
        assert_eq!(r.points[0].alpha_exact, Rational::new(5, 6));
    }
}

#[test]
fn table_agrees_with_alpha() {
    let (code, table, _) = run(&["table", "--steps", "7"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = table.lines().skip(1).collect();
    assert_eq!(rows.len(), 7 * SurfaceConfig::all().len());
    for row in rows.iter().step_by(5) {
        let cols: Vec<&str> = row.split(',').collect();
        let (_, csv, _) = run(&["alpha", "--case", cols[0], "--beta", cols[1], "--format", "csv"]);
        assert_eq!(csv.lines().nth(1).unwrap(), *row);
    }
}

#[test]
fn rbound_and_bounds() {
    assert_eq!(run(&["rbound", "--case", "f1-general"]).1.trim(), "3/7");
    let (code, out, _) = run(&["bounds", "--case", "f1-tangent", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["r_lower"], "3/10");
    assert_eq!(v["upper_bound"]["value"], "4/5");
    assert_eq!(v["berman_lower"], "1/6");
}

#[test]
fn lines_counts() {
    let (code, out, _) = run(&["lines", "--degree", "3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("count: 27\n"));
    assert!(run(&["lines", "--degree", "8", "--quadric", "--m", "2"]).1.ends_with("count: 2\n"));
}

#[test]
fn lct_from_files() {
    let (code, out, _) = run(&["lct", data("cusp_on_c.json").to_str().unwrap(), "--beta", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("lct: (3+2b)/(6b) on (0/1, 1/1]"), "{out}");
    assert!(out.contains("at beta = 1/1: 5/6"));
    let (code, out, _) = run(&["lct", data("tacnode_on_c.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("(2+b)/(4b)"), "{out}");
}

#[test]
fn malformed_germ_files_exit_three() {
    let syntax = tmp("syntax.json", "{\n  \"points\": [\n    {\"id\": \"p1\"}\n  ],\n  \"scalable\": [{\"mult\": {\"p1\": 1}, \"weight\": \"x\"}]\n}\n");
    let (code, _, err) = run(&["lct", syntax.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("line 5") && err.contains("scalable[0].weight"), "{err}");

    let proximity = tmp(
        "proximity.json",
        r#"{"points": [{"id": "p1"}, {"id": "p2", "parent": "p1"}],
            "scalable": [{"mult": {"p1": 1, "p2": 2}, "weight": 1}]}"#,
    );
    let (code, _, err) = run(&["lct", proximity.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("scalable[0]"), "{err}");
}

#[test]
fn exit_codes_are_exhaustive() {
    let cases: &[&[&str]] = &[
        &[],
        &["nope"],
        &["alpha"],
        &["alpha", "--case", "deg9", "--beta", "1/0"],
        &["alpha", "--case", "deg9", "--beta", "0.25"],
        &["bounds", "--case", "deg9", "--format", "csv"],
        &["ineq", "four-blowup", "--a", "0", "--x", "5", "--x1", "0", "--x2", "0", "--x3", "0", "--lambda-beta", "1/2", "--beta", "1/2", "--k2", "7"],
    ];
    for args in cases {
        assert_eq!(run(args).0, 2, "{args:?}");
    }
}

#[test]
fn ineq_table() {
    let (code, out, _) = run(&[
        "ineq", "four-blowup", "--a", "0", "--x", "0", "--x1", "0", "--x2", "0", "--x3", "0",
        "--lambda-beta", "1/7", "--beta", "1/2", "--k2", "7",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("verdict: lc forced\n"), "{out}");
}

#[test]
fn compare_all_links() {
    let (code, out, _) = run(&["compare"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("(exceptional)")).count(), 5);
    let unflagged: Vec<&str> = out.lines().filter(|l| l.contains("violated (") && !l.contains("exceptional")).collect();
    assert_eq!(unflagged.len(), 2, "{out}");
}
