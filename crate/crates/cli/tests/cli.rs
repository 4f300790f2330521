use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn sel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sel-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn expanding_map_table() {
    let o = sel(&[
        "algebraic",
        "--group",
        "Z",
        "--poly",
        "x - 2",
        "--quotients",
        "1..30",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["label", "d", "log_fix_count", "h_n"]);
    assert_eq!(rows.len(), 31);
    let h30: f64 = rows[30][3].parse().unwrap();
    assert!((h30 - 2f64.ln()).abs() < 1e-9);
    let residual = stderr(&o);
    let r: f64 = residual.split("= ").nth(1).unwrap().trim().parse().unwrap();
    assert!(r < 1e-9, "{residual}");
}

#[test]
fn bernoulli_rows_are_exact() {
    let o = sel(&["algebraic", "--poly", "2", "--quotients", "1..10"]);
    assert_eq!(o.status.code(), Some(0));
    for row in &csv_rows(&stdout(&o))[1..] {
        assert_eq!(row[3].parse::<f64>().unwrap(), 2f64.ln());
    }
}

#[test]
fn non_invertible_exits_three_with_report() {
    let dir = scratch("singular");
    let out = dir.join("report.json");
    let o = sel(&[
        "algebraic",
        "--poly",
        "x - 1",
        "--quotients",
        "1..5",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let skipped = v["skipped"].as_array().unwrap();
    assert_eq!(skipped.len(), 5);
    assert!(skipped.iter().all(|s| s["nullity"] == 1));
    assert_eq!(v["records"].as_array().unwrap().len(), 0);
    assert_eq!(v["certificate"]["verdict"]["kind"], "not_invertible");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["algebraic", "--poly", "x + ", "--quotients", "1..3"],
        vec!["algebraic", "--poly", "y", "--quotients", "1..3"],
        vec!["algebraic", "--poly", "x", "--quotients", "5..3"],
        vec![
            "algebraic",
            "--poly",
            "x",
            "--group",
            "Z7",
            "--quotients",
            "1..3",
        ],
        vec!["algebraic", "--poly", "x", "--group", "Z2", "--moduli", "3"],
        vec!["algebraic", "--poly", "x"],
        vec!["subshift", "--poly", "x"],
        vec!["sofic-check", "--quotients", "1..3", "--pair", "x"],
        vec!["sofic-check", "--quotients", "1..3", "--pair", "2*x:x"],
    ] {
        assert_eq!(sel(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_sft_reports_position() {
    let dir = scratch("malformed");
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"alphabet\": [0, 1],\n \"window\": [0 1]}").unwrap();
    let o = sel(&["subshift", "--sft", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn size_guard_exits_four() {
    let o = Command::new(env!("CARGO_BIN_EXE_sel"))
        .args(["algebraic", "--poly", "x - 2", "--quotients", "1..30"])
        .env("SEL_MAX_DIM", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    let o = sel(&[
        "mahler", "--group", "Z4", "--poly", "5 + x", "--grid", "200",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

fn write_sft(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn subshift_tables() {
    let dir = scratch("subshift");
    let golden = write_sft(
        &dir,
        "golden.json",
        r#"{"alphabet": [0, 1], "window": [0, 1], "allowed": [[0,0],[0,1],[1,0]]}"#,
    );
    let o = sel(&["subshift", "--sft", &golden, "--quotients", "1..30"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0], ["n", "budget", "delta", "count", "h", "method"]);
    let last = rows.last().unwrap();
    assert_eq!(last[0], "30");
    assert!((last[4].parse::<f64>().unwrap() - 0.481212).abs() < 1e-3);

    let full = write_sft(
        &dir,
        "full.json",
        r#"{"alphabet": ["a", "b"], "window": [0], "allowed": [["a"], ["b"]]}"#,
    );
    let o = sel(&[
        "subshift",
        "--sft",
        &full,
        "--quotients",
        "1..8",
        "--budget",
        "0,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 17);
    for row in &rows[1..] {
        assert_eq!(row[4].parse::<f64>().unwrap(), 2f64.ln());
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn csv_and_json_carry_identical_fields() {
    let dir = scratch("formats");
    let golden = write_sft(
        &dir,
        "golden.json",
        r#"{"alphabet": [0, 1], "window": [0, 1], "allowed": [[0,0],[0,1],[1,0]]}"#,
    );
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec![
                "algebraic",
                "--poly",
                "3 - x - x^-1",
                "--quotients",
                "1..12",
            ],
            "records",
        ),
        (
            vec![
                "subshift",
                "--sft",
                &golden,
                "--quotients",
                "2..9",
                "--budget",
                "1",
            ],
            "cells",
        ),
        (vec!["sofic-check", "--quotients", "2..5"], "rows"),
    ];
    for (args, key) in cases {
        let csv = stdout(&sel(&[args.as_slice(), &["--format", "csv"]].concat()));
        let json = stdout(&sel(&[args.as_slice(), &["--format", "json"]].concat()));
        let v: Value = serde_json::from_str(&json).unwrap();
        let objects = v[key].as_array().unwrap();
        let rows = csv_rows(&csv);
        assert_eq!(rows.len() - 1, objects.len(), "{args:?}");
        for (row, obj) in rows[1..].iter().zip(objects) {
            for (name, cell) in rows[0].iter().zip(row) {
                let field = &obj[name.as_str()];
                let text = match field {
                    Value::String(s) => s.clone(),
                    Value::Null => String::new(),
                    other => other.to_string(),
                };
                assert_eq!(cell, &text, "{args:?} field {name}");
            }
        }
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn sofic_check_flags_congruent_pairs() {
    let o = sel(&[
        "sofic-check",
        "--quotients",
        "3..6",
        "--pair",
        "x:x^2",
        "--pair",
        "x:x^7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    for row in &rows[1..] {
        assert_eq!(row[4], "0");
        let n: i64 = row[1].parse().unwrap();
        let congruent = row[3] == "(7)" && 6 % n == 0;
        assert_eq!(row[5], if congruent { "1" } else { "0" }, "{row:?}");
        assert_eq!(row[6], congruent.to_string());
    }
}

#[test]
fn mahler_reports_both_methods() {
    let o = sel(&[
        "mahler",
        "--poly",
        "3 - x - x^-1",
        "--grid",
        "256",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let est = v["estimates"].as_array().unwrap();
    assert_eq!(est[0]["method"]["kind"], "jensen");
    assert_eq!(est[1]["method"]["grid"], 256);
    let a = est[0]["value"].as_f64().unwrap();
    let b = est[1]["value"].as_f64().unwrap();
    assert!((a - b).abs() < 1e-9);
    assert_eq!(v["certificate"]["verdict"]["kind"], "certified_invertible");

    let o = sel(&["mahler", "--poly", "x - 1"]);
    assert_eq!(o.status.code(), Some(3));
}

const S3_CHAIN: &str = r#"{
  "generators": ["a", "b"],
  "quotients": [
    {"label": "Z/2", "table": [[0, 1], [1, 0]], "generator_images": [1, 0]},
    {"label": "S3", "table": [
      [0, 1, 2, 3, 4, 5], [1, 0, 4, 5, 2, 3], [2, 5, 0, 4, 3, 1],
      [3, 4, 5, 0, 1, 2], [4, 3, 1, 2, 5, 0], [5, 2, 3, 1, 0, 4]],
     "generator_images": [1, 4]}
  ]
}"#;

#[test]
fn quotient_chain_files() {
    let dir = scratch("chain");
    let chain = dir.join("s3.json");
    std::fs::write(&chain, S3_CHAIN).unwrap();
    let group = format!("file:{}", chain.display());
    let o = sel(&["algebraic", "--group", &group, "--poly", "3 - a - b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[1][0], "Z/2");
    assert_eq!(rows[2][0], "S3");
    // On Z/2, a ↦ 1 and b ↦ 0: the matrix is [[2, -1], [-1, 2]].
    assert!((rows[1][2].parse::<f64>().unwrap() - 3f64.ln()).abs() < 1e-12);

    let o = sel(&["sofic-check", "--group", &group]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = sel(&[
        "algebraic",
        "--group",
        &group,
        "--poly",
        "3 - a",
        "--quotients",
        "1..3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = sel(&["algebraic", "--group", &group, "--poly", "3 - c"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&chain, r#"{"generators": ["a"], "quotients": [{"label": "bad", "table": [[0, 1], [0, 1]], "generator_images": [1]}]}"#).unwrap();
    let o = sel(&["algebraic", "--group", &group, "--poly", "3 - a"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}
