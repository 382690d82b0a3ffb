use std::path::{Path, PathBuf};
use std::process::Command;

use knill2d::circuit::{census, schedule_to_json, LocationType, Schedule, Structure};
use knill2d::cli::main_with_args;
use knill2d::tiles::{build_cnot_exrec, build_ed, exrec_to_json, EdVariant, TileSize, TileSpec};
use knill2d::AlphaMatrix;
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("knill2d-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("knill2d").chain(args.iter().copied()))
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&[]), 1);
    assert_eq!(run(&["frobnicate"]), 1);
    assert_eq!(run(&["schedule", "export", "--ed", "sideways", "--structure", "I"]), 1);
    assert_eq!(run(&["malignancy", "count", "--exrec", "7x7"]), 1);
    assert_eq!(run(&["logical-rate", "sweep", "--exrec", "nonlocal", "--pmin", "0.1", "--pmax", "0.01"]), 1);
    assert_eq!(run(&["pseudothreshold", "run", "--exrec", "nonlocal", "--trials", "0"]), 1);
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["--version"]), 0);
}

#[test]
fn invalid_schedule_file_exits_2() {
    let dir = scratch("invalid");
    let ed = build_ed(EdVariant::Plus, &TileSpec::new(TileSize::FiveByFive, Structure::I));
    let (a, b) = (TileSize::FiveByFive.site(1, 1, 0), TileSize::FiveByFive.site(1, 2, 0));
    let mut bad = Schedule::empty("two_live", ed.grid.clone());
    bad.entry_blocks = ed.entry_blocks.clone();
    bad.push(1, LocationType::PrepZero, vec![b]);
    bad.push(2, LocationType::Swap, vec![a, b]);
    let path = dir.join("bad.json");
    std::fs::write(&path, schedule_to_json(&bad)).unwrap();
    assert_eq!(run(&["schedule", "census", s(&path)]), 2);

    let good = dir.join("good.json");
    std::fs::write(&good, schedule_to_json(&ed)).unwrap();
    assert_eq!(run(&["schedule", "census", s(&good)]), 0);
}

#[test]
fn degenerate_threshold_exits_3() {
    let dir = scratch("degenerate");
    let alpha = dir.join("alpha.json");
    std::fs::write(&alpha, AlphaMatrix::zero().to_json()).unwrap();
    let c = dir.join("census.json");
    let empty = census(&Schedule::empty("empty", TileSize::FiveByFive.grid(1))).unwrap();
    std::fs::write(&c, serde_json::to_string(&empty).unwrap()).unwrap();
    assert_eq!(run(&["threshold", "solve", "--alpha", s(&alpha), "--census", s(&c)]), 3);
    assert_eq!(run(&["threshold", "solve", "--alpha", s(&alpha), "--census", s(&c), "--gamma=-1"]), 1);
}

#[test]
fn count_then_solve_carries_provenance() {
    let dir = scratch("chain");
    let (a1, a4) = (dir.join("a1.json"), dir.join("a4.json"));
    assert_eq!(run(&["malignancy", "count", "--exrec", "nonlocal", "--jobs", "1", "--out", s(&a1)]), 0);
    assert_eq!(run(&["malignancy", "count", "--exrec", "nonlocal", "--jobs", "4", "--out", s(&a4)]), 0);
    let (v1, v4) = (json(&a1), json(&a4));
    assert_eq!(v1["upper"], v4["upper"]);
    assert_eq!(v1["total"], 1062);
    assert!(v1["diff_vs_reference"].is_object() || v1["diff_vs_reference"].is_array());

    let gammas = dir.join("gammas.txt");
    std::fs::write(&gammas, "gamma\n1\n0.1\n0\n").unwrap();
    let (t1, t2) = (dir.join("t1.json"), dir.join("t2.json"));
    for t in [&t1, &t2] {
        assert_eq!(run(&["threshold", "solve", "--alpha", s(&a1), "--table", s(&gammas), "--out", s(t)]), 0);
    }
    let (v, w) = (json(&t1), json(&t2));
    assert_eq!(v["result"], w["result"]);
    assert_eq!(v["tool_version"], knill2d::TOOL_VERSION);
    assert!(v["config"].is_object());
    assert!(v["schedule_hashes"].is_object());
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let eps: Vec<f64> = rows.iter().map(|r| r["epsilon"].as_f64().unwrap()).collect();
    assert!(eps[0] < eps[1] && eps[1] < eps[2]);
}

#[test]
fn schedule_exports_are_stable() {
    let dir = scratch("export");
    let (x, y) = (dir.join("x.json"), dir.join("y.json"));
    for p in [&x, &y] {
        assert_eq!(run(&["schedule", "exrec", "--tile", "4x4", "--out", s(p)]), 0);
    }
    assert_eq!(std::fs::read(&x).unwrap(), std::fs::read(&y).unwrap());
    assert_eq!(std::fs::read_to_string(&x).unwrap(), exrec_to_json(&build_cnot_exrec(TileSize::FourByFour)));
    let e = dir.join("e.json");
    assert_eq!(run(&["schedule", "export", "--ed", "zero", "--structure", "II", "--tile", "4x4", "--out", s(&e)]), 0);
    assert_eq!(run(&["schedule", "census", s(&x)]), 0);
    assert_eq!(run(&["schedule", "deviations", "--out", s(&dir.join("d.json"))]), 0);
}

#[test]
fn sweep_writes_csv() {
    let dir = scratch("sweep");
    let out = dir.join("rate.csv");
    let code = run(&[
        "logical-rate", "sweep", "--exrec", "nonlocal", "--trials", "5000", "--points", "3", "--pmin", "1e-3", "--pmax",
        "1e-2", "--out", s(&out),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("p,e_hat,ci_low,ci_high,accept_rate"));
}

#[test]
fn binary_exit_codes_and_data_dir_override() {
    let bin = env!("CARGO_BIN_EXE_knill2d");
    let out = Command::new(bin).args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().last().unwrap()).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
    assert_eq!(err["error"]["exit_code"], 1);

    // A data directory whose "5x5" exRec is the nonlocal one.
    let dir = scratch("datadir");
    std::fs::create_dir_all(dir.join("schedules")).unwrap();
    std::fs::write(dir.join("schedules/cnot_exrec_5x5.json"), exrec_to_json(&build_cnot_exrec(TileSize::Nonlocal)))
        .unwrap();
    let out = Command::new(bin)
        .env("KNILL2D_DATA_DIR", &dir)
        .args(["malignancy", "count", "--exrec", "5x5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 1062);

    std::fs::write(dir.join("schedules/cnot_exrec_5x5.json"), "{ not json").unwrap();
    let out = Command::new(bin)
        .env("KNILL2D_DATA_DIR", &dir)
        .args(["malignancy", "count", "--exrec", "5x5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
