use std::process::Command;

use clap::Parser;
use gridcover::cli::{run, verify_file, Cli, Outcome, WitnessFile, EXIT_BUDGET, EXIT_INPUT, EXIT_INVALID, EXIT_OK};
use gridcover::verify::Witness;

fn cli(args: &str) -> Outcome {
    let argv = std::iter::once("gridcover").chain(args.split_whitespace());
    run(Cli::try_parse_from(argv).expect("arguments parse"))
}

#[test]
fn gen_json_round_trips_through_verify() {
    for args in [
        "gen boustrophedon 4 3 --json",
        "gen boustrophedon -n 2 -m 7",
        "gen spiral 6 6",
        "gen comb 5 2",
        "gen comb 3 7",
        "gen small-tree 2 2",
        "gen small-tree 1 9",
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
        let checked = verify_file(&out.stdout);
        assert_eq!(checked.code, EXIT_OK, "{args}: {}", checked.stdout);
    }
}

#[test]
fn boustrophedon_4x3_has_five_segments() {
    let out = cli("gen boustrophedon 4 3 --json");
    let file: WitnessFile = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(file.witness().unwrap().segment_count(), 5);
    let v: serde_json::Value = serde_json::from_str(&verify_file(&out.stdout).stdout).unwrap();
    assert_eq!(v["report"]["segment_count"], 5);
    assert_eq!(v["accounting"]["total_bound"], 5);
}

#[test]
fn spiral_guard_is_an_input_error() {
    let out = cli("gen spiral 2 2");
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("spiral requires n=m>=3"), "{}", out.stderr);
}

#[test]
fn verify_reports_missing_points_and_bad_json() {
    let out = cli("gen boustrophedon 3 3");
    let mut file: WitnessFile = serde_json::from_str(&out.stdout).unwrap();
    let Some(Witness::Path(p)) = file.witness().ok() else {
        panic!("expected a path");
    };
    let mut verts = p.vertices().to_vec();
    verts.pop();
    file.polyline = Some(gridcover::Polyline::new(verts).unwrap());
    let broken = serde_json::to_string(&file).unwrap();
    let checked = verify_file(&broken);
    assert_eq!(checked.code, EXIT_INVALID);
    assert!(checked.stderr.contains("(2, 2)"), "{}", checked.stderr);

    let truncated = &out.stdout[..out.stdout.len() / 2];
    assert_eq!(verify_file(truncated).code, EXIT_INPUT);
    assert_eq!(verify_file(r#"{"grid": {"xs": ["0"], "ys": ["0"]}, "kind": "PATH"}"#).code, EXIT_INPUT);
}

#[test]
fn solve_matches_formulas() {
    for (args, line) in [
        ("solve 3 3 --mode path", "4 MATCH"),
        ("solve 3 3 --mode path-noncrossing", "5 MATCH"),
        ("solve 2 2 --mode tree-segments", "2 MATCH"),
        ("solve 2 3 --mode path --jobs 3", "3 MATCH"),
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_OK, "{args}");
        assert_eq!(out.stdout.lines().last(), Some(line), "{args}");
    }
}

#[test]
fn solve_budget_and_guard() {
    let out = cli("solve 3 3 --mode path --budget 5");
    assert_eq!(out.code, EXIT_BUDGET);
    assert!(out.stdout.contains("UPPER_BOUND_ONLY"));
    let out = cli("solve 3 3 --mode path --k-max 3");
    assert_eq!(out.code, EXIT_BUDGET);
    assert!(out.stdout.ends_with("none MISMATCH\n"));
    assert_eq!(cli("solve 6 5").code, EXIT_INPUT);
}

#[test]
fn solve_report_for_4x3() {
    let out = cli("solve 4 3 --mode report");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let rows: serde_json::Value = serde_json::from_str(out.stdout.trim_end_matches("ALL MATCH\n")).unwrap();
    let solved: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["solved"].as_u64().unwrap()).collect();
    assert_eq!(solved, vec![5, 5, 4, 5]);
}

#[test]
fn bounds_tables() {
    let out = cli("bounds 7 7 --json");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["path_crossing"], 12);
    assert_eq!(v["path_noncrossing"], 13);
    assert_eq!(v["tree_edges_crossing"], 12);
    assert_eq!(v["tree_edges_noncrossing"], 13);
    assert_eq!(v["tree_segments"], 8);
    let out = cli("bounds 10 3");
    assert!(out.stdout.contains("path_crossing          5"));
    assert!(out.stdout.contains("tree_segments          4"));
    assert!(cli("bounds 1 1").stdout.contains("degenerate"));
}

#[test]
fn grid_file_input() {
    let dir = std::env::temp_dir().join(format!("gridcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let grid = dir.join("grid.json");
    std::fs::write(&grid, r#"{"xs": ["0", "1/2", "3"], "ys": ["0", "2"]}"#).unwrap();
    let out = cli(&format!("gen boustrophedon --grid-file {}", grid.display()));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("\"1/2\""));
    assert_eq!(verify_file(&out.stdout).code, EXIT_OK);
    let out = cli(&format!("solve --grid-file {} --mode path", grid.display()));
    assert_eq!(out.stdout.lines().last(), Some("3 MATCH"));
}

#[test]
fn binary_writes_files_and_exit_codes() {
    let dir = std::env::temp_dir().join(format!("gridcover-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bin = env!("CARGO_BIN_EXE_gridcover");
    let svg = dir.join("spiral.svg");
    let status = Command::new(bin)
        .args(["gen", "spiral", "5", "5", "--svg", "--out"])
        .arg(&svg)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<desc>segments=8 noncrossing=false</desc>"));

    let json = dir.join("comb.json");
    assert!(Command::new(bin).args(["gen", "comb", "5", "3", "--out"]).arg(&json).status().unwrap().success());
    let out = Command::new(bin).arg("verify").arg(&json).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"grid\":").unwrap();
    let out = Command::new(bin).arg("verify").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = Command::new(bin).args(["gen", "spiral", "2", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}
