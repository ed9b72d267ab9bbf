//! End-to-end tests of the `bdris` binary: exit codes, JSON output,
//! emitted files, and run-to-run determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bdris(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdris"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bdris_with_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdris"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", text(&out.stderr));
    serde_json::from_str(&text(&out.stdout)).expect("stdout is JSON")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn arch_fully_5_reports_nonplanar_with_witness() {
    let report = stdout_json(&bdris(&["arch", "fully", "5"]));
    assert_eq!(report["spec"], "fully");
    assert_eq!(report["edges"], 10);
    assert_eq!(report["planar"], false);
    assert_eq!(report["witness"]["kind"], "K5");
    assert_eq!(report["witness"]["branch_sets"].as_array().unwrap().len(), 5);
    assert_eq!(report["complexity"]["total"], 15);
    assert_eq!(report["classification"]["kind"], "NeverPlanar");
}

#[test]
fn arch_maxplanar_1_at_16_matches_published_counts() {
    let report = stdout_json(&bdris(&["arch", "maxplanar:1", "16"]));
    assert_eq!(report["edges"], 42);
    assert_eq!(report["complexity"]["total"], 58);
    assert_eq!(report["planar"], true);
    assert_eq!(report["maximal_planar"], true);
    assert_eq!(report["witness"], serde_json::Value::Null);
}

#[test]
fn arch_single_4_is_planar_with_no_edges() {
    let report = stdout_json(&bdris(&["arch", "single", "4"]));
    assert_eq!(report["edges"], 0);
    assert_eq!(report["planar"], true);
    assert_eq!(report["complexity"]["interconnection_count"], 0);
    assert_eq!(report["complexity"]["ground_count"], 4);
}

#[test]
fn arch_usage_errors_exit_1() {
    for args in [
        &["arch", "bogus", "4"][..],
        &["arch", "band:0", "4"],
        &["arch", "group:3", "4"],
        &["arch", "fully", "0"],
    ] {
        let out = bdris(args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(
            text(&out.stderr).contains("usage"),
            "args {args:?}: {}",
            text(&out.stderr)
        );
    }
}

#[test]
fn no_subcommand_exits_1() {
    let out = bdris(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = bdris(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).contains("simulate"));
}

#[test]
fn embed_writes_drawing_and_reports_zero_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let out = bdris(&["embed", "9", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stdout).contains("crossings: 0"));
    let svg = std::fs::read_to_string(dir.path().join("band3_n9.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 9);
    let coords: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("band3_n9.json")).unwrap())
            .unwrap();
    assert_eq!(coords["points"].as_array().unwrap().len(), 9);
}

#[test]
fn embed_too_small_exits_1() {
    let out = bdris(&["embed", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("usage"));
}

#[test]
fn embed_honors_output_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let out = bdris_with_env(&["embed", "5"], "BDRIS_OUT_DIR", dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("band3_n5.svg").exists());
    assert!(dir.path().join("band3_n5.json").exists());
}

fn write_plan(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("plan.json");
    std::fs::write(&path, body).unwrap();
    path
}

fn small_plan(out_dir: &Path) -> String {
    format!(
        r#"{{
            "architectures": ["single", "group:3", "fully"],
            "n_values": [3, 4],
            "realizations": 2,
            "seed": 11,
            "m": 2,
            "k": 2,
            "p_t_dbm": 10.0,
            "noise_dbm": -80.0,
            "optimizer": {{"max_iter": 40, "restarts": 2}},
            "output_dir": "{}"
        }}"#,
        out_dir.display()
    )
}

#[test]
fn simulate_writes_all_outputs_and_skips_bad_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), &small_plan(dir.path()));
    let out = bdris(&["simulate", "--plan", plan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", text(&out.stderr));
    assert!(text(&out.stderr).contains("skipping group:3 at N = 4"));

    let rates = std::fs::read_to_string(dir.path().join("rates.csv")).unwrap();
    let mut lines = rates.lines();
    assert_eq!(
        lines.next().unwrap(),
        "arch,N,realization,sum_rate,iterations,converged"
    );
    // 3 archs × 2 sizes × 2 realizations, minus the skipped (group:3, 4).
    assert_eq!(rates.lines().count() - 1, 10);

    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count() - 1, 5);
    // Complexity column equals the architecture component count.
    for line in summary.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (arch, n): (&str, usize) = (cols[0], cols[1].parse().unwrap());
        let expected = match arch {
            "single" => n,
            "group:3" => n + n, // N/3 triangles of 3 edges each, plus N grounds
            "fully" => n * (n + 1) / 2,
            other => panic!("unexpected arch {other}"),
        };
        assert_eq!(cols[3].parse::<usize>().unwrap(), expected, "{line}");
    }

    for chart in ["rate_vs_n.svg", "complexity_vs_n.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(chart)).unwrap();
        assert!(svg.starts_with("<svg"), "{chart}");
        assert!(svg.contains("fully"), "{chart}");
    }
}

#[test]
fn simulate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write_plan(dir.path(), &small_plan(dir.path()));
    assert_eq!(bdris(&["simulate", "--plan", plan.to_str().unwrap()]).status.code(), Some(0));
    let first_rates = std::fs::read(dir.path().join("rates.csv")).unwrap();
    let first_summary = std::fs::read(dir.path().join("summary.csv")).unwrap();
    assert_eq!(bdris(&["simulate", "--plan", plan.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(first_rates, std::fs::read(dir.path().join("rates.csv")).unwrap());
    assert_eq!(first_summary, std::fs::read(dir.path().join("summary.csv")).unwrap());
}

#[test]
fn simulate_zero_gain_reports_zero_rates() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!(
        r#"{{
            "architectures": ["single"],
            "n_values": [3],
            "realizations": 1,
            "seed": 5,
            "m": 1,
            "k": 1,
            "p_t_dbm": 10.0,
            "noise_dbm": -80.0,
            "path_gain_it": 0.0,
            "output_dir": "{}"
        }}"#,
        dir.path().display()
    );
    let plan = write_plan(dir.path(), &body);
    let out = bdris(&["simulate", "--plan", plan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rates = std::fs::read_to_string(dir.path().join("rates.csv")).unwrap();
    assert!(rates.contains("single,3,0,0.000000,0,true"), "{rates}");
}

#[test]
fn simulate_bad_plans_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let out = bdris(&["simulate", "--plan", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let invalid = write_plan(dir.path(), r#"{"architectures": []}"#);
    let out = bdris(&["simulate", "--plan", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("usage"));
}
