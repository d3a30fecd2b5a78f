//! End-to-end tests of the sweep binary: artifacts, exit codes, and the
//! full 27-triple pipeline.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_imcf-soliton"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

#[test]
fn single_triple_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["--n", "2", "--lambda", "2", "--mu", "1", "--format", "csv,json,svg"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = std::fs::read_to_string(dir.path().join("profile_n2_lam2_mu1.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("y,r,rp,rpp,w,H,residual"));
    assert!(lines.count() > 100, "profile should carry many samples");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report_n2_lam2_mu1.json")).unwrap())
            .unwrap();
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["termination"], "ReachedYMax");
    assert!(report["checks"].as_array().unwrap().len() >= 6);

    let svg = std::fs::read_to_string(dir.path().join("plot_n2_lam2_mu1.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["schema_version"], "1");
    assert_eq!(manifest["complete"], true);
    assert_eq!(manifest["runs"].as_array().unwrap().len(), 1);
    assert_eq!(manifest["runs"][0]["all_passed"], true);
}

#[test]
fn invalid_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--n", "2", "--lambda", "0", "--mu", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("lambda"),
        "stderr must name the offending field"
    );
    // config errors must not leave partial artifacts behind
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn failed_check_exits_1() {
    // near-critical expander: strictly monotone but misses the finite-horizon
    // growth margin, so the run completes with a failed check
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--n", "2", "--lambda", "1.1", "--mu", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["runs"][0]["all_passed"], false);
}

#[test]
fn full_sweep_pipeline() {
    // λ = 1.1/(n−1) depends on n, so the 27-triple grid is three 9-triple
    // sweeps, one per n
    let dir = tempfile::tempdir().unwrap();
    let mut reports = 0usize;
    for (n, lam_list) in [("2", "1.1,1,5"), ("3", "0.55,1,5"), ("5", "0.275,1,5")] {
        let sub = dir.path().join(format!("n{n}"));
        let out = run(
            &["--n", n, "--lambda", lam_list, "--mu", "0.5,1,2", "--jobs", "4"],
            &sub,
        );

        let manifest: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(sub.join("manifest.json")).unwrap())
                .unwrap();
        let runs = manifest["runs"].as_array().unwrap();
        assert_eq!(runs.len(), 9);
        let all_passed = runs.iter().all(|r| r["all_passed"] == true);
        let expected = if all_passed { Some(0) } else { Some(1) };
        assert_eq!(
            out.status.code(),
            expected,
            "exit code must mirror the manifest for n = {n}"
        );

        reports += runs
            .iter()
            .filter(|r| {
                r["files"].as_array().unwrap().iter().any(|f| {
                    let name = f.as_str().unwrap();
                    name.starts_with("report_") && sub.join(name).exists()
                })
            })
            .count();
    }
    assert_eq!(reports, 27, "every triple must produce a report file");
}
