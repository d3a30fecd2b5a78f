//! Sweep CLI: integrates soliton profiles over a grid of `(n, λ, μ)`,
//! writes per-triple CSV profiles, JSON reports and optional SVG plots,
//! and exits 0 only when every applicable check passes.

mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use imcf_soliton::analysis::{self, Check, InvariantReport};
use imcf_soliton::integrator::{
    self, hybrid_start, integrate_profile, EventSpec, Tolerances,
};
use imcf_soliton::picard;
use imcf_soliton::Params;

#[derive(Parser, Debug)]
#[command(
    name = "imcf-soliton",
    about = "Numerically constructs and verifies radially symmetric homothetic soliton profiles of the inverse mean curvature flow"
)]
struct Cli {
    /// Dimension(s) n >= 2, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Soliton constant(s) λ != 0, comma-separated
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    lambda: Vec<f64>,
    /// Initial radius/radii μ > 0, comma-separated
    #[arg(long, value_delimiter = ',', required = true)]
    mu: Vec<f64>,
    /// Integration horizon
    #[arg(long = "y-max", default_value_t = integrator::DEFAULT_Y_MAX)]
    y_max: f64,
    /// Relative tolerance of the step controller
    #[arg(long, default_value_t = integrator::DEFAULT_RTOL)]
    rtol: f64,
    /// Absolute tolerance of the step controller
    #[arg(long, default_value_t = integrator::DEFAULT_ATOL)]
    atol: f64,
    /// Picard ball radius (default μ/4 per triple; must be <= μ/4)
    #[arg(long)]
    eta: Option<f64>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Output formats, subset of csv,json,svg
    #[arg(long, value_delimiter = ',', default_value = "csv,json")]
    format: Vec<String>,
    /// Seed for the contraction-ratio sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker count for the sweep (per-triple parallelism)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Trials used by the per-triple empirical contraction check.
const CONTRACTION_TRIALS: usize = 50;

#[derive(Serialize)]
struct ManifestEntry {
    label: String,
    n: u32,
    lambda: f64,
    mu: f64,
    files: Vec<String>,
    status: String,
    all_passed: bool,
}

#[derive(Serialize)]
struct Manifest {
    schema_version: &'static str,
    complete: bool,
    runs: Vec<ManifestEntry>,
}

fn fmt_v(x: f64) -> String {
    format!("{x}")
}

fn extra_checks(p: &Params<f64>, tol: Tolerances<f64>, eta: f64, seed: u64) -> Vec<Check<f64>> {
    let mut checks = Vec::new();
    checks.push(match hybrid_start(p, tol) {
        Ok(_) => Check {
            name: "local_cross_check".into(),
            applicable: true,
            passed: true,
            margin: 0.0,
            detail: format!(
                "Picard fixed point and RK start agree within {} sup-norm",
                integrator::CROSS_CHECK_TOL
            ),
        },
        Err(e) => Check {
            name: "local_cross_check".into(),
            applicable: true,
            passed: false,
            margin: -1.0,
            detail: e.to_string(),
        },
    });
    let ratio_check = picard::contraction_constants(p, eta).and_then(|cc| {
        picard::empirical_contraction_ratio(p, &cc, CONTRACTION_TRIALS, seed)
    });
    checks.push(match ratio_check {
        Ok(ratio) => {
            let bound = 0.5 + picard::CONTRACTION_SLACK;
            Check {
                name: "contraction_ratio".into(),
                applicable: true,
                passed: ratio <= bound,
                margin: bound - ratio,
                detail: format!("max empirical ratio {ratio} over {CONTRACTION_TRIALS} pairs"),
            }
        }
        Err(e) => Check {
            name: "contraction_ratio".into(),
            applicable: true,
            passed: false,
            margin: -1.0,
            detail: e.to_string(),
        },
    });
    checks
}

struct RunOutcome {
    entry: ManifestEntry,
    summary: String,
}

fn run_triple(cli: &Cli, p: Params<f64>) -> RunOutcome {
    let label = format!("n{}_lam{}_mu{}", p.n, fmt_v(p.lambda), fmt_v(p.mu));
    let tol = Tolerances { rel: cli.rtol, abs: cli.atol };
    let eta = cli.eta.unwrap_or(p.mu / 4.0);
    let mut files = Vec::new();

    let prof = match integrate_profile(&p, cli.y_max, tol, EventSpec::defaults(&p, cli.y_max)) {
        Ok(prof) => prof,
        Err(e) => {
            return RunOutcome {
                summary: format!("{label}: integration failed: {e}"),
                entry: ManifestEntry {
                    label,
                    n: p.n,
                    lambda: p.lambda,
                    mu: p.mu,
                    files,
                    status: format!("failed: {e}"),
                    all_passed: false,
                },
            }
        }
    };

    let mut report: InvariantReport<f64> = analysis::report_for(&prof);
    report.checks.extend(extra_checks(&p, tol, eta, cli.seed));

    let reflected = integrator::reflect_even(&prof).unwrap_or_else(|_| prof.clone());

    let mut status = "complete".to_string();
    for fmt in &cli.format {
        let res = match fmt.as_str() {
            "csv" => {
                let name = format!("profile_{label}.csv");
                let r = emit::emit_csv(&reflected, &cli.out.join(&name));
                files.push(name);
                r
            }
            "json" => {
                let name = format!("report_{label}.json");
                let r = emit::emit_json_report(&report, &cli.out.join(&name));
                files.push(name);
                r
            }
            "svg" => {
                let name = format!("plot_{label}.svg");
                let r = emit::emit_svg(&reflected, &report, &cli.out.join(&name));
                files.push(name);
                r
            }
            other => {
                status = format!("failed: unknown format {other}");
                continue;
            }
        };
        if let Err(e) = res {
            status = format!("incomplete: {e}");
        }
    }

    let passed = report.checks.iter().filter(|c| c.applicable && c.passed).count();
    let applicable = report.checks.iter().filter(|c| c.applicable).count();
    let y1 = report.y1.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into());
    let a1 = report
        .a1_ci
        .map(|(lo, hi)| format!("[{lo:.6}, {hi:.6}]"))
        .unwrap_or_else(|| "-".into());
    let all_passed = report.all_passed() && status == "complete";
    RunOutcome {
        summary: format!(
            "{label}: regime={:?} termination={:?} y1={y1} a1={a1} checks={passed}/{applicable}",
            report.regime, report.termination
        ),
        entry: ManifestEntry {
            label,
            n: p.n,
            lambda: p.lambda,
            mu: p.mu,
            files,
            status,
            all_passed,
        },
    }
}

fn config_error(field: &str, msg: &str) -> ExitCode {
    eprintln!("configuration error in --{field}: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // validate the whole sweep before doing any work
    let mut triples = Vec::new();
    for &n in &cli.n {
        for &lambda in &cli.lambda {
            for &mu in &cli.mu {
                match Params::new(n, lambda, mu) {
                    Ok(p) => triples.push(p),
                    Err(e) => {
                        let field = if n < 2 {
                            "n"
                        } else if !(mu > 0.0) {
                            "mu"
                        } else {
                            "lambda"
                        };
                        return config_error(field, &e);
                    }
                }
            }
        }
    }
    if !(cli.y_max > 0.0) {
        return config_error("y-max", "must be > 0");
    }
    if !(cli.rtol > 0.0) {
        return config_error("rtol", "must be > 0");
    }
    if !(cli.atol > 0.0) {
        return config_error("atol", "must be > 0");
    }
    if let Some(eta) = cli.eta {
        for p in &triples {
            if !(eta > 0.0 && eta <= p.mu / 4.0) {
                return config_error(
                    "eta",
                    &format!("must satisfy 0 < eta <= mu/4 for every swept mu; violated at mu = {}", p.mu),
                );
            }
        }
    }
    for fmt in &cli.format {
        if !matches!(fmt.as_str(), "csv" | "json" | "svg") {
            return config_error("format", &format!("unknown format {fmt}"));
        }
    }
    if cli.jobs == 0 {
        return config_error("jobs", "must be >= 1");
    }
    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        return config_error("out", &format!("cannot create {}: {e}", cli.out.display()));
    }

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => return config_error("jobs", &e.to_string()),
    };
    let outcomes: Vec<RunOutcome> = pool.install(|| {
        use rayon::prelude::*;
        triples.par_iter().map(|p| run_triple(&cli, *p)).collect()
    });

    let mut all_ok = true;
    let mut complete = true;
    let mut runs = Vec::new();
    for o in outcomes {
        println!("{}", o.summary);
        all_ok &= o.entry.all_passed;
        complete &= o.entry.status == "complete";
        runs.push(o.entry);
    }
    let manifest = Manifest { schema_version: "1", complete, runs };
    let manifest_path = cli.out.join("manifest.json");
    match serde_json::to_string_pretty(&manifest) {
        Ok(mut body) => {
            body.push('\n');
            if let Err(e) = std::fs::write(&manifest_path, body) {
                eprintln!("failed to write {}: {e}", manifest_path.display());
                return ExitCode::from(1);
            }
        }
        Err(e) => {
            eprintln!("failed to serialize manifest: {e}");
            return ExitCode::from(1);
        }
    }

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
