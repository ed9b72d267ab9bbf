//! `bdris` — construct, classify, draw, and benchmark BD-RIS
//! interconnection topologies.
//!
//! Exit codes: 0 success, 1 usage problems (bad arguments, unparsable
//! specs or plans), 2 runtime or verification failures (I/O trouble,
//! solver errors, a drawing that fails its zero-crossing check).

use anyhow::{Context, Result};
use bdris_cli::chart::{line_chart, Series};
use bdris_cli::{plan::ExperimentPlan, report, run_plan};
use bdris_core::arch::is_maximal_planar;
use bdris_core::embedding::{band3_recursive_drawing, count_crossings, export_svg};
use bdris_core::ArchitectureSpec;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE_EXIT: u8 = 1;
const RUNTIME_EXIT: u8 = 2;

#[derive(Parser)]
#[command(name = "bdris", version, about = "BD-RIS planar-topology toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a JSON report for one architecture at a given element count
    Arch {
        /// Architecture spec, e.g. "fully", "band:3", "group:4"
        spec: String,
        /// Number of RIS elements
        n: usize,
    },
    /// Export the recursive planar drawing of the 3-band architecture
    Embed {
        /// Number of RIS elements (at least 3)
        n: usize,
        /// Output directory (default: $BDRIS_OUT_DIR, then ".")
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a sum-rate experiment described by a JSON plan file
    Simulate {
        /// Path to the plan JSON
        #[arg(long)]
        plan: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests land here too; only real usage
            // mistakes should exit nonzero.
            let is_usage_error = err.use_stderr();
            let _ = err.print();
            return if is_usage_error {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Arch { spec, n } => cmd_arch(&spec, n),
        Command::Embed { n, out } => cmd_embed(n, out),
        Command::Simulate { plan } => cmd_simulate(&plan),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(RUNTIME_EXIT)
        }
    }
}

/// Default output directory: flag, then environment, then CWD.
fn resolve_out_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os("BDRIS_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn cmd_arch(spec_text: &str, n: usize) -> Result<ExitCode> {
    let spec: ArchitectureSpec = match spec_text.parse() {
        Ok(spec) => spec,
        Err(err) => {
            eprintln!("error: {err}");
            eprintln!("usage: bdris arch <spec> <N>   (specs: single, group:G, fully, forest:G, tree, stem:Q, band:Q, maxplanar:1|2|3)");
            return Ok(ExitCode::from(USAGE_EXIT));
        }
    };
    let graph = match spec.build_graph(n) {
        Ok(graph) => graph,
        Err(err) => {
            eprintln!("error: {err}");
            eprintln!("usage: bdris arch <spec> <N>   (N must satisfy the family's constraints)");
            return Ok(ExitCode::from(USAGE_EXIT));
        }
    };
    let mut verdict = graph.is_planar();
    if !verdict.planar && verdict.witness.is_none() {
        // The fast test only decides; for small graphs the minor search
        // can name the K5/K3,3 obstruction as well.
        if let Ok(with_witness) = graph.forbidden_minor_oracle() {
            verdict = with_witness;
        }
    }
    let maximal = is_maximal_planar(&graph).ok();
    let complexity = spec.component_count(n).expect("graph already built");
    let report = serde_json::json!({
        "spec": spec.to_string(),
        "n": n,
        "edges": graph.edge_count(),
        "planar": verdict.planar,
        "witness": verdict.witness,
        "maximal_planar": maximal,
        "classification": spec.classify_planarity(),
        "classification_text": spec.classify_planarity().to_string(),
        "complexity": complexity,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_embed(n: usize, out: Option<PathBuf>) -> Result<ExitCode> {
    let drawing = match band3_recursive_drawing(n) {
        Ok(drawing) => drawing,
        Err(err) => {
            eprintln!("error: {err}");
            eprintln!("usage: bdris embed <N> [--out dir]   (N must be at least 3)");
            return Ok(ExitCode::from(USAGE_EXIT));
        }
    };
    let crossings = count_crossings(&drawing);
    let dir = resolve_out_dir(out);
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let svg_path = dir.join(format!("band3_n{n}.svg"));
    let json_path = dir.join(format!("band3_n{n}.json"));
    std::fs::write(&svg_path, export_svg(&drawing))
        .with_context(|| format!("cannot write {}", svg_path.display()))?;
    std::fs::write(&json_path, drawing.to_json().to_string())
        .with_context(|| format!("cannot write {}", json_path.display()))?;
    println!("wrote {}", svg_path.display());
    println!("wrote {}", json_path.display());
    println!("crossings: {crossings}");
    if crossings != 0 {
        eprintln!("error: drawing has {crossings} crossings, expected 0");
        return Ok(ExitCode::from(RUNTIME_EXIT));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(plan_path: &PathBuf) -> Result<ExitCode> {
    let plan = match ExperimentPlan::load(plan_path) {
        Ok(plan) => plan,
        Err(err) => {
            eprintln!("error: {err:#}");
            eprintln!("usage: bdris simulate --plan <file.json>");
            return Ok(ExitCode::from(USAGE_EXIT));
        }
    };
    let outcome = run_plan(&plan)?;
    for note in &outcome.skipped {
        eprintln!("warning: {note}");
    }

    let dir = resolve_out_dir(plan.output_dir.clone());
    report::write_output(&dir, "rates.csv", &report::rates_csv(&outcome.records))?;
    report::write_output(&dir, "summary.csv", &report::summary_csv(&outcome.summaries))?;

    // One line per architecture, points indexed by N.
    let arch_order: Vec<String> = plan
        .parsed_architectures()
        .iter()
        .map(|a| a.to_string())
        .collect();
    let series_for = |value: &dyn Fn(&bdris_cli::SummaryRecord) -> f64| -> Vec<Series> {
        arch_order
            .iter()
            .filter_map(|name| {
                let points: Vec<(f64, f64)> = outcome
                    .summaries
                    .iter()
                    .filter(|s| &s.arch == name)
                    .map(|s| (s.n as f64, value(s)))
                    .collect();
                (!points.is_empty()).then(|| Series {
                    label: name.clone(),
                    points,
                })
            })
            .collect()
    };
    report::write_output(
        &dir,
        "rate_vs_n.svg",
        &line_chart(
            "Mean sum rate vs. N",
            "RIS elements N",
            "sum rate (bits/s/Hz)",
            &series_for(&|s| s.mean_sum_rate),
        ),
    )?;
    report::write_output(
        &dir,
        "complexity_vs_n.svg",
        &line_chart(
            "Circuit complexity vs. N",
            "RIS elements N",
            "tunable components",
            &series_for(&|s| s.component_count as f64),
        ),
    )?;

    for s in &outcome.summaries {
        println!(
            "{:>12}  N={:<3} mean rate {:>10.6}  components {}",
            s.arch, s.n, s.mean_sum_rate, s.component_count
        );
    }
    println!("results written to {}", dir.display());
    Ok(ExitCode::SUCCESS)
}
