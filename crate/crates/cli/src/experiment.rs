//! Plan execution: parallel optimization runs with canonical ordering.

use crate::plan::ExperimentPlan;
use anyhow::{Context, Result};
use bdris_core::circuit::SusceptancePattern;
use bdris_core::sumrate::{mix_seed, optimize, sample_rayleigh};
use bdris_core::ArchitectureSpec;
use rayon::prelude::*;

/// Seed-stream tags keeping channel draws and solver restarts apart.
const CHANNEL_STREAM: u64 = 1;
const RUN_STREAM: u64 = 2;

/// One optimization run, identified by architecture text, element count,
/// and realization index.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub arch: String,
    pub n: usize,
    pub realization: usize,
    pub sum_rate: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Per-(architecture, N) aggregate for the summary table and charts.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRecord {
    pub arch: String,
    pub n: usize,
    pub mean_sum_rate: f64,
    pub component_count: usize,
}

/// Everything a plan run produces, already canonically ordered.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<RunRecord>,
    pub summaries: Vec<SummaryRecord>,
    /// Human-readable notes for (architecture, N) pairs that were skipped,
    /// e.g. group-size divisibility violations.
    pub skipped: Vec<String>,
}

/// Runs every (architecture, N, realization) triple of the plan.
///
/// Realizations execute concurrently; determinism comes from deriving
/// every random stream from the plan seed and from sorting the results
/// canonically before they are written anywhere. The channel stream
/// depends only on (N, realization), so all architectures face identical
/// channels; the solver's restart stream additionally mixes in the
/// architecture index.
pub fn run_plan(plan: &ExperimentPlan) -> Result<ExperimentOutcome> {
    plan.validate()?;
    let archs = plan.parsed_architectures();

    // Resolve runnable (arch, N) pairs up front; report the rest.
    let mut tasks: Vec<(usize, &ArchitectureSpec, usize)> = Vec::new();
    let mut skipped = Vec::new();
    for (ai, arch) in archs.iter().enumerate() {
        for &n in &plan.n_values {
            match arch.build_graph(n) {
                Ok(_) => tasks.push((ai, arch, n)),
                Err(e) => skipped.push(format!("skipping {arch} at N = {n}: {e}")),
            }
        }
    }

    let mut records: Vec<RunRecord> = tasks
        .par_iter()
        .flat_map(|&(ai, arch, n)| {
            (0..plan.realizations)
                .into_par_iter()
                .map(move |r| (ai, arch, n, r))
        })
        .map(|(ai, arch, n, r)| -> Result<RunRecord> {
            let channel_seed = mix_seed(plan.seed, &[CHANNEL_STREAM, n as u64, r as u64]);
            let run_seed = mix_seed(plan.seed, &[RUN_STREAM, ai as u64, n as u64, r as u64]);
            let ch = sample_rayleigh(&plan.config_for(n, channel_seed));
            let config = plan.config_for(n, run_seed);
            let pattern = SusceptancePattern::new(arch.build_graph(n).expect("pre-checked"));
            let result = optimize(&config, &ch, &pattern, &plan.optimizer)
                .with_context(|| format!("optimize failed for {arch} at N = {n}"))?;
            Ok(RunRecord {
                arch: arch.to_string(),
                n,
                realization: r,
                sum_rate: result.sum_rate(),
                iterations: result.iterations,
                converged: result.converged,
            })
        })
        .collect::<Result<_>>()?;

    records.sort_by(|a, b| {
        (&a.arch, a.n, a.realization).cmp(&(&b.arch, b.n, b.realization))
    });

    let mut summaries = Vec::new();
    for (ai, arch) in archs.iter().enumerate() {
        for &n in &plan.n_values {
            if !tasks.iter().any(|&(ti, _, tn)| ti == ai && tn == n) {
                continue;
            }
            let name = arch.to_string();
            let rates: Vec<f64> = records
                .iter()
                .filter(|rec| rec.arch == name && rec.n == n)
                .map(|rec| rec.sum_rate)
                .collect();
            summaries.push(SummaryRecord {
                arch: name,
                n,
                mean_sum_rate: rates.iter().sum::<f64>() / rates.len() as f64,
                component_count: arch.component_count(n).expect("pre-checked").total,
            });
        }
    }
    summaries.sort_by(|a, b| (&a.arch, a.n).cmp(&(&b.arch, b.n)));

    Ok(ExperimentOutcome {
        records,
        summaries,
        skipped,
    })
}
