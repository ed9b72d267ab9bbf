//! Shared fixtures for the workspace benchmarks.
//!
//! Everything here is deterministic so benchmark runs compare the same
//! workload across commits; no randomness beyond seeded channel draws.

use bdris_core::sumrate::DEFAULT_PATH_GAIN;
use bdris_core::{ArchitectureSpec, CircuitGraph, SusceptancePattern, SystemConfig};

/// Builds the graph for a textual architecture spec at the given size.
pub fn graph(spec: &str, n: usize) -> CircuitGraph {
    spec.parse::<ArchitectureSpec>()
        .unwrap_or_else(|e| panic!("bad spec {spec:?}: {e}"))
        .build_graph(n)
        .unwrap_or_else(|e| panic!("cannot build {spec} at N = {n}: {e}"))
}

/// Pattern for a textual architecture spec at the given size.
pub fn pattern(spec: &str, n: usize) -> SusceptancePattern {
    SusceptancePattern::new(graph(spec, n))
}

/// A deterministic, well-scaled component vector for a pattern: small
/// values of alternating sign, the regime the optimizer operates in.
pub fn components(pattern: &SusceptancePattern) -> Vec<f64> {
    (0..pattern.dimension())
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            sign * 0.015 * (1.0 + (i % 7) as f64 / 7.0)
        })
        .collect()
}

/// The desk-scale downlink configuration used throughout the benches.
pub fn desk_config(n: usize, m: usize, k: usize, seed: u64) -> SystemConfig {
    SystemConfig {
        m,
        k,
        n,
        p_t: 0.01,          // 10 dBm
        noise_power: 1e-11, // −80 dBm
        path_gain_it: DEFAULT_PATH_GAIN,
        path_gain_ri: DEFAULT_PATH_GAIN,
        seed,
    }
}
