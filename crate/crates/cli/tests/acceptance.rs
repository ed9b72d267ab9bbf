//! Workspace acceptance gate.
//!
//! Each test below pins one release criterion end to end, prints a single
//! `criterion N: PASS — …` line on success (visible with `--nocapture`),
//! and fails with a `criterion N: FAIL — …` message otherwise. Numeric
//! tolerances and runtime budgets are part of the contract and must not be
//! loosened to make a failing build green.

use std::collections::HashMap;
use std::time::Instant;

use bdris_cli::{run_plan, ExperimentPlan};
use bdris_core::circuit::{
    assemble_susceptance, extract_components, scattering_from_susceptance,
    DEFAULT_REFERENCE_IMPEDANCE,
};
use bdris_core::embedding::{band3_recursive_drawing, count_crossings};
use bdris_core::graph::MinorKind;
use bdris_core::sumrate::{
    gradient_check, optimize, sample_rayleigh, scalar_grid_reference, DEFAULT_PATH_GAIN,
};
use bdris_core::{
    ArchitectureSpec, CircuitGraph, OptimizerOptions, SusceptancePattern, SystemConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arch(text: &str) -> ArchitectureSpec {
    text.parse()
        .unwrap_or_else(|e| panic!("architecture literal {text:?} must parse: {e}"))
}

fn pass(num: u32, detail: &str) {
    println!("criterion {num}: PASS — {detail}");
}

/// Criterion 1: for every architecture family and every element count from
/// 3 through 12 that satisfies divisibility, the family-level planarity
/// classification evaluated at N agrees with the exact planarity test on
/// the constructed graph. Budget: 10 s.
#[test]
fn criterion_01_family_classification_matches_planarity_test() {
    let started = Instant::now();
    let mut families = vec![
        "single".to_string(),
        "fully".to_string(),
        "tree".to_string(),
    ];
    for g in 2..=5 {
        families.push(format!("group:{g}"));
        families.push(format!("forest:{g}"));
    }
    for q in 1..=4 {
        families.push(format!("stem:{q}"));
        families.push(format!("band:{q}"));
    }
    for i in 1..=3 {
        families.push(format!("maxplanar:{i}"));
    }

    let mut cases = 0usize;
    for family in &families {
        let spec = arch(family);
        for n in 3..=12 {
            let graph = match spec.build_graph(n) {
                Ok(g) => g,
                Err(_) => continue, // divisibility does not permit this N
            };
            let tested = graph.is_planar().planar;
            let classified = spec
                .planar_at(n)
                .expect("buildable (family, N) must classify");
            assert_eq!(
                tested, classified,
                "criterion 1: FAIL — {family} at N = {n}: planarity test says {tested}, \
                 classification says {classified}"
            );
            cases += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 1: FAIL — sweep took {elapsed:.2?}, budget is 10 s"
    );
    pass(
        1,
        &format!("{cases} (family, N) cases agree with the planarity test in {elapsed:.2?}"),
    );
}

/// Criterion 2: the classical anchors — K5 and K3,3 non-planar, K4 planar,
/// and every forest planar. Exact, no tolerance.
#[test]
fn criterion_02_kuratowski_anchors_and_forests() {
    let k5 = arch("fully").build_graph(5).unwrap();
    let k5_verdict = k5.forbidden_minor_oracle().unwrap();
    assert!(
        !k5.is_planar().planar && !k5_verdict.planar,
        "criterion 2: FAIL — K5 must be non-planar"
    );
    assert_eq!(
        k5_verdict.witness.as_ref().map(|w| w.kind),
        Some(MinorKind::K5),
        "criterion 2: FAIL — K5 witness must name K5"
    );

    let k33 = CircuitGraph::new(
        6,
        (1..=3).flat_map(|i| (4..=6).map(move |j| (i, j))),
    )
    .unwrap();
    let k33_verdict = k33.forbidden_minor_oracle().unwrap();
    assert!(
        !k33.is_planar().planar && !k33_verdict.planar,
        "criterion 2: FAIL — K3,3 must be non-planar"
    );
    assert_eq!(
        k33_verdict.witness.as_ref().map(|w| w.kind),
        Some(MinorKind::K33),
        "criterion 2: FAIL — K3,3 witness must name K3,3"
    );

    let k4 = arch("fully").build_graph(4).unwrap();
    assert!(
        k4.is_planar().planar,
        "criterion 2: FAIL — K4 must be planar"
    );

    // Forests: edgeless graphs, paths, stars, grouped forests, and random
    // forests built by parent attachment (each vertex links to at most one
    // earlier vertex, so no cycle can close).
    let mut forests: Vec<CircuitGraph> = Vec::new();
    for n in 1..=8 {
        forests.push(arch("single").build_graph(n).unwrap());
    }
    for n in 2..=10 {
        forests.push(arch("tree").build_graph(n).unwrap());
    }
    for (g, n) in [(2, 4), (2, 8), (3, 9), (4, 8), (5, 10)] {
        forests.push(arch(&format!("forest:{g}")).build_graph(n).unwrap());
    }
    for n in 3..=9 {
        forests.push(CircuitGraph::new(n, (2..=n).map(|v| (1, v))).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xF0_4E57);
    for _ in 0..40 {
        let n = rng.random_range(1..=10usize);
        let mut edges = Vec::new();
        for v in 2..=n {
            if rng.random_bool(0.7) {
                edges.push((rng.random_range(1..v), v));
            }
        }
        forests.push(CircuitGraph::new(n, edges).unwrap());
    }
    let total = forests.len();
    for f in forests {
        assert!(
            f.is_acyclic(),
            "criterion 2: FAIL — forest generator produced a cycle"
        );
        assert!(
            f.is_planar().planar,
            "criterion 2: FAIL — a forest was classified non-planar"
        );
    }
    pass(
        2,
        &format!("K5/K3,3 non-planar with named witnesses, K4 planar, {total} forests planar"),
    );
}

/// Criterion 3: each maximal-planar example at every N from 5 through 30
/// has exactly 3N − 6 edges, is planar, and loses planarity under every
/// possible single-edge augmentation. Budget: 2 min.
#[test]
fn criterion_03_maximal_planar_examples_are_maximal() {
    let started = Instant::now();
    let mut augmentations = 0usize;
    for idx in 1..=3 {
        let spec = arch(&format!("maxplanar:{idx}"));
        for n in 5..=30 {
            let graph = spec.build_graph(n).unwrap();
            assert_eq!(
                graph.edge_count(),
                3 * n - 6,
                "criterion 3: FAIL — maxplanar:{idx} at N = {n} has {} edges, want {}",
                graph.edge_count(),
                3 * n - 6
            );
            assert!(
                graph.is_planar().planar,
                "criterion 3: FAIL — maxplanar:{idx} at N = {n} is not planar"
            );
            for (i, j) in graph.non_edges() {
                let augmented = graph.with_edge(i, j).unwrap();
                assert!(
                    !augmented.is_planar().planar,
                    "criterion 3: FAIL — maxplanar:{idx} at N = {n} stays planar \
                     after adding ({i}, {j})"
                );
                augmentations += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "criterion 3: FAIL — maximality sweep took {elapsed:.2?}, budget is 2 min"
    );
    pass(
        3,
        &format!(
            "3 examples × N ∈ 5..=30: 3N−6 edges, planar, {augmentations} augmentations \
             all non-planar in {elapsed:.2?}"
        ),
    );
}

/// Criterion 4: the planarity test agrees with the brute-force
/// forbidden-minor oracle on at least 500 random graphs with up to 8
/// vertices — 100% agreement.
#[test]
fn criterion_04_planarity_test_agrees_with_minor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);
    let mut planar_count = 0usize;
    let total = 600usize;
    for _ in 0..total {
        let n = rng.random_range(1..=8usize);
        let p = rng.random_range(0.15..0.85f64);
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let graph = CircuitGraph::new(n, edges).unwrap();
        let fast = graph.is_planar().planar;
        let oracle = graph.forbidden_minor_oracle().unwrap().planar;
        assert_eq!(
            fast, oracle,
            "criterion 4: FAIL — disagreement on an n = {n} graph: \
             test says {fast}, oracle says {oracle}"
        );
        if fast {
            planar_count += 1;
        }
    }
    pass(
        4,
        &format!(
            "{total} random graphs (n ≤ 8) agree with the oracle \
             ({planar_count} planar, {} non-planar)",
            total - planar_count
        ),
    );
}

/// Criterion 5: over 1000 random pattern-constrained susceptance matrices
/// at N ∈ {2, 4, 8, 16}, the scattering matrix is unitary and symmetric to
/// 1e−10 in Frobenius norm, and assemble/extract round-trips the component
/// vector bitwise on a dyadic grid.
#[test]
fn criterion_05_scattering_identities_and_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let pool = ["single", "fully", "tree", "band:2", "group:2"];
    let mut worst_unitarity: f64 = 0.0;
    let mut worst_symmetry: f64 = 0.0;
    let mut checked = 0usize;
    for &n in &[2usize, 4, 8, 16] {
        let patterns: Vec<SusceptancePattern> = pool
            .iter()
            .map(|f| SusceptancePattern::new(arch(f).build_graph(n).unwrap()))
            .collect();
        for trial in 0..250 {
            let pattern = &patterns[trial % patterns.len()];
            // Dyadic grid: integer / 2^20 keeps every diagonal
            // accumulation exact in f64.
            let components: Vec<f64> = (0..pattern.dimension())
                .map(|_| rng.random_range(-(1 << 20)..=(1i64 << 20)) as f64 / f64::from(1 << 20))
                .collect();
            let b = assemble_susceptance(pattern, &components).unwrap();
            let theta = scattering_from_susceptance(&b, DEFAULT_REFERENCE_IMPEDANCE).unwrap();
            let u = theta.unitarity_defect();
            let s = theta.symmetry_defect();
            assert!(
                u < 1e-10,
                "criterion 5: FAIL — unitarity defect {u:.3e} at N = {n}"
            );
            assert!(
                s < 1e-10,
                "criterion 5: FAIL — symmetry defect {s:.3e} at N = {n}"
            );
            worst_unitarity = worst_unitarity.max(u);
            worst_symmetry = worst_symmetry.max(s);

            let recovered = extract_components(&b, pattern).unwrap();
            assert_eq!(
                recovered.len(),
                components.len(),
                "criterion 5: FAIL — round-trip length mismatch at N = {n}"
            );
            for (i, (orig, back)) in components.iter().zip(&recovered).enumerate() {
                assert!(
                    orig.to_bits() == back.to_bits(),
                    "criterion 5: FAIL — component {i} round-trip {orig} → {back} at N = {n}"
                );
            }
            checked += 1;
        }
    }
    pass(
        5,
        &format!(
            "{checked} random matrices: worst unitarity defect {worst_unitarity:.2e}, \
             worst symmetry defect {worst_symmetry:.2e}, round-trip bitwise exact"
        ),
    );
}

/// Criterion 6: the recursive band-3 drawing has zero edge crossings for
/// every N from 3 through 100. Budget: 30 s.
#[test]
fn criterion_06_band3_drawing_has_no_crossings() {
    let started = Instant::now();
    for n in 3..=100 {
        let drawing = band3_recursive_drawing(n).unwrap();
        let crossings = count_crossings(&drawing);
        assert_eq!(
            crossings, 0,
            "criterion 6: FAIL — drawing at N = {n} has {crossings} crossings"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "criterion 6: FAIL — crossing sweep took {elapsed:.2?}, budget is 30 s"
    );
    pass(
        6,
        &format!("zero crossings for N ∈ 3..=100 in {elapsed:.2?}"),
    );
}

/// Criterion 7: the analytic susceptance gradient matches a central
/// finite difference to a relative error below 1e−4 on 50 random
/// instances with N ≤ 8 and M = K = 2.
#[test]
fn criterion_07_analytic_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
    let pool = ["fully", "band:2", "band:3", "tree", "single"];
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let n = rng.random_range(2..=8usize);
        let pattern = SusceptancePattern::new(arch(pool[trial % pool.len()]).build_graph(n).unwrap());
        let config = SystemConfig {
            m: 2,
            k: 2,
            n,
            p_t: 1.0,
            noise_power: 1e-2,
            path_gain_it: 1.0,
            path_gain_ri: 1.0,
            seed: 0x6AD0 + trial as u64,
        };
        let ch = sample_rayleigh(&config);
        let components: Vec<f64> = (0..pattern.dimension())
            .map(|_| rng.random_range(-0.02..0.02))
            .collect();
        let b0 = assemble_susceptance(&pattern, &components).unwrap();
        let error = gradient_check(&config, &ch, &pattern, &b0).unwrap();
        assert!(
            error < 1e-4,
            "criterion 7: FAIL — gradient error {error:.3e} on instance {trial} (N = {n})"
        );
        worst = worst.max(error);
    }
    pass(
        7,
        &format!("50 instances (N ≤ 8, M = K = 2): worst relative gradient error {worst:.2e}"),
    );
}

fn mean_rates(plan: &ExperimentPlan) -> HashMap<(String, usize), f64> {
    let outcome = run_plan(plan).expect("experiment plan must run");
    assert!(
        outcome.skipped.is_empty(),
        "no (architecture, N) pair in an acceptance plan may be skipped"
    );
    outcome
        .summaries
        .into_iter()
        .map(|s| ((s.arch, s.n), s.mean_sum_rate))
        .collect()
}

/// Criterion 8: desk-scale rate ordering. With M = 4, K = 4, P_T = 10 dBm,
/// σ² = −80 dBm, N ∈ {8, 16}, 50 realizations, and 3 restarts, the mean
/// sum rates satisfy single < tree < each maximal-planar example < fully
/// with every gap at least 2% of the fully-connected mean, and the band-7
/// mean lies within 3% of fully-connected. Budget: 15 min.
#[test]
fn criterion_08_mean_rate_ordering_across_architectures() {
    let started = Instant::now();
    let plan = ExperimentPlan {
        architectures: vec![
            "single".to_string(),
            "tree".to_string(),
            "maxplanar:1".to_string(),
            "maxplanar:2".to_string(),
            "maxplanar:3".to_string(),
            "band:7".to_string(),
            "fully".to_string(),
        ],
        n_values: vec![8, 16],
        realizations: 50,
        seed: 7,
        m: 4,
        k: 4,
        p_t_dbm: 10.0,
        noise_dbm: -80.0,
        path_gain_it: DEFAULT_PATH_GAIN,
        path_gain_ri: DEFAULT_PATH_GAIN,
        optimizer: OptimizerOptions {
            tol: 1e-6,
            max_iter: 1200,
            restarts: 3,
            ..OptimizerOptions::default()
        },
        output_dir: None,
    };
    let means = mean_rates(&plan);
    let mut detail = Vec::new();
    let mut violations = Vec::new();
    for &n in &[8usize, 16] {
        let at = |name: &str| means[&(name.to_string(), n)];
        let fully = at("fully");
        let gap = 0.02 * fully;
        let single = at("single");
        let tree = at("tree");
        if tree - single < gap {
            violations.push(format!(
                "N = {n}: tree − single = {:.4} < 2% of fully ({gap:.4})",
                tree - single
            ));
        }
        for mp in ["maxplanar:1", "maxplanar:2", "maxplanar:3"] {
            let rate = at(mp);
            if rate - tree < gap {
                violations.push(format!(
                    "N = {n}: {mp} − tree = {:.4} < 2% of fully ({gap:.4})",
                    rate - tree
                ));
            }
            if fully - rate < gap {
                violations.push(format!(
                    "N = {n}: fully − {mp} = {:.4} < 2% of fully ({gap:.4})",
                    fully - rate
                ));
            }
        }
        let band = at("band:7");
        if (fully - band).abs() > 0.03 * fully {
            violations.push(format!(
                "N = {n}: band:7 deviates {:.2}% from fully, budget 3%",
                100.0 * (fully - band).abs() / fully
            ));
        }
        detail.push(format!(
            "N={n}: single {single:.4}, tree {tree:.4}, mp {:.4}/{:.4}/{:.4}, \
             band:7 {band:.4}, fully {fully:.4}",
            at("maxplanar:1"),
            at("maxplanar:2"),
            at("maxplanar:3"),
        ));
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs_f64() >= 900.0 {
        violations.push(format!("sweep took {elapsed:.2?}, budget is 15 min"));
    }
    assert!(
        violations.is_empty(),
        "criterion 8: FAIL — measured [{}]; violations: {}",
        detail.join("; "),
        violations.join("; ")
    );
    pass(
        8,
        &format!(
            "ordering and gaps hold over 50 realizations in {elapsed:.2?} ({})",
            detail.join("; ")
        ),
    );
}

/// Criterion 9: tunable-component totals at N ∈ {8, 16, 24, 32} match the
/// closed forms N(N+1)/2, 8N−28, 4N−6, 2N−1, and N for fully-connected,
/// band-7, maximal-planar, tree, and single-connected surfaces.
#[test]
fn criterion_09_component_count_closed_forms() {
    for &n in &[8usize, 16, 24, 32] {
        let total = |name: &str| arch(name).component_count(n).unwrap().total;
        assert_eq!(
            total("fully"),
            n * (n + 1) / 2,
            "criterion 9: FAIL — fully at N = {n}"
        );
        assert_eq!(
            total("band:7"),
            8 * n - 28,
            "criterion 9: FAIL — band:7 at N = {n}"
        );
        for idx in 1..=3 {
            assert_eq!(
                total(&format!("maxplanar:{idx}")),
                4 * n - 6,
                "criterion 9: FAIL — maxplanar:{idx} at N = {n}"
            );
        }
        assert_eq!(total("tree"), 2 * n - 1, "criterion 9: FAIL — tree at N = {n}");
        assert_eq!(total("single"), n, "criterion 9: FAIL — single at N = {n}");
    }
    pass(
        9,
        "component totals match N(N+1)/2, 8N−28, 4N−6, 2N−1, N at N ∈ {8, 16, 24, 32}",
    );
}

/// Criterion 10: with as many transmit antennas as receivers (M = K = 2)
/// at N = 16, each maximal-planar example's mean rate over 100
/// realizations lies within 2% of the fully-connected mean.
#[test]
fn criterion_10_maximal_planar_parity_at_two_streams() {
    let plan = ExperimentPlan {
        architectures: vec![
            "maxplanar:1".to_string(),
            "maxplanar:2".to_string(),
            "maxplanar:3".to_string(),
            "fully".to_string(),
        ],
        n_values: vec![16],
        realizations: 100,
        seed: 11,
        m: 2,
        k: 2,
        p_t_dbm: 10.0,
        noise_dbm: -80.0,
        path_gain_it: DEFAULT_PATH_GAIN,
        path_gain_ri: DEFAULT_PATH_GAIN,
        optimizer: OptimizerOptions {
            tol: 1e-6,
            max_iter: 1200,
            restarts: 3,
            ..OptimizerOptions::default()
        },
        output_dir: None,
    };
    let means = mean_rates(&plan);
    let fully = means[&("fully".to_string(), 16)];
    let mut detail = vec![format!("fully {fully:.3}")];
    for idx in 1..=3 {
        let name = format!("maxplanar:{idx}");
        let rate = means[&(name.clone(), 16)];
        let deviation = (fully - rate).abs() / fully;
        assert!(
            deviation <= 0.02,
            "criterion 10: FAIL — {name} deviates {:.2}% from fully, budget 2%",
            100.0 * deviation
        );
        detail.push(format!("{name} {rate:.3} ({:+.2}%)", 100.0 * (rate - fully) / fully));
    }
    pass(
        10,
        &format!(
            "100 realizations at M = K = 2, N = 16: {}",
            detail.join(", ")
        ),
    );
}

/// Criterion 11: at N = M = K = 1 the optimizer lands within 1e−3
/// bits/s/Hz of a 10⁵-point grid sweep over the scalar susceptance.
#[test]
fn criterion_11_scalar_instance_matches_grid_sweep() {
    let mut worst: f64 = 0.0;
    for seed in 0..10u64 {
        let config = SystemConfig {
            m: 1,
            k: 1,
            n: 1,
            p_t: 1.0,
            noise_power: 1e-2,
            path_gain_it: 1.0,
            path_gain_ri: 1.0,
            seed: 0x5CA1A0 + seed,
        };
        let ch = sample_rayleigh(&config);
        let pattern = SusceptancePattern::new(arch("single").build_graph(1).unwrap());
        let result = optimize(&config, &ch, &pattern, &OptimizerOptions::default()).unwrap();
        let reference = scalar_grid_reference(&config, &ch, 100_000, (-0.05, 0.05)).unwrap();
        let diff = (result.sum_rate() - reference).abs();
        assert!(
            diff < 1e-3,
            "criterion 11: FAIL — optimizer {:.6} vs grid {reference:.6} (diff {diff:.2e})",
            result.sum_rate()
        );
        worst = worst.max(diff);
    }
    pass(
        11,
        &format!("10 scalar instances: worst |optimizer − grid| = {worst:.2e} bits/s/Hz"),
    );
}
