//! Alternating sum-rate maximization over the precoder and the
//! pattern-constrained susceptance matrix.
//!
//! The two blocks are updated in turn until the sum rate stalls:
//!
//! * **Precoder step** — a weighted-MMSE update: with the susceptance (and
//!   hence the effective channels) fixed, the sum-rate problem is
//!   equivalent to a weighted MSE minimization whose receive scalars,
//!   weights, and precoder each have closed-form optima. The power budget
//!   enters through a water-filling-style multiplier found by bisection.
//!   The update never decreases the sum rate.
//! * **Susceptance step** — gradient ascent on the free component vector
//!   (grounds and interconnections), with Armijo backtracking. The
//!   sparsity constraint needs no projection: optimizing over the
//!   component vector *is* the constraint set, and the Cayley transform
//!   keeps the scattering matrix feasible by construction.
//!
//! Both steps keep the previous iterate whenever a candidate fails to
//! improve, so the recorded rate trace is non-decreasing by construction.
//! Multiple restarts (first from `B = 0`, then from small random
//! components) guard against poor stationary points; the best run wins.

use super::channel::{mix_seed, ChannelRealization, SystemConfig};
use super::rate::{effective_channels, sum_rate, Precoder};
use super::SumRateError;
use crate::circuit::{
    assemble_susceptance, extract_components, scattering_from_susceptance, ScatteringMatrix,
    SusceptanceMatrix, SusceptancePattern, DEFAULT_REFERENCE_IMPEDANCE,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Stream tag separating restart randomness from channel randomness.
const RESTART_STREAM: u64 = 0x5249_5354;

/// Consecutive sub-tolerance outer iterations required before a start is
/// declared converged. Spectral steps make progress in bursts, so a
/// single quiet iteration is a poor stationarity signal.
const CONVERGENCE_PATIENCE: usize = 5;

/// Solver knobs, all with serviceable defaults; a plan file may override
/// any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerOptions {
    /// Relative sum-rate change below which the outer loop stops.
    pub tol: f64,
    /// Maximum outer iterations per start.
    pub max_iter: usize,
    /// Independent starts (first deterministic, rest randomized).
    pub restarts: usize,
    /// Backtracking shrink factor for the susceptance line search.
    pub armijo_shrink: f64,
    /// Sufficient-increase slope for the susceptance line search.
    pub armijo_slope: f64,
    /// Initial susceptance step length.
    pub initial_step: f64,
    /// Maximum backtracking evaluations per susceptance step.
    pub max_line_search: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            tol: 1e-4,
            max_iter: 200,
            restarts: 3,
            armijo_shrink: 0.5,
            armijo_slope: 1e-4,
            initial_step: 1.0,
            max_line_search: 60,
        }
    }
}

impl OptimizerOptions {
    fn validate(&self) -> Result<(), SumRateError> {
        let fail = |reason: &str| {
            Err(SumRateError::InvalidConfig {
                reason: reason.to_string(),
            })
        };
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return fail("tol must be positive and finite");
        }
        if self.max_iter < 1 || self.restarts < 1 || self.max_line_search < 1 {
            return fail("max_iter, restarts, and max_line_search must be at least 1");
        }
        if !(self.armijo_shrink > 0.0 && self.armijo_shrink < 1.0) {
            return fail("armijo_shrink must lie in (0, 1)");
        }
        if !(self.armijo_slope > 0.0 && self.armijo_slope < 1.0) {
            return fail("armijo_slope must lie in (0, 1)");
        }
        if !(self.initial_step > 0.0) || !self.initial_step.is_finite() {
            return fail("initial_step must be positive and finite");
        }
        Ok(())
    }
}

/// Outcome of one optimization: the tuned precoder and susceptance, the
/// scattering matrix they induce, and the per-iteration rate trace of the
/// winning start.
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub precoder: Precoder,
    pub b: SusceptanceMatrix,
    pub theta: ScatteringMatrix,
    /// Sum rate after each outer iteration, starting with the initial
    /// point; non-decreasing.
    pub rate_trace: Vec<f64>,
    /// Outer iterations performed by the winning start.
    pub iterations: usize,
    /// Whether that start met the relative tolerance before `max_iter`.
    pub converged: bool,
}

impl OptimizationResult {
    /// Final (best) sum rate in bits/s/Hz.
    pub fn sum_rate(&self) -> f64 {
        *self
            .rate_trace
            .last()
            .expect("trace always holds the initial rate")
    }
}

/// Maximizes the sum rate over the precoder and the susceptances admitted
/// by `pattern`.
pub fn optimize(
    config: &SystemConfig,
    ch: &ChannelRealization,
    pattern: &SusceptancePattern,
    opts: &OptimizerOptions,
) -> Result<OptimizationResult, SumRateError> {
    config.validate()?;
    opts.validate()?;
    if pattern.n() != config.n {
        return Err(SumRateError::PatternMismatch {
            config_n: config.n,
            pattern_n: pattern.n(),
        });
    }
    check_channel_dims(config, ch)?;
    if ch.is_zero() {
        // Nothing reaches the receivers; every feasible point has rate 0.
        let b = SusceptanceMatrix::zeros(config.n);
        let theta = scattering_from_susceptance(&b, DEFAULT_REFERENCE_IMPEDANCE)?;
        return Ok(OptimizationResult {
            precoder: Precoder::zeros(config.m, config.k),
            b,
            theta,
            rate_trace: vec![0.0],
            iterations: 0,
            converged: true,
        });
    }
    let mut best: Option<SingleStart> = None;
    for restart in 0..opts.restarts {
        let run = run_single_start(config, ch, pattern, opts, restart)?;
        let better = match &best {
            None => true,
            Some(b) => run.final_rate() > b.final_rate(),
        };
        if better {
            best = Some(run);
        }
    }
    let winner = best.expect("at least one restart ran");
    let b = assemble_susceptance(pattern, &winner.components)?;
    let theta = scattering_from_susceptance(&b, DEFAULT_REFERENCE_IMPEDANCE)?;
    Ok(OptimizationResult {
        precoder: winner.precoder,
        b,
        theta,
        rate_trace: winner.trace,
        iterations: winner.iterations,
        converged: winner.converged,
    })
}

fn check_channel_dims(config: &SystemConfig, ch: &ChannelRealization) -> Result<(), SumRateError> {
    if ch.h_it.nrows() != config.n || ch.h_it.ncols() != config.m {
        return Err(SumRateError::DimensionMismatch {
            what: "transmitter-to-RIS channel",
            rows: config.n,
            cols: config.m,
            got_rows: ch.h_it.nrows(),
            got_cols: ch.h_it.ncols(),
        });
    }
    if ch.h_ri.nrows() != config.k || ch.h_ri.ncols() != config.n {
        return Err(SumRateError::DimensionMismatch {
            what: "RIS-to-receiver channel",
            rows: config.k,
            cols: config.n,
            got_rows: ch.h_ri.nrows(),
            got_cols: ch.h_ri.ncols(),
        });
    }
    Ok(())
}

struct SingleStart {
    components: Vec<f64>,
    precoder: Precoder,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl SingleStart {
    fn final_rate(&self) -> f64 {
        *self.trace.last().expect("trace is never empty")
    }
}

fn initial_components(pattern: &SusceptancePattern, seed: u64, restart: usize) -> Vec<f64> {
    let dim = pattern.dimension();
    if restart == 0 {
        // Neutral start: B = 0 gives the identity scattering matrix.
        return vec![0.0; dim];
    }
    // Later starts perturb on the natural susceptance scale |Z₀ b| ≈ 1.
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[RESTART_STREAM, restart as u64]));
    (0..dim).map(|_| rng.random_range(-0.02..=0.02)).collect()
}

fn run_single_start(
    config: &SystemConfig,
    ch: &ChannelRealization,
    pattern: &SusceptancePattern,
    opts: &OptimizerOptions,
    restart: usize,
) -> Result<SingleStart, SumRateError> {
    let mut components = initial_components(pattern, config.seed, restart);
    let mut h_eff = channel_for(pattern, &components, ch)?;
    let mut precoder = matched_filter(&h_eff, config);
    let mut rate = sum_rate(&h_eff, &precoder, config.noise_power);
    let mut trace = vec![rate];
    let mut step = opts.initial_step;
    // Previous (components, gradient) pair, for the spectral trial step.
    let mut last_pair: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut converged = false;
    let mut quiet_streak = 0;
    let mut iterations = 0;

    for _ in 0..opts.max_iter {
        iterations += 1;
        let previous = rate;

        // Precoder block: iterate the closed-form weighted-MMSE update
        // until its gains stall, so the susceptance gradient below sees a
        // precoder that is (nearly) optimal for the current scattering
        // state — that makes it the gradient of the best-precoder value
        // function rather than of a stale surrogate. Candidates are kept
        // only while they help, so the block is non-decreasing.
        for _ in 0..50 {
            let candidate = wmmse_precoder(&h_eff, &precoder, config);
            let candidate_rate = sum_rate(&h_eff, &candidate, config.noise_power);
            if candidate_rate < rate {
                break;
            }
            let gain = candidate_rate - rate;
            precoder = candidate;
            rate = candidate_rate;
            if gain <= 0.1 * opts.tol * rate.abs().max(1e-12) {
                break;
            }
        }

        // Susceptance block: Armijo backtracking along the sum-rate
        // gradient in component space.
        let grad = rate_gradient(pattern, &components, ch, &precoder, config.noise_power)?;
        let grad_sq: f64 = grad.iter().map(|g| g * g).sum();
        if grad_sq > 0.0 {
            // Trial step: the spectral (Barzilai–Borwein) scale fitted to
            // the last secant pair tracks the local curvature far better
            // than a fixed warm start on this badly scaled objective;
            // when the pair is unusable, fall back to the warm start.
            let mut t = match &last_pair {
                Some((prev_c, prev_g)) => {
                    let mut ss = 0.0;
                    let mut sy = 0.0;
                    for i in 0..components.len() {
                        let s = components[i] - prev_c[i];
                        let y = grad[i] - prev_g[i];
                        ss += s * s;
                        sy += s * y;
                    }
                    // Ascent curvature: expect sᵀy < 0 near a maximum.
                    if ss > 0.0 && sy < 0.0 {
                        (ss / -sy).clamp(1e-12, 1e9)
                    } else {
                        step
                    }
                }
                None => step,
            };
            last_pair = Some((components.clone(), grad.clone()));
            for _ in 0..opts.max_line_search {
                let trial: Vec<f64> = components
                    .iter()
                    .zip(&grad)
                    .map(|(c, g)| c + t * g)
                    .collect();
                let trial_h = channel_for(pattern, &trial, ch)?;
                let trial_rate = sum_rate(&trial_h, &precoder, config.noise_power);
                if trial_rate >= rate + opts.armijo_slope * t * grad_sq {
                    components = trial;
                    h_eff = trial_h;
                    rate = trial_rate;
                    // Allow the step to grow again after an easy accept.
                    step = (t / opts.armijo_shrink).min(1e9);
                    break;
                }
                t *= opts.armijo_shrink;
            }
        }

        trace.push(rate);
        let relative = (rate - previous).abs() / previous.abs().max(1e-12);
        if relative < opts.tol {
            quiet_streak += 1;
            if quiet_streak >= CONVERGENCE_PATIENCE {
                converged = true;
                break;
            }
        } else {
            quiet_streak = 0;
        }
    }

    Ok(SingleStart {
        components,
        precoder,
        trace,
        iterations,
        converged,
    })
}

/// Effective channels induced by a component vector.
fn channel_for(
    pattern: &SusceptancePattern,
    components: &[f64],
    ch: &ChannelRealization,
) -> Result<DMatrix<Complex64>, SumRateError> {
    let b = assemble_susceptance(pattern, components)?;
    let theta = scattering_from_susceptance(&b, DEFAULT_REFERENCE_IMPEDANCE)?;
    effective_channels(ch, &theta)
}

/// Power-normalized matched filter: each column points along its
/// receiver's channel, and the budget splits evenly across receivers.
fn matched_filter(h: &DMatrix<Complex64>, config: &SystemConfig) -> Precoder {
    let per_user = (config.p_t / config.k as f64).sqrt();
    let cols: Vec<DVector<Complex64>> = (0..config.k)
        .map(|k| {
            let hk = h.row(k).adjoint();
            let norm = hk.norm();
            if norm > 0.0 {
                hk * Complex64::new(per_user / norm, 0.0)
            } else {
                DVector::zeros(config.m)
            }
        })
        .collect();
    Precoder::new(DMatrix::from_columns(&cols))
}

/// One weighted-MMSE precoder update at fixed effective channels.
///
/// Receive scalars `u_k = (h_k w_k)/T_k` and weights `ρ_k = 1/e_k` are the
/// per-receiver MMSE optima for the current precoder; the new precoder
/// solves the weighted MSE minimum under the power budget,
/// `w_k = (A + μI)⁻¹ ρ_k u_k h_kᴴ` with
/// `A = Σ_k ρ_k |u_k|² h_kᴴ h_k` and `μ ≥ 0` the smallest multiplier
/// meeting `‖W‖_F² ≤ P_T`, located by bisection on the eigenbasis of `A`.
fn wmmse_precoder(h: &DMatrix<Complex64>, current: &Precoder, config: &SystemConfig) -> Precoder {
    let (m, k) = (config.m, config.k);
    let u = h * &current.w;
    let mut a = DMatrix::<Complex64>::zeros(m, m);
    let mut rhs = DMatrix::<Complex64>::zeros(m, k);
    for kk in 0..k {
        let total: f64 =
            config.noise_power + (0..k).map(|i| u[(kk, i)].norm_sqr()).sum::<f64>();
        let u_k = u[(kk, kk)] / total;
        let mmse = 1.0 - u[(kk, kk)].norm_sqr() / total; // in (0, 1]
        let rho = 1.0 / mmse;
        let hk = h.row(kk);
        let weight = Complex64::new(rho * u_k.norm_sqr(), 0.0);
        a += hk.adjoint() * hk * weight;
        let col = hk.adjoint() * (u_k * rho);
        rhs.set_column(kk, &col);
    }

    let eig = nalgebra::SymmetricEigen::new(a);
    let lambdas: Vec<f64> = eig.eigenvalues.iter().map(|l| l.max(0.0)).collect();
    let r = eig.eigenvectors.adjoint() * &rhs;

    // ‖W(μ)‖_F² = Σ_{j,k} |r_jk|² / (λ_j + μ)², strictly decreasing in μ.
    let power_at = |mu: f64| -> f64 {
        let mut total = 0.0;
        for j in 0..m {
            for kk in 0..k {
                let num = r[(j, kk)].norm_sqr();
                if num > 0.0 {
                    let denom = lambdas[j] + mu;
                    total += num / (denom * denom);
                }
            }
        }
        total
    };

    let total_r: f64 = r.iter().map(|z| z.norm_sqr()).sum();
    let mu = if total_r == 0.0 || power_at(0.0) <= config.p_t {
        0.0
    } else {
        let mut lo = 0.0;
        let mut hi = (total_r / config.p_t).sqrt();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if power_at(mid) > config.p_t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };

    let mut scaled = r;
    for j in 0..m {
        for kk in 0..k {
            if scaled[(j, kk)].norm_sqr() > 0.0 {
                scaled[(j, kk)] /= lambdas[j] + mu;
            } else {
                scaled[(j, kk)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut w = &eig.eigenvectors * scaled;
    let power = w.norm_squared();
    if power > config.p_t {
        // Numerical safety only; the bisection endpoint already satisfies
        // the budget up to rounding.
        w *= Complex64::new((config.p_t / power).sqrt(), 0.0);
    }
    Precoder::new(w)
}

/// Analytic gradient of the sum rate with respect to the free component
/// vector, at fixed precoder.
///
/// Writing `A = I + jZ₀B`, the scattering differential is
/// `dΘ = −2jZ₀ A⁻¹ (dB) A⁻¹`, and chaining through `U = H_RI Θ H_IT W`
/// collapses the SINR derivatives into `dR = Re tr(M dB)` with
/// `M = −2jZ₀ A⁻¹ [H_IT W (C ∘ conj(U))ᵀ H_RI] A⁻¹`, where
/// `c_{k,i} = (2/ln 2)(1/T_k − [i≠k]/D_k)` holds the signal/interference
/// weights. A ground component contributes `Re M_vv`; an interconnection
/// `{p, q}` contributes `Re(M_pp + M_qq − M_pq − M_qp)`. Both solves reuse
/// one LU factorization of the complex-symmetric `A`.
fn rate_gradient(
    pattern: &SusceptancePattern,
    components: &[f64],
    ch: &ChannelRealization,
    precoder: &Precoder,
    noise_power: f64,
) -> Result<Vec<f64>, SumRateError> {
    let z0 = DEFAULT_REFERENCE_IMPEDANCE;
    let b = assemble_susceptance(pattern, components)?;
    let n = b.n();
    let k = ch.h_ri.nrows();

    let mut a_plus = DMatrix::<Complex64>::zeros(n, n);
    let mut a_minus = DMatrix::<Complex64>::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let y = z0 * b.matrix()[(r, c)];
            let unit = if r == c { 1.0 } else { 0.0 };
            a_plus[(r, c)] = Complex64::new(unit, y);
            a_minus[(r, c)] = Complex64::new(unit, -y);
        }
    }
    let lu = a_plus.lu();
    let theta = lu
        .solve(&a_minus)
        .ok_or(crate::circuit::CircuitError::SingularSolve)?;

    let h_eff = &ch.h_ri * &theta * &ch.h_it;
    let u = &h_eff * &precoder.w;
    let ln2 = std::f64::consts::LN_2;

    // Weights c_{k,i}: every stream contributes through the total power
    // T_k, interfering streams also through the interference power D_k.
    let mut weights = DMatrix::<Complex64>::zeros(k, k);
    for kk in 0..k {
        let row_power: f64 = (0..u.ncols()).map(|i| u[(kk, i)].norm_sqr()).sum();
        let total = noise_power + row_power;
        let interference = total - u[(kk, kk)].norm_sqr();
        for i in 0..u.ncols() {
            let mut c = 1.0 / total;
            if i != kk {
                c -= 1.0 / interference;
            }
            weights[(kk, i)] = Complex64::new(2.0 / ln2 * c, 0.0) * u[(kk, i)].conj();
        }
    }

    // Z = H_IT W (C ∘ conj(U))ᵀ H_RI, the trace kernel of dR in dΘ.
    let f = &ch.h_it * &precoder.w; // N × K
    let z = f * weights.transpose() * &ch.h_ri; // N × N

    // M = −2jZ₀ A⁻¹ Z A⁻¹; A is complex symmetric, so the right solve is
    // a transposed left solve with the same factorization.
    let x = lu
        .solve(&z)
        .ok_or(crate::circuit::CircuitError::SingularSolve)?;
    let y_t = lu
        .solve(&x.transpose())
        .ok_or(crate::circuit::CircuitError::SingularSolve)?;
    let m_mat = y_t.transpose() * Complex64::new(0.0, -2.0 * z0);

    let mut grad = vec![0.0; pattern.dimension()];
    for v in 1..=n {
        grad[pattern.ground_index(v)] = m_mat[(v - 1, v - 1)].re;
    }
    for &(p, q) in pattern.graph().edges() {
        let idx = pattern.edge_index(p, q).expect("edge is in the pattern");
        grad[idx] = (m_mat[(p - 1, p - 1)] + m_mat[(q - 1, q - 1)]
            - m_mat[(p - 1, q - 1)]
            - m_mat[(q - 1, p - 1)])
            .re;
    }
    Ok(grad)
}

/// Sum rate at a component vector with a fixed precoder; the objective the
/// gradient above differentiates.
fn rate_at(
    pattern: &SusceptancePattern,
    components: &[f64],
    ch: &ChannelRealization,
    precoder: &Precoder,
    noise_power: f64,
) -> Result<f64, SumRateError> {
    let h = channel_for(pattern, components, ch)?;
    Ok(sum_rate(&h, precoder, noise_power))
}

/// Compares the analytic gradient against central finite differences at
/// `b0` and returns the worst coordinate-wise relative discrepancy,
/// `|g − ĝ| / (max(|g|, |ĝ|) + 10⁻³)`; the additive floor keeps
/// negligible coordinates from amplifying finite-difference noise. The
/// precoder is pinned to the deterministic matched filter at `b0`, so the
/// check is reproducible.
pub fn gradient_check(
    config: &SystemConfig,
    ch: &ChannelRealization,
    pattern: &SusceptancePattern,
    b0: &SusceptanceMatrix,
) -> Result<f64, SumRateError> {
    config.validate()?;
    if pattern.n() != config.n {
        return Err(SumRateError::PatternMismatch {
            config_n: config.n,
            pattern_n: pattern.n(),
        });
    }
    check_channel_dims(config, ch)?;
    let components = extract_components(b0, pattern)?;
    let h0 = channel_for(pattern, &components, ch)?;
    let precoder = matched_filter(&h0, config);

    let analytic = rate_gradient(pattern, &components, ch, &precoder, config.noise_power)?;
    let mut worst: f64 = 0.0;
    for i in 0..components.len() {
        let step = 1e-6 * (1.0 + components[i].abs());
        let mut plus = components.clone();
        plus[i] += step;
        let mut minus = components.clone();
        minus[i] -= step;
        let forward = rate_at(pattern, &plus, ch, &precoder, config.noise_power)?;
        let backward = rate_at(pattern, &minus, ch, &precoder, config.noise_power)?;
        let numeric = (forward - backward) / (2.0 * step);
        let denom = analytic[i].abs().max(numeric.abs()) + 1e-3;
        worst = worst.max((analytic[i] - numeric).abs() / denom);
    }
    Ok(worst)
}

/// Brute-force reference for the scalar system (`N = M = K = 1`): sweeps
/// the single susceptance over a uniform grid and returns the best sum
/// rate encountered, using the identical evaluation pipeline as the
/// optimizer.
pub fn scalar_grid_reference(
    config: &SystemConfig,
    ch: &ChannelRealization,
    grid_points: usize,
    b_range: (f64, f64),
) -> Result<f64, SumRateError> {
    config.validate()?;
    if config.n != 1 || config.m != 1 || config.k != 1 {
        return Err(SumRateError::InvalidConfig {
            reason: "grid reference only covers the scalar system".to_string(),
        });
    }
    check_channel_dims(config, ch)?;
    let pattern = SusceptancePattern::new(
        crate::graph::CircuitGraph::new(1, std::iter::empty()).expect("valid single-vertex graph"),
    );
    let w = Precoder::new(DMatrix::from_element(
        1,
        1,
        Complex64::new(config.p_t.sqrt(), 0.0),
    ));
    let mut best = f64::NEG_INFINITY;
    for i in 0..grid_points {
        let frac = i as f64 / (grid_points - 1).max(1) as f64;
        let b_val = b_range.0 + frac * (b_range.1 - b_range.0);
        let rate = rate_at(&pattern, &[b_val], ch, &w, config.noise_power)?;
        best = best.max(rate);
    }
    Ok(best)
}
