//! Effective channels, SINR, and sum rate.

use super::{ChannelRealization, SumRateError};
use crate::circuit::ScatteringMatrix;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Transmit precoder `W` (`M × K`, column `k` serves receiver `k`). The
/// optimizer guarantees `‖W‖_F² ≤ P_T` on every precoder it returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Precoder {
    pub w: DMatrix<Complex64>,
}

impl Precoder {
    pub fn new(w: DMatrix<Complex64>) -> Self {
        Precoder { w }
    }

    pub fn zeros(m: usize, k: usize) -> Self {
        Precoder {
            w: DMatrix::zeros(m, k),
        }
    }

    /// Transmit power `‖W‖_F²`.
    pub fn power(&self) -> f64 {
        self.w.norm_squared()
    }
}

/// Effective receiver channels through the RIS, stacked as rows:
/// row `k` is `h_k = h_RI,k Θ H_IT` (`K × M`).
pub fn effective_channels(
    ch: &ChannelRealization,
    theta: &ScatteringMatrix,
) -> Result<DMatrix<Complex64>, SumRateError> {
    let n = theta.n();
    if ch.h_it.nrows() != n {
        return Err(SumRateError::DimensionMismatch {
            what: "transmitter-to-RIS channel",
            rows: n,
            cols: ch.h_it.ncols(),
            got_rows: ch.h_it.nrows(),
            got_cols: ch.h_it.ncols(),
        });
    }
    if ch.h_ri.ncols() != n {
        return Err(SumRateError::DimensionMismatch {
            what: "RIS-to-receiver channel",
            rows: ch.h_ri.nrows(),
            cols: n,
            got_rows: ch.h_ri.nrows(),
            got_cols: ch.h_ri.ncols(),
        });
    }
    Ok(&ch.h_ri * theta.matrix() * &ch.h_it)
}

/// Per-receiver SINR `γ_k = |h_k w_k|² / (Σ_{i≠k} |h_k w_i|² + σ²)`.
pub fn sinr(h: &DMatrix<Complex64>, precoder: &Precoder, noise_power: f64) -> Vec<f64> {
    let k = h.nrows();
    let u = h * &precoder.w; // u[(k, i)] = h_k w_i
    (0..k)
        .map(|kk| {
            let signal = u[(kk, kk)].norm_sqr();
            let interference: f64 = (0..precoder.w.ncols())
                .filter(|&i| i != kk)
                .map(|i| u[(kk, i)].norm_sqr())
                .sum();
            signal / (interference + noise_power)
        })
        .collect()
}

/// Sum rate `Σ_k log₂(1 + γ_k)` in bits/s/Hz.
pub fn sum_rate(h: &DMatrix<Complex64>, precoder: &Precoder, noise_power: f64) -> f64 {
    sinr(h, precoder, noise_power)
        .iter()
        .map(|g| (1.0 + g).log2())
        .sum()
}
