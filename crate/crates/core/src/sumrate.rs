//! Multi-user MISO downlink through a BD-RIS and sum-rate maximization.
//!
//! A transmitter with `M` antennas serves `K` single-antenna receivers;
//! the direct links are obstructed, so every signal passes through the
//! RIS: the effective channel of receiver `k` is `h_k = h_RI,k Θ H_IT`.
//! The optimizer tunes the precoder `W` under the transmit power budget
//! and the susceptance matrix `B` under the architecture's sparsity
//! pattern to maximize `Σ_k log₂(1 + γ_k)`.

pub mod channel;
pub mod optimize;
pub mod rate;

pub use channel::{
    dbm_to_watts, mix_seed, sample_rayleigh, ChannelRealization, SystemConfig, DEFAULT_PATH_GAIN,
};
pub use optimize::{
    gradient_check, optimize, scalar_grid_reference, OptimizationResult, OptimizerOptions,
};
pub use rate::{effective_channels, sinr, sum_rate, Precoder};

use crate::circuit::CircuitError;
use thiserror::Error;

/// Errors from the system model and optimizer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SumRateError {
    #[error("invalid system configuration: {reason}")]
    InvalidConfig { reason: String },
    #[error("{what} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    DimensionMismatch {
        what: &'static str,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("pattern is on {pattern_n} elements but the configuration has {config_n}")]
    PatternMismatch { config_n: usize, pattern_n: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
