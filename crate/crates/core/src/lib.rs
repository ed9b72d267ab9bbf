//! Core library for modeling beyond-diagonal RIS (BD-RIS) architectures.
//!
//! A BD-RIS interconnects its `N` elements through tunable admittances; the
//! interconnection topology is an undirected simple graph on the element
//! indices. This crate provides:
//!
//! * [`graph`] — circuit graphs, exact planarity testing, and a brute-force
//!   forbidden-minor oracle used as independent ground truth;
//! * [`arch`] — constructors and complexity/planarity classification for the
//!   known BD-RIS architecture families (single, group, fully, forest, tree,
//!   stem, band, and three maximal-planar examples);
//! * [`circuit`] — susceptance-matrix assembly under a graph-induced sparsity
//!   pattern and the Cayley transform to the scattering matrix;
//! * [`embedding`] — a recursive straight-line planar drawing of the
//!   3-band-connected graph with an exact crossing checker;
//! * [`sumrate`] — multi-user MISO downlink model through the RIS and joint
//!   precoder/susceptance optimization of the sum rate.

pub mod arch;
pub mod circuit;
pub mod embedding;
pub mod graph;
pub mod sumrate;

pub use arch::{ArchitectureSpec, ComplexityReport, PlanarityClass};
pub use circuit::{ScatteringMatrix, SusceptanceMatrix, SusceptancePattern};
pub use embedding::PlanarDrawing;
pub use graph::{CircuitGraph, PlanarityVerdict};
pub use sumrate::{
    ChannelRealization, OptimizationResult, OptimizerOptions, Precoder, SystemConfig,
};
