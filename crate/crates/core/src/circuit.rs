//! Susceptance matrices under graph-induced sparsity and their scattering
//! matrices.
//!
//! A lossless reciprocal BD-RIS has admittance matrix `Y = jB` with `B`
//! real symmetric. The circuit carries one tunable susceptance `b_n` from
//! each element to ground and one `b_{n,m}` per interconnection `{n, m}`,
//! which assemble into
//!
//! ```text
//! [B]_{n,m} = −b_{n,m}                   for n ≠ m (0 when {n,m} is no edge)
//! [B]_{n,n} = b_n + Σ_{k: {n,k} edge} b_{n,k}
//! ```
//!
//! so the interconnection graph shows up as a hard zero pattern on the
//! off-diagonal. The scattering matrix is the Cayley transform
//! `Θ = (I + jZ₀B)⁻¹(I − jZ₀B)`, unitary and symmetric whenever `B` is
//! real symmetric.

use crate::graph::CircuitGraph;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reference impedance in ohms used throughout unless overridden.
pub const DEFAULT_REFERENCE_IMPEDANCE: f64 = 50.0;

/// Errors from circuit-matrix operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("component vector has length {got}, pattern needs {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("component {index} ({label}) is not finite")]
    NonFinite { index: usize, label: String },
    #[error("matrix is {got}x{got}, pattern needs {expected}x{expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("entry ({row}, {col}) = {value} violates the sparsity pattern (no interconnection)")]
    PatternViolation { row: usize, col: usize, value: f64 },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("linear solve for the scattering matrix failed; susceptance input is corrupted")]
    SingularSolve,
}

/// One coordinate of the flat component vector: either an element-to-ground
/// susceptance or an interconnection susceptance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coordinate {
    /// Ground component `b_v` of element `v` (1-based).
    Ground(usize),
    /// Edge component `b_{i,j}` with `i < j` (1-based).
    Edge(usize, usize),
}

impl std::fmt::Display for Coordinate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Coordinate::Ground(v) => write!(f, "b_{v}"),
            Coordinate::Edge(i, j) => write!(f, "b_{{{i},{j}}}"),
        }
    }
}

/// Bijection between the tunable components of a circuit graph and a flat
/// coordinate vector of length `N + |ℰ|`.
///
/// Ordering is fixed: ground components `b_1..b_N` first, then edge
/// components in lexicographic edge order. Everything downstream — flat
/// vectors, gradients, serialized dumps — indexes components this way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SusceptancePattern {
    graph: CircuitGraph,
}

impl SusceptancePattern {
    pub fn new(graph: CircuitGraph) -> Self {
        SusceptancePattern { graph }
    }

    pub fn graph(&self) -> &CircuitGraph {
        &self.graph
    }

    /// Element count `N`.
    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of coordinates, `N + |ℰ|`.
    pub fn dimension(&self) -> usize {
        self.graph.vertex_count() + self.graph.edge_count()
    }

    /// Flat index of the ground component of element `v` (1-based).
    pub fn ground_index(&self, v: usize) -> usize {
        debug_assert!(v >= 1 && v <= self.n());
        v - 1
    }

    /// Flat index of the edge component of `{i, j}`, if that edge exists.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.graph
            .edges()
            .binary_search(&key)
            .ok()
            .map(|pos| self.n() + pos)
    }

    /// Coordinates in flat order.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        let mut out: Vec<Coordinate> = (1..=self.n()).map(Coordinate::Ground).collect();
        out.extend(
            self.graph
                .edges()
                .iter()
                .map(|&(i, j)| Coordinate::Edge(i, j)),
        );
        out
    }

    /// 0/1 occupancy mask of the assembled matrix: 1 on the diagonal (every
    /// element has a ground component) and on interconnected pairs.
    pub fn mask(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut mask = vec![vec![0u8; n]; n];
        for (v, row) in mask.iter_mut().enumerate() {
            row[v] = 1;
        }
        for &(i, j) in self.graph.edges() {
            mask[i - 1][j - 1] = 1;
            mask[j - 1][i - 1] = 1;
        }
        mask
    }
}

/// Real symmetric susceptance matrix `B` (siemens) with exact symmetry:
/// construction rejects any asymmetric input, so `B = Bᵀ` holds bitwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SusceptanceMatrix {
    b: DMatrix<f64>,
}

impl SusceptanceMatrix {
    /// Wraps a matrix, requiring exact symmetry and finite entries.
    pub fn new(b: DMatrix<f64>) -> Result<Self, CircuitError> {
        let n = b.nrows();
        if b.ncols() != n {
            return Err(CircuitError::SizeMismatch {
                expected: n,
                got: b.ncols(),
            });
        }
        for r in 0..n {
            for c in 0..n {
                if !b[(r, c)].is_finite() {
                    return Err(CircuitError::NonFiniteEntry {
                        row: r + 1,
                        col: c + 1,
                    });
                }
                if c > r && b[(r, c)] != b[(c, r)] {
                    return Err(CircuitError::NotSymmetric {
                        row: r + 1,
                        col: c + 1,
                    });
                }
            }
        }
        Ok(SusceptanceMatrix { b })
    }

    pub fn zeros(n: usize) -> Self {
        SusceptanceMatrix {
            b: DMatrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.b.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.b
    }

    /// Row-major debug dump with split real/imaginary arrays (the
    /// imaginary part of a susceptance matrix is identically zero; the
    /// field is kept so every matrix dump shares one schema).
    pub fn to_json(&self) -> serde_json::Value {
        real_matrix_json(&self.b)
    }
}

/// Complex scattering matrix `Θ` with its reference impedance.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    theta: DMatrix<Complex64>,
    z0: f64,
}

impl ScatteringMatrix {
    pub fn n(&self) -> usize {
        self.theta.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.theta
    }

    /// Reference impedance in ohms.
    pub fn z0(&self) -> f64 {
        self.z0
    }

    /// Frobenius norm of `ΘΘᴴ − I`; zero for a lossless network.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n();
        (&self.theta * self.theta.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm()
    }

    /// Frobenius norm of `Θ − Θᵀ`; zero for a reciprocal network.
    pub fn symmetry_defect(&self) -> f64 {
        (&self.theta - self.theta.transpose()).norm()
    }

    /// Row-major debug dump with split real/imaginary arrays.
    pub fn to_json(&self) -> serde_json::Value {
        complex_matrix_json(&self.theta)
    }
}

/// Assembles `B` from the flat component vector under the pattern.
///
/// Off-diagonal non-edge entries are exact zeros — the sparsity set is a
/// structural constraint, not a numerical one.
pub fn assemble_susceptance(
    pattern: &SusceptancePattern,
    components: &[f64],
) -> Result<SusceptanceMatrix, CircuitError> {
    let n = pattern.n();
    if components.len() != pattern.dimension() {
        return Err(CircuitError::LengthMismatch {
            expected: pattern.dimension(),
            got: components.len(),
        });
    }
    if let Some(bad) = components.iter().position(|x| !x.is_finite()) {
        return Err(CircuitError::NonFinite {
            index: bad,
            label: pattern.coordinates()[bad].to_string(),
        });
    }
    let mut b = DMatrix::<f64>::zeros(n, n);
    for v in 1..=n {
        // Diagonal: ground susceptance plus the incident edge
        // susceptances, accumulated in ascending neighbor order.
        let mut diag = components[pattern.ground_index(v)];
        for k in pattern.graph().neighbors(v) {
            diag += components[pattern.edge_index(v, k).expect("neighbor edge exists")];
        }
        b[(v - 1, v - 1)] = diag;
    }
    for &(i, j) in pattern.graph().edges() {
        let value = -components[pattern.edge_index(i, j).unwrap()];
        b[(i - 1, j - 1)] = value;
        b[(j - 1, i - 1)] = value;
    }
    Ok(SusceptanceMatrix { b })
}

/// Recovers the flat component vector from an assembled matrix.
///
/// Edge components come back bitwise exact (they are stored negated);
/// ground components peel the incident edge terms off the diagonal in
/// reverse accumulation order, which reproduces the input exactly whenever
/// the diagonal sums themselves incurred no rounding (always true on a
/// modest dyadic grid, the case the round-trip tests pin down).
pub fn extract_components(
    b: &SusceptanceMatrix,
    pattern: &SusceptancePattern,
) -> Result<Vec<f64>, CircuitError> {
    let n = pattern.n();
    if b.n() != n {
        return Err(CircuitError::SizeMismatch {
            expected: n,
            got: b.n(),
        });
    }
    let m = b.matrix();
    // Zero structure first: any non-edge off-diagonal must be exactly 0.
    for r in 1..=n {
        for c in (r + 1)..=n {
            if !pattern.graph().has_edge(r, c) && m[(r - 1, c - 1)] != 0.0 {
                return Err(CircuitError::PatternViolation {
                    row: r,
                    col: c,
                    value: m[(r - 1, c - 1)],
                });
            }
        }
    }
    let mut components = vec![0.0; pattern.dimension()];
    for &(i, j) in pattern.graph().edges() {
        components[pattern.edge_index(i, j).unwrap()] = -m[(i - 1, j - 1)];
    }
    for v in 1..=n {
        let mut ground = m[(v - 1, v - 1)];
        let neighbors: Vec<usize> = pattern.graph().neighbors(v).collect();
        for &k in neighbors.iter().rev() {
            ground -= components[pattern.edge_index(v, k).unwrap()];
        }
        components[pattern.ground_index(v)] = ground;
    }
    Ok(components)
}

/// Cayley transform `Θ = (I + jZ₀B)⁻¹(I − jZ₀B)` via an LU solve.
///
/// For real symmetric `B` the factor `I + jZ₀B` is normal with singular
/// values `√(1 + Z₀²λ²) ≥ 1`, so the solve is always well-conditioned and
/// `Θ` is unitary and symmetric to solver precision.
pub fn scattering_from_susceptance(
    b: &SusceptanceMatrix,
    z0: f64,
) -> Result<ScatteringMatrix, CircuitError> {
    let n = b.n();
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
    let theta = a_plus
        .lu()
        .solve(&a_minus)
        .ok_or(CircuitError::SingularSolve)?;
    Ok(ScatteringMatrix { theta, z0 })
}

/// Whether `b` lies in the constraint set of the graph: symmetric with
/// exact zeros on every non-interconnected off-diagonal pair.
pub fn pattern_membership(b: &DMatrix<f64>, graph: &CircuitGraph) -> Result<bool, CircuitError> {
    let n = graph.vertex_count();
    if b.nrows() != n || b.ncols() != n {
        return Err(CircuitError::SizeMismatch {
            expected: n,
            got: if b.nrows() != n { b.nrows() } else { b.ncols() },
        });
    }
    for r in 1..=n {
        for c in (r + 1)..=n {
            if b[(r - 1, c - 1)] != b[(c - 1, r - 1)] {
                return Ok(false);
            }
            if !graph.has_edge(r, c) && b[(r - 1, c - 1)] != 0.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn real_matrix_json(m: &DMatrix<f64>) -> serde_json::Value {
    let re: Vec<f64> = (0..m.nrows())
        .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
        .map(|(r, c)| m[(r, c)])
        .collect();
    let im = vec![0.0; m.nrows() * m.ncols()];
    serde_json::json!({
        "rows": m.nrows(),
        "cols": m.ncols(),
        "re": re,
        "im": im,
    })
}

fn complex_matrix_json(m: &DMatrix<Complex64>) -> serde_json::Value {
    let cells: Vec<(usize, usize)> = (0..m.nrows())
        .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
        .collect();
    let re: Vec<f64> = cells.iter().map(|&(r, c)| m[(r, c)].re).collect();
    let im: Vec<f64> = cells.iter().map(|&(r, c)| m[(r, c)].im).collect();
    serde_json::json!({
        "rows": m.nrows(),
        "cols": m.ncols(),
        "re": re,
        "im": im,
    })
}

/// Deterministic spectral route to the same scattering matrix, used by the
/// tests as an independent cross-check of [`scattering_from_susceptance`]:
/// eigendecompose `B = VΛVᵀ` and map each eigenvalue through the scalar
/// Cayley transform, `Θ = V diag((1 − jZ₀λ)/(1 + jZ₀λ)) Vᵀ`.
pub fn scattering_via_eigendecomposition(b: &SusceptanceMatrix, z0: f64) -> DMatrix<Complex64> {
    let eig = nalgebra::SymmetricEigen::new(b.matrix().clone());
    let n = b.n();
    let phases: DVector<Complex64> = eig.eigenvalues.map(|lambda| {
        Complex64::new(1.0, -z0 * lambda) / Complex64::new(1.0, z0 * lambda)
    });
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let mut scaled = v.clone();
    for c in 0..n {
        for r in 0..n {
            scaled[(r, c)] *= phases[c];
        }
    }
    scaled * v.transpose()
}
