//! Circuit graphs and planarity testing.
//!
//! Vertices are the RIS element indices `1..=n`; an edge `{i, j}` means the
//! corresponding ports are joined by a tunable interconnection. A graph is
//! *planar-connected* when it admits a crossing-free drawing in the plane,
//! which is what makes the admittance network realizable on a double-layer
//! PCB without via stitching between interconnections.
//!
//! Two independent planarity routes are provided:
//!
//! * [`CircuitGraph::is_planar`] — the left-right criterion, O(n + m),
//!   usable at any size;
//! * [`CircuitGraph::forbidden_minor_oracle`] — exhaustive search for a
//!   K5 or K3,3 minor model, exponential but exact, restricted to small
//!   graphs. By Wagner's theorem the two must always agree; the test suite
//!   cross-checks them against each other.

mod lr;
mod minor;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use minor::ORACLE_VERTEX_LIMIT;

/// Errors from graph construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// A graph must have at least one vertex.
    #[error("graph must have at least one vertex")]
    NoVertices,
    /// Edge endpoint outside `1..=n`.
    #[error("vertex {vertex} out of range 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    /// An interconnection from an element to itself is meaningless here:
    /// a susceptance to ground is modeled separately, not as a graph edge.
    #[error("self-loop at vertex {vertex} is not allowed")]
    SelfLoop { vertex: usize },
}

/// Errors from the forbidden-minor oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The exhaustive minor search is only run on small graphs.
    #[error("forbidden-minor oracle infeasible: {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Which forbidden minor was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorKind {
    /// Complete graph on five vertices.
    K5,
    /// Complete bipartite graph on three plus three vertices.
    K33,
}

impl std::fmt::Display for MinorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinorKind::K5 => write!(f, "K5"),
            MinorKind::K33 => write!(f, "K3,3"),
        }
    }
}

/// A concrete minor model witnessing non-planarity.
///
/// `branch_sets` lists disjoint, individually connected vertex sets
/// (1-based, each sorted ascending); contracting each set to a point yields
/// the named forbidden graph. For [`MinorKind::K33`] the first three sets
/// form one side of the bipartition and the last three the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenStructure {
    pub kind: MinorKind,
    pub branch_sets: Vec<Vec<usize>>,
}

/// Outcome of a planarity test.
///
/// The fast left-right test is decision-only (`witness` stays `None`);
/// the oracle attaches a [`ForbiddenStructure`] when it refutes planarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub witness: Option<ForbiddenStructure>,
}

impl PlanarityVerdict {
    fn planar() -> Self {
        PlanarityVerdict {
            planar: true,
            witness: None,
        }
    }

    fn non_planar(witness: Option<ForbiddenStructure>) -> Self {
        PlanarityVerdict {
            planar: false,
            witness,
        }
    }
}

/// Undirected simple graph on vertices `1..=n`.
///
/// Edges are stored canonically: endpoints ordered `i < j`, the list sorted
/// lexicographically and deduplicated, so two graphs constructed from the
/// same edge set in any order compare equal and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// 0-based adjacency lists; `adj[v]` holds the 0-based neighbors of
    /// vertex `v + 1`, sorted ascending.
    adj: Vec<Vec<usize>>,
}

impl CircuitGraph {
    /// Builds a graph on `n >= 1` vertices from an edge list.
    ///
    /// Edges may appear in any order and orientation; duplicates collapse.
    /// Self-loops and endpoints outside `1..=n` are rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut canonical: Vec<(usize, usize)> = Vec::new();
        for (i, j) in edges {
            for v in [i, j] {
                if v < 1 || v > n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop { vertex: i });
            }
            canonical.push((i.min(j), i.max(j)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &canonical {
            adj[i - 1].push(j - 1);
            adj[j - 1].push(i - 1);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(CircuitGraph {
            n,
            edges: canonical,
            adj,
        })
    }

    /// Number of vertices `n`.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of distinct edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Whether `{i, j}` is an edge. 1-based; `false` for `i == j` or
    /// out-of-range arguments.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j || i < 1 || j < 1 || i > self.n || j > self.n {
            return false;
        }
        self.adj[i - 1].binary_search(&(j - 1)).is_ok()
    }

    /// Neighbors of `v` (1-based), ascending.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().map(|&u| u + 1)
    }

    /// Degree of `v` (1-based).
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// All vertex pairs `i < j` that are *not* edges, in lexicographic
    /// order. Used to probe maximality: a planar graph is maximal when every
    /// augmentation by one of these pairs destroys planarity.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// A copy of this graph with edge `{i, j}` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self, GraphError> {
        let mut edges = self.edges.clone();
        edges.push((i, j));
        CircuitGraph::new(self.n, edges)
    }

    /// Exact planarity decision via the left-right criterion.
    ///
    /// Runs in linear time; returns no witness. For a certificate of
    /// non-planarity on small graphs use [`forbidden_minor_oracle`].
    ///
    /// [`forbidden_minor_oracle`]: CircuitGraph::forbidden_minor_oracle
    pub fn is_planar(&self) -> PlanarityVerdict {
        if lr::is_planar(self.n, &self.adj, self.edges.len()) {
            PlanarityVerdict::planar()
        } else {
            PlanarityVerdict::non_planar(None)
        }
    }

    /// Independent planarity ground truth: exhaustive search for a K5 or
    /// K3,3 minor model.
    ///
    /// Exponential in `n`, so graphs above [`ORACLE_VERTEX_LIMIT`] vertices
    /// are rejected with [`OracleError::TooLarge`]. When the graph is
    /// non-planar the verdict carries the branch sets of a concrete minor
    /// model.
    pub fn forbidden_minor_oracle(&self) -> Result<PlanarityVerdict, OracleError> {
        if self.n > ORACLE_VERTEX_LIMIT {
            return Err(OracleError::TooLarge {
                n: self.n,
                limit: ORACLE_VERTEX_LIMIT,
            });
        }
        let mut masks = vec![0u16; self.n];
        for (v, list) in self.adj.iter().enumerate() {
            for &u in list {
                masks[v] |= 1 << u;
            }
        }
        Ok(match minor::find_forbidden_minor(self.n, &masks) {
            Some(witness) => PlanarityVerdict::non_planar(Some(witness)),
            None => PlanarityVerdict::planar(),
        })
    }

    /// Whether the graph has no cycles. Every forest is planar, so this is
    /// a cheap sufficient certificate used by the architecture classifier.
    pub fn is_acyclic(&self) -> bool {
        // A graph is a forest iff every connected component with k vertices
        // has exactly k - 1 edges; equivalently m = n - (#components).
        self.edges.len() + self.connected_components().len() == self.n
    }

    /// Connected components as sorted vertex lists (1-based), ordered by
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v + 1);
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }
}

/// Serializes as `{"n": ..., "edges": [[i, j], ...]}` with the canonical
/// edge order, so equal graphs produce byte-identical JSON.
impl Serialize for CircuitGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            edges: &'a [(usize, usize)],
        }
        Repr {
            n: self.n,
            edges: &self.edges,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CircuitGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        CircuitGraph::new(repr.n, repr.edges).map_err(D::Error::custom)
    }
}
