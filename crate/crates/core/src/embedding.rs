//! Straight-line planar drawing of the 3-band interconnection graph.
//!
//! The 3-band graph stays planar at every element count, and a drawing
//! can be built recursively: start from the triangle `v₁v₂v₃`; every later
//! vertex `v_k` is adjacent to exactly `v_{k−3}, v_{k−2}, v_{k−1}`, so it
//! is placed outside the current drawing such that the three new edges
//! stay crossing-free and `v_{k−2}, v_{k−1}, v_k` become the new outer
//! face.
//!
//! The placement rule here is `X = 3P − A − B` with `P = v_{k−3}`,
//! `A = v_{k−2}`, `B = v_{k−1}` — equivalently, `P` is the centroid of the
//! new outer triangle `ABX`. That choice makes the invariant easy to see:
//! the previous outer triangle `PAB` (which contains the whole partial
//! drawing) sits inside `ABX` with `P` strictly interior, the edges `XA`
//! and `XB` meet it only at `A` and `B`, and `XP` approaches `P` from the
//! side opposite the cone of the old triangle. Coordinates grow by a
//! factor of about 3 per step, so they are kept as exact big integers and
//! every geometric predicate is evaluated in exact arithmetic — a reported
//! crossing count of zero is a proof, not a float artifact.

use crate::graph::CircuitGraph;
use num_bigint::{BigInt, Sign};
use thiserror::Error;

/// Errors from drawing construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("a drawing needs at least 3 elements, got {n}")]
    TooFewElements { n: usize },
    #[error("{points} coordinate pairs for {vertices} vertices")]
    CountMismatch { points: usize, vertices: usize },
    #[error("vertices {i} and {j} share the same coordinates")]
    DuplicateCoordinates { i: usize, j: usize },
}

/// Exact 2D point.
pub type Point = (BigInt, BigInt);

/// Straight-line drawing of a circuit graph: one exact integer coordinate
/// pair per vertex, all distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDrawing {
    graph: CircuitGraph,
    points: Vec<Point>,
}

impl PlanarDrawing {
    /// Pairs a graph with explicit coordinates (index `v − 1` holds vertex
    /// `v`). Rejects count mismatches and duplicate coordinates.
    pub fn new(graph: CircuitGraph, points: Vec<Point>) -> Result<Self, EmbeddingError> {
        if points.len() != graph.vertex_count() {
            return Err(EmbeddingError::CountMismatch {
                points: points.len(),
                vertices: graph.vertex_count(),
            });
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(EmbeddingError::DuplicateCoordinates { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(PlanarDrawing { graph, points })
    }

    pub fn graph(&self) -> &CircuitGraph {
        &self.graph
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Coordinates converted to doubles (lossy for large drawings; fine
    /// for export and rendering).
    pub fn points_f64(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|(x, y)| (bigint_to_f64(x), bigint_to_f64(y)))
            .collect()
    }

    /// Coordinate dump `{"points": [[x, y], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<[f64; 2]> = self.points_f64().iter().map(|&(x, y)| [x, y]).collect();
        serde_json::json!({ "points": pts })
    }
}

/// Builds the recursive drawing of the 3-band graph on `n >= 3` elements.
pub fn band3_recursive_drawing(n: usize) -> Result<PlanarDrawing, EmbeddingError> {
    if n < 3 {
        return Err(EmbeddingError::TooFewElements { n });
    }
    let graph = crate::arch::ArchitectureSpec::Band { q: 3 }
        .build_graph(n)
        .expect("band graph exists for any n >= 1");
    let mut points: Vec<Point> = vec![
        (BigInt::from(0), BigInt::from(0)),
        (BigInt::from(4), BigInt::from(0)),
        (BigInt::from(2), BigInt::from(3)),
    ];
    for k in 3..n {
        // Anchors: P = v_{k−3}, A = v_{k−2}, B = v_{k−1} in 0-based storage.
        let (px, py) = points[k - 3].clone();
        let (ax, ay) = points[k - 2].clone();
        let (bx, by) = points[k - 1].clone();
        let three = BigInt::from(3);
        points.push((&three * &px - &ax - &bx, &three * &py - &ay - &by));
    }
    PlanarDrawing::new(graph, points)
}

/// Sign of the signed area of triangle `abc`: positive for counterclockwise.
fn orientation(a: &Point, b: &Point, c: &Point) -> Sign {
    let cross = (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0);
    cross.sign()
}

/// Whether `p` lies on the closed segment `ab` (collinearity assumed
/// checked by the caller via `orientation == NoSign`).
fn within_bounds(a: &Point, b: &Point, p: &Point) -> bool {
    let (lo_x, hi_x) = if a.0 <= b.0 { (&a.0, &b.0) } else { (&b.0, &a.0) };
    let (lo_y, hi_y) = if a.1 <= b.1 { (&a.1, &b.1) } else { (&b.1, &a.1) };
    lo_x <= &p.0 && &p.0 <= hi_x && lo_y <= &p.1 && &p.1 <= hi_y
}

/// Whether closed segments `p1p2` and `q1q2` share any point.
fn segments_touch(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    let d1 = orientation(q1, q2, p1);
    let d2 = orientation(q1, q2, p2);
    let d3 = orientation(p1, p2, q1);
    let d4 = orientation(p1, p2, q2);
    if d1 != Sign::NoSign
        && d2 != Sign::NoSign
        && d3 != Sign::NoSign
        && d4 != Sign::NoSign
        && d1 != d2
        && d3 != d4
    {
        return true; // proper crossing
    }
    (d1 == Sign::NoSign && within_bounds(q1, q2, p1))
        || (d2 == Sign::NoSign && within_bounds(q1, q2, p2))
        || (d3 == Sign::NoSign && within_bounds(p1, p2, q1))
        || (d4 == Sign::NoSign && within_bounds(p1, p2, q2))
}

/// Counts edge pairs whose segments intersect anywhere other than a shared
/// graph endpoint.
///
/// Edge pairs sharing a vertex cross only if their segments are collinear
/// and overlap beyond the shared point; disjoint pairs cross if the closed
/// segments share any point at all (proper crossings, endpoint touches,
/// and collinear overlaps alike). All tests run in exact integer
/// arithmetic, so zero means zero.
pub fn count_crossings(d: &PlanarDrawing) -> usize {
    let edges = d.graph().edges();
    let pt = |v: usize| &d.points()[v - 1];
    let mut crossings = 0;
    for (idx, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[(idx + 1)..] {
            let shared: Vec<usize> = [a, b]
                .iter()
                .copied()
                .filter(|v| *v == c || *v == e)
                .collect();
            match shared.as_slice() {
                [] => {
                    if segments_touch(pt(a), pt(b), pt(c), pt(e)) {
                        crossings += 1;
                    }
                }
                [s] => {
                    // Segments radiating from one shared point intersect
                    // beyond it only when collinear on the same side.
                    let s_pt = pt(*s);
                    let other1 = pt(if a == *s { b } else { a });
                    let other2 = pt(if c == *s { e } else { c });
                    if orientation(s_pt, other1, other2) == Sign::NoSign {
                        let dot = (&other1.0 - &s_pt.0) * (&other2.0 - &s_pt.0)
                            + (&other1.1 - &s_pt.1) * (&other2.1 - &s_pt.1);
                        if dot.sign() == Sign::Plus {
                            crossings += 1;
                        }
                    }
                }
                _ => unreachable!("simple graph has no duplicate edges"),
            }
        }
    }
    crossings
}

/// Renders the drawing as a standalone SVG document: one circle per
/// vertex, one line per edge, labels `v1..vN`. Coordinates are normalized
/// into a fixed canvas, so drawings of any scale stay visible.
pub fn export_svg(d: &PlanarDrawing) -> String {
    const CANVAS: f64 = 1000.0;
    const MARGIN: f64 = 60.0;
    let pts = d.points_f64();
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    // SVG y grows downward; flip so the drawing keeps its orientation.
    let place = |x: f64, y: f64| {
        (
            MARGIN + (x - min_x) * scale,
            CANVAS - MARGIN - (y - min_y) * scale,
        )
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\" \
         width=\"{CANVAS}\" height=\"{CANVAS}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for &(i, j) in d.graph().edges() {
        let (x1, y1) = place(pts[i - 1].0, pts[i - 1].1);
        let (x2, y2) = place(pts[j - 1].0, pts[j - 1].1);
        svg.push_str(&format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"#336\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for (v, &(x, y)) in pts.iter().enumerate() {
        let (cx, cy) = place(x, y);
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"8\" fill=\"#c33\" stroke=\"black\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"16\" font-family=\"sans-serif\">v{}</text>\n",
            cx + 10.0,
            cy - 10.0,
            v + 1
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // Manual conversion keeps the dependency surface small: magnitude via
    // the base-2^32 digits, most significant first.
    let (sign, digits) = x.to_u32_digits();
    let mut value = 0.0f64;
    for &d in digits.iter().rev() {
        value = value * 4294967296.0 + d as f64;
    }
    if sign == Sign::Minus {
        -value
    } else {
        value
    }
}
