//! Left-right planarity criterion, decision only.
//!
//! A DFS orientation splits the graph into tree edges and back edges; the
//! graph is planar iff the back edges can be 2-colored (left/right of the
//! tree path they return along) without same-side interleavings. The
//! criterion is checked by a second DFS that maintains a stack of conflict
//! pairs of back-edge intervals; a constraint violation proves a K5 or
//! K3,3 subdivision exists, so the graph is rejected.
//!
//! Input adjacency is 0-based. Both passes recurse; depth is bounded by the
//! vertex count, which stays in the low thousands for every caller here.

use std::collections::HashMap;

/// Directed edge of the DFS orientation, as (tail, head).
type DirEdge = (usize, usize);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<DirEdge>,
    high: Option<DirEdge>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

/// Pair of back-edge intervals that must embed on opposite sides.
#[derive(Debug, Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State<'a> {
    adj: &'a [Vec<usize>],
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<DirEdge>>,
    /// Outgoing DFS edges per vertex, in visit order; re-sorted by nesting
    /// depth before the testing pass.
    oriented: Vec<Vec<usize>>,
    /// Marks undirected edges already oriented, keyed (min, max).
    handled: std::collections::HashSet<(usize, usize)>,
    lowpt: HashMap<DirEdge, usize>,
    lowpt2: HashMap<DirEdge, usize>,
    nesting_depth: HashMap<DirEdge, usize>,
    stack: Vec<ConflictPair>,
    /// Stack height when the edge's subtree processing began.
    stack_bottom: HashMap<DirEdge, usize>,
    /// For a tree edge, a back edge realizing its lowpoint.
    lowpt_edge: HashMap<DirEdge, DirEdge>,
    /// Links a back edge to the next-lower edge of its merged interval;
    /// followed when trimming interval highs.
    reference: HashMap<DirEdge, Option<DirEdge>>,
}

pub(super) fn is_planar(n: usize, adj: &[Vec<usize>], m: usize) -> bool {
    // Euler bound: any planar graph on n >= 3 vertices has at most 3n - 6
    // edges, so dense graphs are rejected up front. This also caps the work
    // the DFS passes can see.
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    if n < 5 {
        // Fewer than five vertices cannot host a K5 or K3,3 subdivision.
        return true;
    }
    let mut state = State {
        adj,
        height: vec![None; n],
        parent_edge: vec![None; n],
        oriented: vec![Vec::new(); n],
        handled: std::collections::HashSet::new(),
        lowpt: HashMap::new(),
        lowpt2: HashMap::new(),
        nesting_depth: HashMap::new(),
        stack: Vec::new(),
        stack_bottom: HashMap::new(),
        lowpt_edge: HashMap::new(),
        reference: HashMap::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if state.height[v].is_none() {
            state.height[v] = Some(0);
            roots.push(v);
            state.dfs_orientation(v);
        }
    }
    state.sort_by_nesting_depth();
    for v in roots {
        if !state.dfs_testing(v) {
            return false;
        }
    }
    true
}

impl State<'_> {
    /// First pass: orient edges, compute heights, lowpoints, and nesting
    /// depths.
    fn dfs_orientation(&mut self, v: usize) {
        let adj = self.adj;
        let parent = self.parent_edge[v];
        let hv = self.height[v].expect("visited vertex has a height");
        for &w in &adj[v] {
            let key = (v.min(w), v.max(w));
            if !self.handled.insert(key) {
                continue;
            }
            let vw = (v, w);
            self.oriented[v].push(w);
            self.lowpt.insert(vw, hv);
            self.lowpt2.insert(vw, hv);
            if self.height[w].is_none() {
                // Tree edge.
                self.parent_edge[w] = Some(vw);
                self.height[w] = Some(hv + 1);
                self.dfs_orientation(w);
            } else {
                // Back edge: returns to the height of its head.
                self.lowpt.insert(vw, self.height[w].unwrap());
            }
            // Nesting depth orders children so that intervals nest where
            // possible: primarily by return height, with chordal edges
            // (lowpt2 below v) penalized by one.
            let lp = self.lowpt[&vw];
            let mut depth = 2 * lp;
            if self.lowpt2[&vw] < hv {
                depth += 1;
            }
            self.nesting_depth.insert(vw, depth);
            // Fold this edge's lowpoints into the parent edge's.
            if let Some(pe) = parent {
                let lp_pe = self.lowpt[&pe];
                match lp.cmp(&lp_pe) {
                    std::cmp::Ordering::Less => {
                        let merged = lp_pe.min(self.lowpt2[&vw]);
                        self.lowpt2.insert(pe, merged);
                        self.lowpt.insert(pe, lp);
                    }
                    std::cmp::Ordering::Greater => {
                        let merged = self.lowpt2[&pe].min(lp);
                        self.lowpt2.insert(pe, merged);
                    }
                    std::cmp::Ordering::Equal => {
                        let merged = self.lowpt2[&pe].min(self.lowpt2[&vw]);
                        self.lowpt2.insert(pe, merged);
                    }
                }
            }
        }
    }

    fn sort_by_nesting_depth(&mut self) {
        for v in 0..self.oriented.len() {
            let mut out = std::mem::take(&mut self.oriented[v]);
            out.sort_by_key(|&w| self.nesting_depth[&(v, w)]);
            self.oriented[v] = out;
        }
    }

    /// Second pass: merge the return-edge intervals of each child into
    /// conflict pairs and check the left-right constraints.
    fn dfs_testing(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let out = self.oriented[v].clone();
        for (i, &w) in out.iter().enumerate() {
            let ei = (v, w);
            self.stack_bottom.insert(ei, self.stack.len());
            if self.parent_edge[w] == Some(ei) {
                // Tree edge.
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                // Back edge: one fresh single-edge interval on the right.
                self.lowpt_edge.insert(ei, ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            // Integrate new return edges, if ei returns below v.
            if self.lowpt[&ei] < self.height[v].unwrap() {
                if i == 0 {
                    let le = self.lowpt_edge[&ei];
                    self.lowpt_edge.insert(
                        parent.expect("non-root vertex has a parent edge"),
                        le,
                    );
                } else if !self.add_constraints(ei, parent.unwrap()) {
                    return false;
                }
            }
        }
        // Leaving v: drop back edges that end here.
        if let Some(pe) = parent {
            self.remove_back_edges(pe);
        }
        true
    }

    fn add_constraints(&mut self, ei: DirEdge, parent: DirEdge) -> bool {
        let mut pair = ConflictPair::default();
        let bottom = self.stack_bottom[&ei];
        // Merge the return edges of ei into pair.right.
        loop {
            let mut q = self.stack.pop().expect("return edges of ei on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                // Two non-empty sides cannot both join the right interval.
                return false;
            }
            let q_low = q.right.low.expect("non-empty interval has a low edge");
            if self.lowpt[&q_low] > self.lowpt[&parent] {
                // Merge: the interval returns strictly above the parent's
                // lowpoint, so it stays on this side.
                match pair.right.low {
                    None => pair.right.high = q.right.high,
                    Some(low) => {
                        self.reference.insert(low, q.right.high);
                    }
                }
                pair.right.low = q.right.low;
            } else {
                // Align: returns at or below the parent's lowpoint.
                self.reference.insert(q_low, Some(self.lowpt_edge[&parent]));
            }
            if self.stack.len() == bottom {
                break;
            }
        }
        // Merge conflicting return edges of earlier children into pair.left.
        while self.top_has_conflict(ei) {
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                // Both sides interleave with ei: constraint violation.
                return false;
            }
            // The non-conflicting side joins pair.right...
            if let Some(low) = pair.right.low {
                self.reference.insert(low, q.right.high);
            }
            if let Some(q_low) = q.right.low {
                pair.right.low = Some(q_low);
            }
            // ...and the conflicting side joins pair.left.
            match pair.left.low {
                None => pair.left.high = q.left.high,
                Some(low) => {
                    self.reference.insert(low, q.left.high);
                }
            }
            pair.left.low = q.left.low;
        }
        if !(pair.left.is_empty() && pair.right.is_empty()) {
            self.stack.push(pair);
        }
        true
    }

    /// Whether the interval has a return edge strictly above lowpt(b),
    /// i.e. would interleave with b.
    fn conflicting(&self, interval: &Interval, b: DirEdge) -> bool {
        match interval.high {
            Some(high) => self.lowpt[&high] > self.lowpt[&b],
            None => false,
        }
    }

    fn top_has_conflict(&self, ei: DirEdge) -> bool {
        self.stack
            .last()
            .is_some_and(|q| self.conflicting(&q.left, ei) || self.conflicting(&q.right, ei))
    }

    fn lowest(&self, pair: &ConflictPair) -> usize {
        match (pair.left.low, pair.right.low) {
            (Some(l), Some(r)) => self.lowpt[&l].min(self.lowpt[&r]),
            (Some(l), None) => self.lowpt[&l],
            (None, Some(r)) => self.lowpt[&r],
            (None, None) => unreachable!("empty conflict pair on the stack"),
        }
    }

    /// Follow the reference chain past every back edge returning to `u`.
    fn trim(&self, mut high: Option<DirEdge>, u: usize) -> Option<DirEdge> {
        while let Some(h) = high {
            if h.1 != u {
                break;
            }
            high = self.reference.get(&h).copied().flatten();
        }
        high
    }

    /// On return from the subtree below `e = (u, ·)`: drop intervals whose
    /// return edges end at `u`, since they no longer constrain anything.
    fn remove_back_edges(&mut self, e: DirEdge) {
        let u = e.0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == self.height[u].unwrap() {
                self.stack.pop();
            } else {
                break;
            }
        }
        if let Some(mut pair) = self.stack.pop() {
            pair.left.high = self.trim(pair.left.high, u);
            if pair.left.high.is_none() {
                if let Some(low) = pair.left.low {
                    // Left side fully consumed: link to the other side and
                    // clear it.
                    self.reference.insert(low, pair.right.low);
                    pair.left.low = None;
                }
            }
            pair.right.high = self.trim(pair.right.high, u);
            if pair.right.high.is_none() {
                if let Some(low) = pair.right.low {
                    self.reference.insert(low, pair.left.low);
                    pair.right.low = None;
                }
            }
            self.stack.push(pair);
        }
    }
}
