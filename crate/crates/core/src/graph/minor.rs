//! Exhaustive forbidden-minor search on small graphs.
//!
//! By Wagner's theorem a graph is planar iff it has neither a K5 nor a
//! K3,3 minor. For graphs of at most [`ORACLE_VERTEX_LIMIT`] vertices this
//! module searches for a *minor model* directly: a family of disjoint,
//! individually connected branch sets, one per vertex of the forbidden
//! graph, with an edge of the host between every pair of branch sets that
//! are adjacent in the forbidden graph.
//!
//! The search enumerates set partitions of vertex subsets in
//! first-occurrence order (each vertex either stays unused or joins an
//! existing part or opens the next part), which visits every unordered
//! family of candidate branch sets exactly once. All set operations are
//! bitmask arithmetic, so the worst case — a dense 10-vertex graph —
//! stays well under a millisecond.

use super::{ForbiddenStructure, MinorKind};

/// Largest vertex count the oracle accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 10;

/// Finds some K5 or K3,3 minor model, trying K5 first. `adj[v]` is the
/// neighbor bitmask of 0-based vertex `v`. Returns `None` iff the graph is
/// planar.
pub(super) fn find_forbidden_minor(n: usize, adj: &[u16]) -> Option<ForbiddenStructure> {
    debug_assert!(n <= ORACLE_VERTEX_LIMIT);
    let mut search = Search {
        n,
        adj,
        parts: Vec::new(),
    };
    if let Some(parts) = search.run(5, check_k5) {
        return Some(ForbiddenStructure {
            kind: MinorKind::K5,
            branch_sets: to_branch_sets(&parts),
        });
    }
    if let Some(parts) = search.run(6, check_k33) {
        return Some(ForbiddenStructure {
            kind: MinorKind::K33,
            branch_sets: to_branch_sets(&parts),
        });
    }
    None
}

struct Search<'a> {
    n: usize,
    adj: &'a [u16],
    parts: Vec<u16>,
}

impl Search<'_> {
    /// Backtracking over vertices 0..n; each vertex is left unused or
    /// assigned to one of the open parts or to a newly opened part (capped
    /// at `target`). `accept` validates a complete assignment and may
    /// reorder the parts into witness order.
    fn run(
        &mut self,
        target: usize,
        accept: fn(&Search<'_>, &mut Vec<u16>) -> bool,
    ) -> Option<Vec<u16>> {
        self.parts.clear();
        self.recurse(0, target, accept)
    }

    fn recurse(
        &mut self,
        v: usize,
        target: usize,
        accept: fn(&Search<'_>, &mut Vec<u16>) -> bool,
    ) -> Option<Vec<u16>> {
        if self.parts.len() + (self.n - v) < target {
            // Too few vertices left to open the remaining parts.
            return None;
        }
        if v == self.n {
            let mut candidate = self.parts.clone();
            if accept(self, &mut candidate) {
                return Some(candidate);
            }
            return None;
        }
        let bit = 1u16 << v;
        // Join an existing part.
        for p in 0..self.parts.len() {
            self.parts[p] |= bit;
            if let Some(found) = self.recurse(v + 1, target, accept) {
                return Some(found);
            }
            self.parts[p] &= !bit;
        }
        // Open a new part.
        if self.parts.len() < target {
            self.parts.push(bit);
            if let Some(found) = self.recurse(v + 1, target, accept) {
                return Some(found);
            }
            self.parts.pop();
        }
        // Leave v unused.
        self.recurse(v + 1, target, accept)
    }

    fn connected(&self, mask: u16) -> bool {
        let start = mask.trailing_zeros() as usize;
        let mut reach = 1u16 << start;
        loop {
            let mut frontier = reach;
            let mut grown = reach;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= self.adj[v] & mask;
            }
            if grown == reach {
                return reach == mask;
            }
            reach = grown;
        }
    }

    /// Union of neighbor masks over the part's members.
    fn neighborhood(&self, mask: u16) -> u16 {
        let mut out = 0u16;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= self.adj[v];
        }
        out
    }

    fn all_connected(&self, parts: &[u16]) -> bool {
        parts.iter().all(|&p| self.connected(p))
    }
}

fn check_k5(search: &Search<'_>, parts: &mut Vec<u16>) -> bool {
    debug_assert_eq!(parts.len(), 5);
    if !search.all_connected(parts) {
        return false;
    }
    for a in 0..5 {
        let reach = search.neighborhood(parts[a]);
        for b in (a + 1)..5 {
            if reach & parts[b] == 0 {
                return false;
            }
        }
    }
    true
}

/// Checks all ten 3 + 3 splits of the six parts for a complete bipartite
/// adjacency; on success reorders `parts` so the first three form one side.
fn check_k33(search: &Search<'_>, parts: &mut Vec<u16>) -> bool {
    debug_assert_eq!(parts.len(), 6);
    if !search.all_connected(parts) {
        return false;
    }
    let reach: Vec<u16> = parts.iter().map(|&p| search.neighborhood(p)).collect();
    // Part 0's side needs two companions out of the remaining five.
    for x in 1..6 {
        for y in (x + 1)..6 {
            let side_a = [0, x, y];
            let side_b: Vec<usize> = (1..6).filter(|&k| k != x && k != y).collect();
            let complete = side_a
                .iter()
                .all(|&a| side_b.iter().all(|&b| reach[a] & parts[b] != 0));
            if complete {
                let ordered: Vec<u16> = side_a
                    .iter()
                    .chain(side_b.iter())
                    .map(|&k| parts[k])
                    .collect();
                *parts = ordered;
                return true;
            }
        }
    }
    false
}

/// Bitmask parts to sorted 1-based vertex lists.
fn to_branch_sets(parts: &[u16]) -> Vec<Vec<usize>> {
    parts
        .iter()
        .map(|&mask| {
            let mut set = Vec::new();
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                set.push(v + 1);
            }
            set
        })
        .collect()
}
