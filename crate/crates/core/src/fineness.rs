//! Circuits through an edge and the uniform-fineness profile.
//!
//! In a truncated graph the counts are lower bounds for the ambient graph.
//! An edge is *interior* at scale `n` when every vertex a circuit of length
//! `<= n` could visit lies strictly inside the truncation; its count is then
//! exact.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, UNREACHED};
use crate::path::Circuit;

/// Circuits of length at most `bound` containing `edge`, canonical and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    pub edge: Edge,
    pub bound: usize,
    pub circuits: Vec<Circuit>,
    pub truncated: bool,
}

impl CircuitSet {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }
}

fn check_edge(g: &Graph, e: Edge, n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::input(format!("circuit length bound {n} is below 3")));
    }
    if !g.has_edge(e.u(), e.v()) {
        return Err(Error::input(format!("{e} is not an edge")));
    }
    Ok(())
}

/// Distances to `target` in `g` with the edge `e` removed, cut off at `limit`.
fn dist_avoiding(g: &Graph, e: Edge, target: VertexId, limit: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.num_vertices()];
    let mut frontier = vec![target];
    dist[target] = 0;
    let mut d = 0;
    while !frontier.is_empty() && d < limit {
        d += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &w in g.neighbors(x) {
                if dist[w] == UNREACHED && Edge::new(x, w).ok() != Some(e) {
                    dist[w] = d;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Depth-first search over simple paths from `e.u()` to `e.v()` in `g - e`
/// with at most `n - 1` steps. `visit` returns false to stop the search.
fn walk_circuits(g: &Graph, e: Edge, n: usize, mut visit: impl FnMut(&[VertexId]) -> bool) {
    let (u, v) = (e.u(), e.v());
    let max_steps = (n - 1) as u32;
    let to_v = dist_avoiding(g, e, v, max_steps);
    let mut on_path = vec![false; g.num_vertices()];
    let mut stack: Vec<VertexId> = vec![u];
    on_path[u] = true;
    // Iterative DFS keeping a neighbour cursor per level.
    let mut cursor: Vec<usize> = vec![0];
    while let Some(&x) = stack.last() {
        let depth = (stack.len() - 1) as u32;
        let i = *cursor.last().expect("aligned with stack");
        let nbrs = g.neighbors(x);
        if i == nbrs.len() {
            stack.pop();
            cursor.pop();
            on_path[x] = false;
            continue;
        }
        *cursor.last_mut().expect("aligned") += 1;
        let w = nbrs[i];
        if depth == 0 && w == v {
            continue; // the edge itself
        }
        if w == v {
            stack.push(v);
            let keep_going = visit(&stack);
            stack.pop();
            if !keep_going {
                return;
            }
            continue;
        }
        if on_path[w] || to_v[w] == UNREACHED || depth + 1 + to_v[w] > max_steps {
            continue;
        }
        on_path[w] = true;
        stack.push(w);
        cursor.push(0);
    }
}

/// All circuits of length `<= n` through `e`, up to `cap` of them.
pub fn circuits_through(g: &Graph, e: Edge, n: usize, cap: usize) -> Result<CircuitSet> {
    check_edge(g, e, n)?;
    let mut circuits = Vec::new();
    let mut truncated = false;
    walk_circuits(g, e, n, |path| {
        if circuits.len() == cap {
            truncated = true;
            return false;
        }
        circuits.push(Circuit::new(path.to_vec()).expect("simple path").canonical());
        true
    });
    circuits.sort();
    Ok(CircuitSet {
        edge: e,
        bound: n,
        circuits,
        truncated,
    })
}

/// `|C(e, n)|`, saturating at `cap` with the flag set.
pub fn count_circuits(g: &Graph, e: Edge, n: usize, cap: u64) -> Result<(u64, bool)> {
    check_edge(g, e, n)?;
    let mut count = 0u64;
    let mut truncated = false;
    walk_circuits(g, e, n, |_| {
        if count == cap {
            truncated = true;
            return false;
        }
        count += 1;
        true
    });
    Ok((count, truncated))
}

/// True when no frontier vertex lies within distance `floor((n-1)/2) - 1` of
/// either endpoint, so every circuit of length `<= n` through `e` that exists
/// in the ambient graph is already present.
pub fn is_interior(g: &Graph, e: Edge, n: usize) -> bool {
    if !g.has_frontier() {
        return true;
    }
    let r = ((n.saturating_sub(1)) / 2) as u32;
    if r == 0 {
        return !g.is_frontier(e.u()) && !g.is_frontier(e.v());
    }
    [e.u(), e.v()].iter().all(|&x| {
        g.bfs_within(x, r - 1)
            .iter()
            .enumerate()
            .all(|(w, &d)| d == UNREACHED || !g.is_frontier(w))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCount {
    pub edge: Edge,
    pub count: u64,
    pub truncated: bool,
    pub interior: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinenessProfile {
    pub n: usize,
    pub per_edge: Vec<EdgeCount>,
    pub sup: u64,
    /// Sup over interior edges; `None` when no edge is interior.
    pub interior_sup: Option<u64>,
    pub truncated: bool,
}

impl FinenessProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("edge_u,edge_v,n,count,truncated,interior\n");
        for row in &self.per_edge {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                row.edge.u(),
                row.edge.v(),
                self.n,
                row.count,
                row.truncated,
                row.interior
            );
        }
        out
    }
}

/// `|C(e, n)|` for every edge, with the global and interior sups.
pub fn fineness_profile(g: &Graph, n: usize, cap: u64) -> Result<FinenessProfile> {
    if n < 3 {
        return Err(Error::input(format!("circuit length bound {n} is below 3")));
    }
    profile_over(g, g.edges(), n, cap)
}

/// As [`fineness_profile`], restricted to the given edges.
pub fn profile_over(g: &Graph, edges: &[Edge], n: usize, cap: u64) -> Result<FinenessProfile> {
    let per_edge = edges
        .par_iter()
        .map(|&e| {
            let (count, truncated) = count_circuits(g, e, n, cap)?;
            Ok(EdgeCount {
                edge: e,
                count,
                truncated,
                interior: is_interior(g, e, n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup = per_edge.iter().map(|r| r.count).max().unwrap_or(0);
    let interior_sup = per_edge.iter().filter(|r| r.interior).map(|r| r.count).max();
    let truncated = per_edge.iter().any(|r| r.truncated);
    Ok(FinenessProfile {
        n,
        per_edge,
        sup,
        interior_sup,
        truncated,
    })
}
