//! Paths and circuits as vertex sequences.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// A finite path `x_0 x_1 ... x_n`; consecutive entries are equal or
/// adjacent once validated against a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<VertexId>);

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("a path needs at least one vertex"));
        }
        Ok(Path(vertices))
    }

    pub fn single(v: VertexId) -> Self {
        Path(vec![v])
    }

    /// Checks that every vertex exists and consecutive vertices are equal or
    /// adjacent.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.0 {
            g.check_vertex(v)?;
        }
        for (i, w) in self.0.windows(2).enumerate() {
            if w[0] != w[1] && !g.has_edge(w[0], w[1]) {
                return Err(Error::input(format!(
                    "path step {i} joins non-adjacent vertices {} and {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> VertexId {
        self.0[0]
    }

    pub fn end(&self) -> VertexId {
        *self.0.last().expect("paths are nonempty")
    }

    /// The vertex at index `k`, if `k <= len()`.
    pub fn at(&self, k: usize) -> Option<VertexId> {
        self.0.get(k).copied()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Edges traversed between indices `from` and `to` (inclusive vertex
    /// indices, clipped to the path), skipping stalls.
    pub fn edges_between(&self, from: usize, to: usize) -> Vec<Edge> {
        let to = to.min(self.len());
        if from >= to {
            return Vec::new();
        }
        self.0[from..=to]
            .windows(2)
            .filter_map(|w| Edge::new(w[0], w[1]).ok())
            .collect()
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// An embedded closed path, stored open: `x_0 ... x_{n-1}` with the closing
/// step `x_{n-1} x_0` implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit(Vec<VertexId>);

impl Circuit {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::input("a circuit has length at least 3"));
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("circuit repeats a vertex"));
        }
        Ok(Circuit(vertices))
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.0 {
            g.check_vertex(v)?;
        }
        for e in self.edges() {
            if !g.has_edge(e.u(), e.v()) {
                return Err(Error::input(format!("circuit uses non-edge {e}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| Edge::new(self.0[i], self.0[(i + 1) % n]).expect("distinct vertices"))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|f| f == e)
    }

    /// Rotated so the smallest vertex comes first, oriented so the second
    /// vertex is the smaller of its two neighbours.
    pub fn canonical(&self) -> Circuit {
        let n = self.0.len();
        let (start, _) = self
            .0
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .expect("nonempty");
        let next = self.0[(start + 1) % n];
        let prev = self.0[(start + n - 1) % n];
        let out = if next <= prev {
            (0..n).map(|i| self.0[(start + i) % n]).collect()
        } else {
            (0..n).map(|i| self.0[(start + n - i) % n]).collect()
        };
        Circuit(out)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// The closed path `x_0 ... x_{n-1} x_0`.
    pub fn closed_path(&self) -> Path {
        let mut v = self.0.clone();
        v.push(self.0[0]);
        Path(v)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.closed_path().fmt(f)
    }
}
