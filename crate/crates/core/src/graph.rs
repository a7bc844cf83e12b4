//! Finite simple connected graphs with the path metric.
//!
//! A [`Graph`] is a finite truncation of the (usually infinite) graph under
//! study. Vertices are dense ids `0..n`; an optional label table carries
//! human-readable names such as Farey fractions or coset words. Generators
//! may also mark *frontier* vertices, i.e. vertices that lost neighbours
//! when the ambient graph was truncated.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Graphs with at most this many vertices may cache distance rows.
pub const DEFAULT_CACHE_LIMIT: usize = 20_000;

pub(crate) const UNREACHED: u32 = u32::MAX;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Normalizes the endpoint order. Loops are rejected.
    pub fn new(u: VertexId, v: VertexId) -> Result<Self> {
        if u == v {
            return Err(Error::input(format!("loop at vertex {u}")));
        }
        Ok(if u < v { Edge(u, v) } else { Edge(v, u) })
    }

    pub fn u(&self) -> VertexId {
        self.0
    }

    pub fn v(&self) -> VertexId {
        self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// An exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Immutable finite simple connected graph.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    edge_set: HashSet<Edge>,
    labels: Option<Vec<String>>,
    label_index: HashMap<String, VertexId>,
    frontier: Vec<bool>,
    rows: Option<Vec<OnceLock<Arc<[u32]>>>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.adj.len())
            .field("edges", &self.edges.len())
            .field("labelled", &self.labels.is_some())
            .finish()
    }
}

/// Incremental construction with loop/duplicate rejection; connectivity is
/// checked by [`GraphBuilder::build`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<VertexId>>,
    edge_set: HashSet<Edge>,
    labels: Vec<Option<String>>,
    frontier: Vec<bool>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
            edge_set: HashSet::new(),
            labels: vec![None; n],
            frontier: vec![false; n],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.labels.push(None);
        self.frontier.push(false);
        self.adj.len() - 1
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        Edge::new(u, v)
            .map(|e| self.edge_set.contains(&e))
            .unwrap_or(false)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        let e = Edge::new(u, v)?;
        if !self.edge_set.insert(e) {
            return Err(Error::input(format!("duplicate edge {e}")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) -> Result<()> {
        self.check(v)?;
        self.labels[v] = Some(label.into());
        Ok(())
    }

    pub fn set_frontier(&mut self, v: VertexId, frontier: bool) -> Result<()> {
        self.check(v)?;
        self.frontier[v] = frontier;
        Ok(())
    }

    /// First vertex (in id order) not reachable from vertex 0, if any.
    pub fn first_unreachable(&self) -> Option<VertexId> {
        if self.adj.is_empty() {
            return None;
        }
        let dist = bfs_adj(&self.adj, 0, None);
        dist.iter().position(|&d| d == UNREACHED)
    }

    pub fn build(mut self) -> Result<Graph> {
        if self.adj.is_empty() {
            return Err(Error::input("graph has no vertices"));
        }
        if let Some(v) = self.first_unreachable() {
            return Err(Error::input(format!(
                "graph is disconnected: vertex {v} is unreachable from vertex 0"
            )));
        }
        for list in &mut self.adj {
            list.sort_unstable();
        }
        let mut edges: Vec<Edge> = self.edge_set.iter().copied().collect();
        edges.sort_unstable();

        let labels = if self.labels.iter().any(Option::is_some) {
            Some(
                self.labels
                    .into_iter()
                    .enumerate()
                    .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
                    .collect::<Vec<_>>(),
            )
        } else {
            None
        };
        let mut label_index = HashMap::new();
        if let Some(labels) = &labels {
            for (i, l) in labels.iter().enumerate() {
                if label_index.insert(l.clone(), i).is_some() {
                    return Err(Error::input(format!("duplicate vertex label {l}")));
                }
            }
        }
        Ok(Graph {
            adj: self.adj,
            edges,
            edge_set: self.edge_set,
            labels,
            label_index,
            frontier: self.frontier,
            rows: None,
        })
    }
}

pub(crate) fn bfs_adj(adj: &[Vec<VertexId>], src: VertexId, limit: Option<u32>) -> Vec<u32> {
    let mut dist = vec![UNREACHED; adj.len()];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if limit.is_some_and(|r| du >= r) {
            continue;
        }
        for &w in &adj[u] {
            if dist[w] == UNREACHED {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

impl Graph {
    /// Builds a graph from an edge list over `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        b.build()
    }

    /// Enables the per-source distance cache when the graph has at most
    /// `limit` vertices. Rows are filled lazily and shared between threads.
    pub fn with_distance_cache(mut self, limit: usize) -> Self {
        if self.adj.len() <= limit {
            self.rows = Some((0..self.adj.len()).map(|_| OnceLock::new()).collect());
        }
        self
    }

    pub fn has_distance_cache(&self) -> bool {
        self.rows.is_some()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        Edge::new(u, v)
            .map(|e| self.edge_set.contains(&e))
            .unwrap_or(false)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.adj.len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Label if present, otherwise the numeric id.
    pub fn name(&self, v: VertexId) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_string)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.label_index.get(label).copied()
    }

    /// Resolves a vertex reference given either as a label or as an id.
    pub fn resolve(&self, name: &str) -> Result<VertexId> {
        if let Some(v) = self.vertex_by_label(name) {
            return Ok(v);
        }
        let v: VertexId = name
            .parse()
            .map_err(|_| Error::input(format!("no vertex named {name}")))?;
        self.check_vertex(v)?;
        Ok(v)
    }

    pub fn is_frontier(&self, v: VertexId) -> bool {
        self.frontier[v]
    }

    pub fn has_frontier(&self) -> bool {
        self.frontier.iter().any(|&f| f)
    }

    /// Breadth-first distances from `src` to every vertex.
    pub fn dist_row(&self, src: VertexId) -> Arc<[u32]> {
        match &self.rows {
            Some(rows) => rows[src]
                .get_or_init(|| bfs_adj(&self.adj, src, None).into())
                .clone(),
            None => bfs_adj(&self.adj, src, None).into(),
        }
    }

    /// Distances from `src`, with vertices farther than `radius` left at
    /// `u32::MAX`.
    pub fn bfs_within(&self, src: VertexId, radius: u32) -> Vec<u32> {
        bfs_adj(&self.adj, src, Some(radius))
    }

    pub fn distance(&self, x: VertexId, y: VertexId) -> Result<u32> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Ok(0);
        }
        if let Some(rows) = &self.rows {
            if let Some(row) = rows[x].get() {
                return Ok(row[y]);
            }
            return Ok(self.dist_row(x)[y]);
        }
        // Early-exit search; the graph is connected so `y` is always found.
        let mut dist = vec![UNREACHED; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[x] = 0;
        queue.push_back(x);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    if w == y {
                        return Ok(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        Err(Error::invariant("graph is disconnected"))
    }

    /// Vertices within distance `r` of `x`, in ascending id order.
    pub fn ball(&self, x: VertexId, r: u32) -> Result<Vec<VertexId>> {
        self.check_vertex(x)?;
        let dist = self.bfs_within(x, r);
        Ok(dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= r)
            .map(|(v, _)| v)
            .collect())
    }

    /// The Gromov product of `x` and `y` seen from `z`.
    pub fn gromov_product(&self, x: VertexId, y: VertexId, z: VertexId) -> Result<HalfInt> {
        let dxz = self.distance(x, z)? as i64;
        let dyz = self.distance(y, z)? as i64;
        let dxy = self.distance(x, y)? as i64;
        Ok(HalfInt::from_twice(dxz + dyz - dxy))
    }

    /// Largest distance from `x`.
    pub fn eccentricity(&self, x: VertexId) -> Result<u32> {
        self.check_vertex(x)?;
        Ok(self.dist_row(x).iter().copied().max().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_disconnection() {
        let mut b = GraphBuilder::new(3);
        assert!(b.add_edge(1, 1).is_err());
        b.add_edge(0, 1).unwrap();
        assert!(b.add_edge(1, 0).is_err());
        assert!(b.clone().build().is_err());
        b.add_edge(1, 2).unwrap();
        assert!(b.build().is_ok());
    }

    #[test]
    fn distance_basics() {
        let g = path_graph(5);
        assert_eq!(g.distance(2, 2).unwrap(), 0);
        assert_eq!(g.distance(1, 2).unwrap(), 1);
        assert_eq!(g.distance(0, 4).unwrap(), 4);
        assert!(matches!(g.distance(0, 9), Err(Error::UnknownVertex(9))));
        let cached = path_graph(5).with_distance_cache(DEFAULT_CACHE_LIMIT);
        assert!(cached.has_distance_cache());
        assert_eq!(cached.distance(4, 0).unwrap(), 4);
        assert_eq!(cached.distance(4, 0).unwrap(), 4);
    }

    #[test]
    fn balls() {
        let g = path_graph(5);
        assert_eq!(g.ball(2, 0).unwrap(), vec![2]);
        assert_eq!(g.ball(2, 1).unwrap(), vec![1, 2, 3]);
        assert_eq!(g.ball(0, 10).unwrap().len(), 5);
    }

    #[test]
    fn gromov_products_on_a_path() {
        let g = path_graph(5);
        assert_eq!(g.gromov_product(0, 4, 2).unwrap(), HalfInt::from_int(0));
        // <x,x>_z = d(x,z)
        assert_eq!(g.gromov_product(1, 1, 4).unwrap(), HalfInt::from_int(3));
        // <x,y>_x = 0
        assert_eq!(g.gromov_product(3, 0, 3).unwrap(), HalfInt::from_int(0));
    }

    #[test]
    fn half_int_display() {
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
        assert_eq!(HalfInt::from_twice(3).floor(), 1);
    }

    #[test]
    fn labels_resolve() {
        let mut b = GraphBuilder::new(2);
        b.add_edge(0, 1).unwrap();
        b.set_label(0, "1/0").unwrap();
        b.set_label(1, "0/1").unwrap();
        let g = b.build().unwrap();
        assert_eq!(g.resolve("0/1").unwrap(), 1);
        assert_eq!(g.resolve("0").unwrap(), 0);
        assert!(g.resolve("7").is_err());
        assert_eq!(g.name(0), "1/0");
    }
}
