//! Undirected weighted simple graphs and structural queries.
//!
//! Vertices are dense ids `0..n`. Edges are stored once with `u < v`, in
//! lexicographic order, and every vertex carries a list of
//! `(neighbor, edge index)` pairs into that edge list.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An undirected edge with `u < v` and a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected weighted graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<(usize, usize)>,
    total_weight: f64,
}

impl Graph {
    /// Builds a graph on `n` vertices. Parallel edges (in either
    /// orientation) are merged by summing their weights.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a == b || a >= n || b >= n || w.is_nan() || w <= 0.0 || !w.is_finite() {
                return Err(Error::InvalidEdge { u: a, v: b, weight: w });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge { u, v, w });
        }
        list.sort_by_key(|e| (e.u, e.v));
        let mut merged: Vec<Edge> = Vec::with_capacity(list.len());
        for e in list {
            match merged.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v => last.w += e.w,
                _ => merged.push(e),
            }
        }
        Ok(Self::from_sorted_unique(n, merged))
    }

    /// Unweighted convenience constructor (every weight is 1).
    pub fn from_unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![(0, 0); 2 * edges.len()];
        for (i, e) in edges.iter().enumerate() {
            adjacency[fill[e.u]] = (e.v, i);
            fill[e.u] += 1;
            adjacency[fill[e.v]] = (e.u, i);
            fill[e.v] += 1;
        }
        let total_weight = edges.iter().map(|e| e.w).sum();
        Graph {
            n,
            edges,
            offsets,
            adjacency,
            total_weight,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Sum of all edge weights.
    #[inline]
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Weighted degree of `v`.
    pub fn strength(&self, v: usize) -> f64 {
        self.neighbors(v).iter().map(|&(_, e)| self.edges[e].w).sum()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if b >= self.n {
            return None;
        }
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    /// Same topology with every edge weight replaced. Weights must be
    /// aligned to edge indices and strictly positive.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::SizeMismatch {
                expected: self.edges.len(),
                found: weights.len(),
            });
        }
        let mut out = self.clone();
        for (e, &w) in out.edges.iter_mut().zip(weights) {
            if w.is_nan() || w <= 0.0 || !w.is_finite() {
                return Err(Error::InvalidEdge { u: e.u, v: e.v, weight: w });
            }
            e.w = w;
        }
        out.total_weight = out.edges.iter().map(|e| e.w).sum();
        Ok(out)
    }

    /// Appends isolated vertices so the graph has at least `n` vertices.
    pub fn padded_to(&self, n: usize) -> Self {
        if n <= self.n {
            return self.clone();
        }
        Self::from_sorted_unique(n, self.edges.clone())
    }
}

/// Per-vertex boolean membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMask(Vec<bool>);

impl VertexMask {
    pub fn new(membership: Vec<bool>) -> Self {
        VertexMask(membership)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of marked vertices.
    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

/// Vertices of the 2-core, found by repeatedly peeling vertices whose
/// remaining degree is below 2. Weights are ignored.
pub fn two_core(g: &Graph) -> VertexMask {
    let n = g.num_vertices();
    let mut degree = g.degrees();
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| degree[v] < 2).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &(u, _) in g.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    queue.push(u);
                }
            }
        }
    }
    VertexMask(alive)
}

/// A sub-graph together with the maps back to the parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// Parent vertex id for each sub-graph vertex (ascending).
    pub vertex_map: Vec<usize>,
    /// Parent edge index for each sub-graph edge.
    pub edge_map: Vec<usize>,
}

impl Subgraph {
    /// Sub-graph id of a parent vertex, if present.
    pub fn local_id(&self, parent: usize) -> Option<usize> {
        self.vertex_map.binary_search(&parent).ok()
    }
}

/// Connected component of `seed` when only edges accepted by `allowed`
/// may be traversed. The result keeps exactly the traversable edges among
/// the reached vertices.
pub fn connected_component<F>(g: &Graph, seed: usize, allowed: F) -> Result<Subgraph>
where
    F: Fn(usize, &Edge) -> bool,
{
    let n = g.num_vertices();
    if seed >= n {
        return Err(Error::VertexOutOfRange { vertex: seed, n });
    }
    let mut seen = vec![false; n];
    let mut reached = Vec::new();
    let mut queue = VecDeque::from([seed]);
    seen[seed] = true;
    while let Some(v) = queue.pop_front() {
        reached.push(v);
        for &(u, e) in g.neighbors(v) {
            if !seen[u] && allowed(e, g.edge(e)) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    reached.sort_unstable();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in reached.iter().enumerate() {
        local[v] = i;
    }
    let mut edge_map = Vec::new();
    let mut sub_edges = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if seen[e.u] && seen[e.v] && allowed(i, e) {
            edge_map.push(i);
            sub_edges.push(Edge {
                u: local[e.u],
                v: local[e.v],
                w: e.w,
            });
        }
    }
    // parent edges are sorted and the id remap is monotone, so order holds
    let graph = Graph::from_sorted_unique(reached.len(), sub_edges);
    Ok(Subgraph {
        graph,
        vertex_map: reached,
        edge_map,
    })
}
