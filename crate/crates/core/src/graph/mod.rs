//! Immutable simple undirected graphs and the exact combinatorial kernels
//! used to certify every structural claim in this crate.

mod cycles;
mod degeneracy;
mod girth;
mod hom;

use std::fmt;

pub use cycles::{has_cycle_of_length, MAX_CYCLE_QUERY, MIN_CYCLE_QUERY};
pub use degeneracy::{degeneracy_order, degeneracy_peel, forest_decompose, DegeneracyOrder, Peel};
pub use girth::{girth, girth_exceeds, shortest_cycle_at_most};
pub use hom::{is_locally_injective_hom, Homomorphism};

use crate::error::{Error, Result};

/// An undirected edge, normalized so that `.0 < .1`.
pub type Edge = (u32, u32);

#[inline]
pub fn normalize(u: u32, v: u32) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Length of a shortest cycle. `Infinite` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    /// True when every cycle is longer than `len`.
    pub fn exceeds(self, len: u32) -> bool {
        self > Girth::Finite(len)
    }

    pub fn at_least(self, len: u32) -> bool {
        self >= Girth::Finite(len)
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Bipartition tag of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    First,
    Second,
}

/// Anything that can answer adjacency queries on a fixed vertex set.
///
/// Lets homomorphism checks run against targets that are never
/// materialized, such as one part of an implicit palette partition.
pub trait EdgeOracle {
    fn vertex_count(&self) -> usize;
    fn has_edge(&self, u: u32, v: u32) -> bool;
}

/// A simple undirected graph in compressed adjacency form. Neighbor lists
/// are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Option<Vec<String>>,
    classes: Option<Vec<Class>>,
}

#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
    classes: Option<Vec<Class>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            ..Default::default()
        }
    }

    pub fn with_capacity(n: usize, m: usize) -> Self {
        GraphBuilder {
            n,
            edges: Vec::with_capacity(m),
            ..Default::default()
        }
    }

    pub fn labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn classes(mut self, classes: Vec<Class>) -> Self {
        self.classes = Some(classes);
        self
    }

    /// The first `first` vertices form one class, the rest the other.
    pub fn bipartition(self, first: usize) -> Self {
        let n = self.n;
        self.classes(
            (0..n)
                .map(|v| {
                    if v < first {
                        Class::First
                    } else {
                        Class::Second
                    }
                })
                .collect(),
        )
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<()> {
        for w in [u, v] {
            if w as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w as u64,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges.push(normalize(u, v));
        Ok(())
    }

    pub fn build(mut self) -> Result<Graph> {
        let n = self.n;
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} labels for {n} vertices",
                    l.len()
                )));
            }
        }
        if let Some(c) = &self.classes {
            if c.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "{} class tags for {n} vertices",
                    c.len()
                )));
            }
        }
        self.edges.sort_unstable();
        if let Some(w) = self.edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        if let Some(c) = &self.classes {
            if let Some(&(u, v)) = self
                .edges
                .iter()
                .find(|(u, v)| c[*u as usize] == c[*v as usize])
            {
                return Err(Error::NotBipartite(u, v));
            }
        }
        let mut graph = Graph::from_sorted_unique(n, &self.edges);
        graph.labels = self.labels;
        graph.classes = self.classes;
        Ok(graph)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            labels: None,
            classes: None,
        }
    }

    /// Builds a graph from an edge list; duplicates and loops are errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        b.build()
    }

    /// `edges` must be normalized, sorted and duplicate free.
    fn from_sorted_unique(n: usize, edges: &[Edge]) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        // Edges are sorted by (u, v): every list receives its entries in
        // increasing order, except that lower neighbors (coming from the
        // `v` side) are interleaved. Sort each list afterwards.
        for &(u, v) in edges {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            neighbors,
            labels: None,
            classes: None,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count() as u32)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count() as u32)
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<u32> {
        0..self.vertex_count() as u32
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let n = self.vertex_count() as u32;
        if u >= n || v >= n {
            return false;
        }
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: u32) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v as usize].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn classes(&self) -> Option<&[Class]> {
        self.classes.as_deref()
    }

    /// If the class tags split the vertices as a prefix of `First` followed
    /// by `Second`, the two class sizes.
    pub fn contiguous_bipartition(&self) -> Option<(usize, usize)> {
        let c = self.classes.as_ref()?;
        let first = c.iter().take_while(|&&x| x == Class::First).count();
        if c[first..].iter().all(|&x| x == Class::Second) {
            Some((first, c.len() - first))
        } else {
            None
        }
    }

    /// Spanning subgraph keeping only `edges`. Every edge must be in `self`.
    pub fn spanning_subgraph(&self, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let n = self.vertex_count();
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!(
                    "edge {u}-{v} is not in the host graph"
                )));
            }
            b.add_edge(u, v)?;
        }
        b.build()
    }

    /// Spanning subgraph with every edge for which `keep` is false removed.
    pub fn filter_edges(&self, mut keep: impl FnMut(Edge) -> bool) -> Graph {
        let edges: Vec<Edge> = self.edges().filter(|&e| keep(e)).collect();
        Graph::from_sorted_unique(self.vertex_count(), &edges)
    }

    /// Same graph on `n >= vertex_count()` vertices; extra vertices are isolated.
    pub fn padded(&self, n: usize) -> Result<Graph> {
        if n < self.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "cannot pad a {}-vertex graph to {n} vertices",
                self.vertex_count()
            )));
        }
        let edges = self.edge_list();
        Ok(Graph::from_sorted_unique(n, &edges))
    }

    /// Relabels vertices through `perm` (vertex `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[u32]) -> Result<Graph> {
        if perm.len() != self.vertex_count() {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        Graph::from_edges(
            self.vertex_count(),
            self.edges()
                .map(|(u, v)| (perm[u as usize], perm[v as usize])),
        )
    }
}

impl EdgeOracle for Graph {
    fn vertex_count(&self) -> usize {
        Graph::vertex_count(self)
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        Graph::has_edge(self, u, v)
    }
}

/// Relabeled disjoint union; vertices of `gs[i]` follow those of `gs[i-1]`.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let n: usize = gs.iter().map(Graph::vertex_count).sum();
    let mut edges = Vec::with_capacity(gs.iter().map(Graph::edge_count).sum());
    let mut offset = 0u32;
    for g in gs {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.vertex_count() as u32;
    }
    Graph::from_sorted_unique(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn builder_rejects_malformed_input() {
        let mut b = GraphBuilder::new(3);
        assert!(matches!(
            b.add_edge(0, 3),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(b.add_edge(1, 1), Err(Error::SelfLoop(1))));
        b.add_edge(0, 1).unwrap();
        b.add_edge(1, 0).unwrap();
        assert!(matches!(b.build(), Err(Error::DuplicateEdge(0, 1))));

        let mut b = GraphBuilder::new(4).bipartition(2);
        b.add_edge(0, 2).unwrap();
        b.add_edge(2, 3).unwrap();
        assert!(matches!(b.build(), Err(Error::NotBipartite(2, 3))));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, [(3, 4), (0, 4), (2, 0), (4, 1)]).unwrap();
        assert_eq!(g.neighbors(4), &[0, 1, 3]);
        assert_eq!(g.neighbors(0), &[2, 4]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
        assert_eq!(g.edge_list(), vec![(0, 2), (0, 4), (1, 4), (3, 4)]);
        assert_eq!(g.max_degree(), 3);
        assert!(!g.has_edge(0, 9));
    }

    #[test]
    fn disjoint_union_examples() {
        let c8 = generators::cycle(8);
        let u = disjoint_union(&[c8.clone(), c8]);
        assert_eq!(u.vertex_count(), 16);
        assert_eq!(girth(&u), Girth::Finite(8));

        let u = disjoint_union(&[generators::path(5), generators::cycle(12)]);
        assert_eq!(girth(&u), Girth::Finite(12));

        let u = disjoint_union(&[]);
        assert_eq!(u.vertex_count(), 0);
        assert_eq!(girth(&u), Girth::Infinite);
    }

    #[test]
    fn girth_ordering() {
        assert!(Girth::Finite(100) < Girth::Infinite);
        assert!(Girth::Infinite.exceeds(1_000));
        assert!(Girth::Finite(8).exceeds(7));
        assert!(!Girth::Finite(8).exceeds(8));
        assert!(Girth::Finite(8).at_least(8));
    }
}
