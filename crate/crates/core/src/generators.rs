//! Small named graphs and seeded random graph models.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphBuilder};

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))).expect("cycle is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i))).expect("path is simple")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as u32).map(|i| (0, i))).expect("star is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph is simple")
}

/// K_{a,b} with the first `a` vertices on one side.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut builder = GraphBuilder::with_capacity(a + b, a * b).bipartition(a);
    for u in 0..a as u32 {
        for v in 0..b as u32 {
            builder.add_edge(u, a as u32 + v).expect("in range");
        }
    }
    builder.build().expect("complete bipartite graph is simple")
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i ~ i + 5.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges).expect("Petersen graph is simple")
}

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("G(n,p) is simple")
}

/// Uniform-ish random `d`-regular simple graph.
///
/// Pairs random free half-edges, refusing loops and repeated edges, and
/// restarts when the last few half-edges cannot be matched.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "no {d}-regular graph on {n} vertices"
        )));
    }
    const RESTARTS: usize = 100;
    'restart: for _ in 0..RESTARTS {
        let mut stubs: Vec<u32> = (0..n as u32)
            .flat_map(|v| std::iter::repeat_n(v, d))
            .collect();
        stubs.shuffle(rng);
        let mut adjacency: Vec<Vec<u32>> = vec![Vec::with_capacity(d); n];
        let mut edges: Vec<Edge> = Vec::with_capacity(n * d / 2);
        while !stubs.is_empty() {
            let len = stubs.len();
            let mut paired = false;
            for _ in 0..50 + len {
                let i = rng.gen_range(0..len);
                let j = rng.gen_range(0..len);
                let (u, v) = (stubs[i], stubs[j]);
                if i == j || u == v || adjacency[u as usize].contains(&v) {
                    continue;
                }
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
                edges.push((u, v));
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                paired = true;
                break;
            }
            if !paired {
                continue 'restart;
            }
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::InvalidArgument(format!(
        "failed to sample a {d}-regular graph on {n} vertices"
    )))
}

/// Random labelled tree by attaching each vertex to an earlier one.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let edges = (1..n as u32).map(|v| (rng.gen_range(0..v), v));
    Graph::from_edges(n, edges).expect("tree is simple")
}
