use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use super::{Girth, Graph};

const UNSEEN: u32 = u32::MAX;

struct Scratch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![UNSEEN; n],
            parent: vec![UNSEEN; n],
            queue: Vec::new(),
        }
    }
}

/// Exact girth by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    match shortest_cycle_at_most(g, u32::MAX - 1) {
        Some(len) => Girth::Finite(len),
        None => Girth::Infinite,
    }
}

/// True iff `g` has no cycle of length `<= len`.
pub fn girth_exceeds(g: &Graph, len: u32) -> bool {
    shortest_cycle_at_most(g, len).is_none()
}

/// Length of a shortest cycle if it is at most `limit`.
///
/// Each search stops at depth `ceil((limit + 1) / 2)` or as soon as it can
/// no longer beat the best cycle found by any source.
pub fn shortest_cycle_at_most(g: &Graph, limit: u32) -> Option<u32> {
    let n = g.vertex_count();
    // Best candidate so far, exclusive: we look for cycles shorter than this.
    let best = AtomicU32::new(limit.saturating_add(1));
    (0..n as u32)
        .into_par_iter()
        .filter(|&s| g.degree(s) >= 2)
        .for_each_init(
            || Scratch::new(n),
            |scratch, s| {
                let found = bfs_shortest_closure(g, s, best.load(Ordering::Relaxed), scratch);
                if let Some(len) = found {
                    best.fetch_min(len, Ordering::Relaxed);
                }
            },
        );
    let b = best.into_inner();
    if b <= limit {
        Some(b)
    } else {
        None
    }
}

/// Shortest closed walk through a non-tree edge of the BFS tree rooted at
/// `s`, if shorter than `bound`. Minimizing over all roots gives the girth.
fn bfs_shortest_closure(g: &Graph, s: u32, mut bound: u32, scratch: &mut Scratch) -> Option<u32> {
    let Scratch {
        dist,
        parent,
        queue,
    } = scratch;
    queue.clear();
    queue.push(s);
    dist[s as usize] = 0;
    let mut found = None;
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        // Any closure found from here has length at least 2 * du.
        if 2 * du >= bound {
            break;
        }
        for &w in g.neighbors(u) {
            let dw = dist[w as usize];
            if dw == UNSEEN {
                dist[w as usize] = du + 1;
                parent[w as usize] = u;
                queue.push(w);
            } else if parent[u as usize] != w {
                let len = du + dw + 1;
                if len < bound {
                    bound = len;
                    found = Some(len);
                }
            }
        }
    }
    for &v in queue.iter() {
        dist[v as usize] = UNSEEN;
        parent[v as usize] = UNSEEN;
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    /// Brute force: the shortest cycle through edge uv is 1 + dist(u, v) in
    /// the graph with uv removed.
    fn girth_by_edge_removal(g: &Graph) -> Girth {
        let mut best = Girth::Infinite;
        for (u, v) in g.edges() {
            let h = g.filter_edges(|e| e != (u, v));
            let mut dist = vec![u32::MAX; h.vertex_count()];
            let mut q = std::collections::VecDeque::from([u]);
            dist[u as usize] = 0;
            while let Some(x) = q.pop_front() {
                for &y in h.neighbors(x) {
                    if dist[y as usize] == u32::MAX {
                        dist[y as usize] = dist[x as usize] + 1;
                        q.push_back(y);
                    }
                }
            }
            if dist[v as usize] != u32::MAX {
                best = best.min(Girth::Finite(dist[v as usize] + 1));
            }
        }
        best
    }

    #[test]
    fn examples() {
        assert_eq!(girth(&generators::cycle(8)), Girth::Finite(8));
        assert_eq!(girth(&generators::path(10)), Girth::Infinite);
        assert_eq!(girth(&generators::star(6)), Girth::Infinite);
        assert_eq!(girth(&generators::petersen()), Girth::Finite(5));
        assert_eq!(girth(&generators::complete(4)), Girth::Finite(3));
        assert_eq!(
            girth(&generators::complete_bipartite(3, 3)),
            Girth::Finite(4)
        );
        assert_eq!(girth(&Graph::empty(0)), Girth::Infinite);
    }

    #[test]
    fn capped_queries() {
        let c9 = generators::cycle(9);
        assert_eq!(shortest_cycle_at_most(&c9, 8), None);
        assert_eq!(shortest_cycle_at_most(&c9, 9), Some(9));
        assert!(girth_exceeds(&c9, 8));
        assert!(!girth_exceeds(&c9, 9));
        let p = generators::petersen();
        assert!(girth_exceeds(&p, 4));
        assert!(!girth_exceeds(&p, 5));
    }

    #[test]
    fn agrees_with_edge_removal_oracle() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for i in 0..200 {
            let n = 4 + i % 12;
            let p = 0.1 + (i % 7) as f64 * 0.05;
            let g = generators::gnp(n, p, &mut rng);
            assert_eq!(
                girth(&g),
                girth_by_edge_removal(&g),
                "graph {:?}",
                g.edge_list()
            );
        }
    }
}
