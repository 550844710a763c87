use std::collections::BTreeSet;

use super::{Edge, Graph};
use crate::error::{Error, Result};

/// A vertex elimination order together with each vertex's number of
/// neighbors that come later in the order (its right degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder {
    /// Vertices in elimination order.
    pub order: Vec<u32>,
    /// Indexed by vertex id.
    pub right_degree: Vec<u32>,
}

impl DegeneracyOrder {
    /// Largest right degree; the degeneracy when the order comes from a
    /// full minimum-degree peel.
    pub fn degeneracy(&self) -> u32 {
        self.right_degree.iter().copied().max().unwrap_or(0)
    }
}

/// Result of [`degeneracy_peel`].
#[derive(Clone, Debug)]
pub struct Peel {
    /// Spanning subgraph left after peeling; every vertex with an edge has
    /// degree >= threshold.
    pub core: Graph,
    /// Spanning subgraph of the remaining edges.
    pub shell: Graph,
    /// Removal order followed by the core vertices; right degrees are taken
    /// in `shell`.
    pub order: DegeneracyOrder,
}

/// Minimum-degree bucket queue with smallest-id tie breaking.
struct BucketQueue {
    buckets: Vec<BTreeSet<u32>>,
    degree: Vec<usize>,
    removed: Vec<bool>,
    low: usize,
}

impl BucketQueue {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        let mut buckets = vec![BTreeSet::new(); g.max_degree() + 1];
        for v in 0..n {
            buckets[degree[v]].insert(v as u32);
        }
        BucketQueue {
            buckets,
            degree,
            removed: vec![false; n],
            low: 0,
        }
    }

    fn peek(&mut self) -> Option<(u32, usize)> {
        while self.low < self.buckets.len() {
            if let Some(&v) = self.buckets[self.low].first() {
                return Some((v, self.low));
            }
            self.low += 1;
        }
        None
    }

    fn remove(&mut self, g: &Graph, v: u32) {
        let d = self.degree[v as usize];
        self.buckets[d].remove(&v);
        self.removed[v as usize] = true;
        for &w in g.neighbors(v) {
            if !self.removed[w as usize] {
                let dw = self.degree[w as usize];
                self.buckets[dw].remove(&w);
                self.buckets[dw - 1].insert(w);
                self.degree[w as usize] = dw - 1;
                self.low = self.low.min(dw - 1);
            }
        }
    }
}

/// Full minimum-degree elimination order of `g`.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let mut queue = BucketQueue::new(g);
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut right_degree = vec![0u32; g.vertex_count()];
    while let Some((v, d)) = queue.peek() {
        right_degree[v as usize] = d as u32;
        order.push(v);
        queue.remove(g, v);
    }
    DegeneracyOrder {
        order,
        right_degree,
    }
}

/// Repeatedly deletes a vertex of current degree `< threshold`.
pub fn degeneracy_peel(g: &Graph, threshold: usize) -> Peel {
    let n = g.vertex_count();
    let mut queue = BucketQueue::new(g);
    let mut order = Vec::with_capacity(n);
    let mut right_degree = vec![0u32; n];
    while let Some((v, d)) = queue.peek() {
        if d >= threshold {
            break;
        }
        right_degree[v as usize] = d as u32;
        order.push(v);
        queue.remove(g, v);
    }
    let removed = queue.removed;
    order.extend(g.vertices().filter(|&v| !removed[v as usize]));
    let core = g.filter_edges(|(u, v)| !removed[u as usize] && !removed[v as usize]);
    let shell = g.filter_edges(|(u, v)| removed[u as usize] || removed[v as usize]);
    Peel {
        core,
        shell,
        order: DegeneracyOrder {
            order,
            right_degree,
        },
    }
}

/// Splits `g` into `order.degeneracy()` edge-disjoint forests.
///
/// An edge `uv` with `u` earlier in the order goes to forest `j` when `v` is
/// the `j`-th later neighbor of `u` (by id). Each vertex then has at most
/// one later neighbor per forest, so no forest contains a cycle.
pub fn forest_decompose(g: &Graph, order: &DegeneracyOrder) -> Result<Vec<Graph>> {
    let n = g.vertex_count();
    if order.order.len() != n || order.right_degree.len() != n {
        return Err(Error::InvalidOrder(format!(
            "order covers {} vertices, graph has {n}",
            order.order.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.order.iter().enumerate() {
        if v as usize >= n || position[v as usize] != usize::MAX {
            return Err(Error::InvalidOrder(format!(
                "vertex {v} repeated or out of range"
            )));
        }
        position[v as usize] = i;
    }
    let mut forests: Vec<Vec<Edge>> = vec![Vec::new(); order.degeneracy() as usize];
    for u in g.vertices() {
        let later = g
            .neighbors(u)
            .iter()
            .filter(|&&w| position[w as usize] > position[u as usize]);
        let mut count = 0u32;
        for &w in later {
            if count >= order.right_degree[u as usize] {
                return Err(Error::InvalidOrder(format!(
                    "vertex {u} has more than {} later neighbors",
                    order.right_degree[u as usize]
                )));
            }
            forests[count as usize].push(super::normalize(u, w));
            count += 1;
        }
        if count != order.right_degree[u as usize] {
            return Err(Error::InvalidOrder(format!(
                "vertex {u}: recorded right degree {} but {count} later neighbors",
                order.right_degree[u as usize]
            )));
        }
    }
    forests
        .into_iter()
        .filter(|f| !f.is_empty())
        .map(|edges| Graph::from_edges(n, edges))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::{girth, Girth};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn is_forest(g: &Graph) -> bool {
        girth(g) == Girth::Infinite
    }

    #[test]
    fn tree_peels_completely() {
        let t = generators::path(7);
        let p = degeneracy_peel(&t, 2);
        assert_eq!(p.core.edge_count(), 0);
        assert_eq!(p.shell, t);
        let forests = forest_decompose(&p.shell, &p.order).unwrap();
        assert_eq!(forests.len(), 1);
        assert_eq!(forests[0], t);
    }

    #[test]
    fn complete_graph_is_its_own_core() {
        let k5 = generators::complete(5);
        let p = degeneracy_peel(&k5, 4);
        assert_eq!(p.core, k5);
        assert_eq!(p.shell.edge_count(), 0);
        assert!(forest_decompose(&p.shell, &p.order).unwrap().is_empty());
    }

    #[test]
    fn pendant_edge_is_shell() {
        // C4 on 0..4 plus pendant vertex 4 attached to 0.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let p = degeneracy_peel(&g, 2);
        assert_eq!(p.core.edge_list(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(p.shell.edge_list(), vec![(0, 4)]);
        assert_eq!(p.order.order[0], 4);
        assert_eq!(p.order.right_degree[4], 1);
    }

    #[test]
    fn k4_splits_into_three_forests() {
        let k4 = generators::complete(4);
        let order = degeneracy_order(&k4);
        assert_eq!(order.degeneracy(), 3);
        let forests = forest_decompose(&k4, &order).unwrap();
        assert_eq!(forests.len(), 3);
        let mut all: Vec<Edge> = forests.iter().flat_map(|f| f.edge_list()).collect();
        all.sort_unstable();
        assert_eq!(all, k4.edge_list());
        assert!(forests.iter().all(is_forest));
    }

    #[test]
    fn empty_graph_has_no_forests() {
        let g = Graph::empty(6);
        assert!(forest_decompose(&g, &degeneracy_order(&g))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn invalid_orders_rejected() {
        let c5 = generators::cycle(5);
        let mut order = degeneracy_order(&c5);
        order.order[1] = order.order[0];
        assert!(matches!(
            forest_decompose(&c5, &order),
            Err(Error::InvalidOrder(_))
        ));

        let mut order = degeneracy_order(&c5);
        order.right_degree[order.order[0] as usize] = 0;
        assert!(matches!(
            forest_decompose(&c5, &order),
            Err(Error::InvalidOrder(_))
        ));

        let order = degeneracy_order(&generators::cycle(4));
        assert!(forest_decompose(&c5, &order).is_err());
    }

    #[test]
    fn degeneracy_of_known_graphs() {
        assert_eq!(degeneracy_order(&generators::petersen()).degeneracy(), 3);
        assert_eq!(degeneracy_order(&generators::cycle(10)).degeneracy(), 2);
        assert_eq!(
            degeneracy_order(&generators::complete_bipartite(3, 5)).degeneracy(),
            3
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn peel_and_forests_partition_edges(seed in any::<u64>(), n in 2usize..40, p in 0.05f64..0.6, t in 0usize..8) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = generators::gnp(n, p, &mut rng);
            let peel = degeneracy_peel(&g, t);

            let mut union: Vec<Edge> = peel.core.edges().chain(peel.shell.edges()).collect();
            union.sort_unstable();
            prop_assert_eq!(&union, &g.edge_list());
            for v in peel.core.vertices() {
                let d = peel.core.degree(v);
                prop_assert!(d == 0 || d >= t);
            }
            prop_assert!(peel.order.degeneracy() < t.max(1) as u32);

            let forests = forest_decompose(&peel.shell, &peel.order).unwrap();
            prop_assert!(forests.len() <= t.saturating_sub(1));
            let mut union: Vec<Edge> = forests.iter().flat_map(|f| f.edge_list()).collect();
            union.sort_unstable();
            prop_assert_eq!(union, peel.shell.edge_list());
            prop_assert!(forests.iter().all(is_forest));

            let full = degeneracy_order(&g);
            let forests = forest_decompose(&g, &full).unwrap();
            prop_assert!(forests.len() as u32 <= full.degeneracy());
            prop_assert!(forests.iter().all(is_forest));
        }
    }
}
