use std::collections::BTreeMap;

use degree_ramsey::generators;
use degree_ramsey::graph::{
    girth, has_cycle_of_length, is_locally_injective_hom, Edge, Graph, Homomorphism,
};
use degree_ramsey::manifest::{load_partition, write_partition};
use degree_ramsey::partition::{
    cover_complete, CompleteCover, EdgePartition, PaletteLookup, Target,
};
use degree_ramsey::rainbow::{decompose, pullback_partition, rainbow_color, DecompositionConfig};
use degree_ramsey::random_cover::{cover_random, required_copies, SeedGraph};
use degree_ramsey::verify::verify_partition;
use degree_ramsey::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    generators::gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn edge_multiset(p: &EdgePartition) -> BTreeMap<Edge, usize> {
    let mut m = BTreeMap::new();
    for part in &p.parts {
        for &e in &part.edges {
            *m.entry(e).or_insert(0) += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rainbow_invariants(n in 2usize..80, p in 0.05f64..0.6, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        prop_assume!(g.max_degree() >= 2);
        let mut cfg = DecompositionConfig::new(6).unwrap().with_seed(seed);
        cfg.retention = 0.05;
        match rainbow_color(&g, &cfg) {
            Ok(rc) => {
                prop_assert!(rc.palette_size <= 200 * g.max_degree());
                for (u, v) in rc.retained.edges() {
                    prop_assert!(g.has_edge(u, v));
                    prop_assert_ne!(rc.color[u as usize], rc.color[v as usize]);
                }
                for v in g.vertices() {
                    let mut cs: Vec<u32> = rc.retained.neighbors(v).iter().map(|&w| rc.color[w as usize]).collect();
                    let k = cs.len();
                    cs.sort_unstable();
                    cs.dedup();
                    prop_assert_eq!(cs.len(), k);
                    prop_assert!(rc.retained.degree(v) as f64 >= 0.05 * g.degree(v) as f64);
                }
            }
            Err(Error::RetentionFailed { ratio, .. }) => prop_assert!(ratio < 0.05),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn pullback_transfers_girth(n in 10usize..120, d in 2usize..8, seed in any::<u64>()) {
        prop_assume!(n * d % 2 == 0 && d < n);
        let g = generators::random_regular(n, d, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut cfg = DecompositionConfig::new(6).unwrap().with_seed(seed);
        cfg.color_multiplier = 10;
        let rc = rainbow_color(&g, &cfg).unwrap();
        let palette = CompleteCover::new(rc.palette_size, 8).unwrap();
        let p = pullback_partition(&g, &rc, &palette, 6).unwrap();
        let (explicit, _) = cover_complete(rc.palette_size, 8).unwrap();
        let phi = Homomorphism::new(rc.color.clone());
        let mut total = 0;
        for (i, part) in p.parts.iter().enumerate() {
            let h = p.part_graph(i).unwrap();
            let gi_edges = &explicit.parts.iter().find(|x| x.id == part.id).unwrap().edges;
            let gi = Graph::from_edges(rc.palette_size, gi_edges.iter().copied()).unwrap();
            prop_assert!(is_locally_injective_hom(&h, &gi, &phi));
            prop_assert!(girth(&h) >= girth(&gi));
            prop_assert!(girth(&h).at_least(palette.girth_bound()));
            total += h.edge_count();
        }
        prop_assert_eq!(total, rc.retained.edge_count());
    }

    #[test]
    fn decompose_is_exact_and_cycle_free(n in 2usize..90, p in 0.02f64..0.5, seed in any::<u64>(), ten in any::<bool>()) {
        let g = gnp(n, p, seed);
        let cycle = if ten { 10 } else { 6 };
        let mut cfg = DecompositionConfig::new(cycle).unwrap().with_seed(seed);
        cfg.color_multiplier = 8;
        cfg.retention = 0.05;
        let r = match decompose(&g, &cfg) {
            Ok(r) => r,
            // Sparse random graphs can violate the coloring precondition.
            Err(Error::DecompositionAborted { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let m = edge_multiset(&r.partition);
        prop_assert!(m.values().all(|&c| c == 1));
        prop_assert_eq!(m.keys().copied().collect::<Vec<_>>(), g.edge_list());
        for i in 0..r.partition.parts.len() {
            prop_assert!(!has_cycle_of_length(&r.partition.part_graph(i).unwrap(), cycle).unwrap());
        }
        for round in &r.rounds {
            prop_assert!(round.delta_after <= round.core_delta);
        }
    }

    #[test]
    fn random_cover_partitions_when_successful(n in 10usize..40, c in 0.5f64..6.0, seed in any::<u64>()) {
        let sg = SeedGraph::new(generators::petersen(), 5, "petersen").unwrap();
        let out = cover_random(n, &sg, c, seed).unwrap();
        prop_assert_eq!(out.copy_count, required_copies(n, 15, c).unwrap());
        prop_assert_eq!(out.coverage.iter().map(|&x| x as usize).sum::<usize>(), out.copy_count * 15);
        let p = out.partition();
        prop_assert_eq!(p.edge_total() + out.uncovered.len(), n * (n - 1) / 2);
        prop_assert_eq!(verify_partition(&p, Target::Girth(5)).exact, out.success());
        for i in 0..p.parts.len() {
            prop_assert!(girth(&p.part_graph(i).unwrap()).at_least(5));
        }
    }

    #[test]
    fn dropping_an_edge_breaks_exactness(n in 8usize..60, which in any::<prop::sample::Index>()) {
        let (mut p, _) = cover_complete(n, 8).unwrap();
        prop_assert!(verify_partition(&p, Target::Girth(8)).passed());
        let i = which.index(p.parts.len());
        p.parts[i].edges.pop();
        prop_assert!(!verify_partition(&p, Target::Girth(8)).passed());
    }

    #[test]
    fn manifest_round_trip(n in 2usize..70, twelve in any::<bool>()) {
        let dir = tempfile::tempdir().unwrap();
        let (p, _) = cover_complete(n, if twelve { 12 } else { 8 }).unwrap();
        let loaded = load_partition(&write_partition(dir.path(), &p, None).unwrap()).unwrap();
        prop_assert_eq!(&loaded.partition.parts, &p.parts);
        prop_assert_eq!(&loaded.partition.host, &p.host);
        prop_assert!(verify_partition(&loaded.partition, p.target).passed());
    }

    #[test]
    fn doubling_seed_edges_halves_copies(n in 2usize..500, m in 1usize..1000, c in 0.1f64..20.0) {
        let t = required_copies(n, m, c).unwrap();
        let half = required_copies(n, 2 * m, c).unwrap();
        prop_assert!(half <= t.div_ceil(2) && t <= 2 * half);
    }
}

#[test]
fn success_rate_grows_with_the_safety_constant() {
    let sg = SeedGraph::new(generators::petersen(), 5, "petersen").unwrap();
    let rates: Vec<usize> = [0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&c| {
            (0..100)
                .filter(|&t| cover_random(20, &sg, c, 10_000 + t).unwrap().success())
                .count()
        })
        .collect();
    // Allow 5 trials of sampling noise between neighbors on the grid.
    for w in rates.windows(2) {
        assert!(w[1] + 5 >= w[0], "{rates:?}");
    }
    assert!(rates[0] < rates[4], "{rates:?}");
}

#[test]
fn coverage_mean_matches_expectation() {
    let sg = SeedGraph::new(generators::petersen(), 5, "petersen").unwrap();
    let out = cover_random(40, &sg, 9.0, 1).unwrap();
    let rel = (out.mean_coverage() - out.expected_coverage()).abs() / out.expected_coverage();
    assert!(rel < 0.05);
    // Per-pair counts concentrate around the mean too.
    let mean = out.mean_coverage();
    let within = out
        .coverage
        .iter()
        .filter(|&&x| (x as f64 - mean).abs() <= 0.5 * mean)
        .count();
    assert!(within as f64 >= 0.95 * out.coverage.len() as f64);
}
