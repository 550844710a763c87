//! Decomposition of a bounded-degree graph into parts without a cycle of
//! length 6 (or 10).
//!
//! Each round peels low-degree vertices into forests, then colors the
//! remaining core with a proper rainbow coloring (proper on a retained
//! spanning subgraph and injective on every retained neighborhood). The
//! coloring is a locally injective homomorphism from the retained graph
//! into the complete graph on the palette, so pulling back a high-girth
//! partition of that complete graph yields high-girth parts. Retained
//! edges are removed and the next round starts on what is left.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    degeneracy_peel, forest_decompose, is_locally_injective_hom, Edge, Graph, Homomorphism,
};
use crate::partition::{
    CompleteCover, EdgePartition, Host, PaletteLookup, PalettePart, Part, Target,
};
use crate::verify::{verify_partition, VerificationReport};

/// `max(2, ceil(ln(delta)^2))`.
pub fn default_threshold(delta: usize) -> usize {
    if delta < 2 {
        return 2;
    }
    let l = (delta as f64).ln();
    ((l * l).ceil() as usize).max(2)
}

#[derive(Clone, Copy, Debug)]
pub struct DecompositionConfig {
    /// 6 or 10.
    pub target_cycle: u32,
    /// Palette size is `color_multiplier * max_degree`.
    pub color_multiplier: usize,
    /// Every vertex keeps at least this fraction of its degree.
    pub retention: f64,
    /// Expected per-round maximum degree decay; checked, not enforced.
    pub decay: f64,
    pub threshold_fn: fn(usize) -> usize,
    pub rng_seed: u64,
    pub max_retries: u32,
}

impl DecompositionConfig {
    pub fn new(target_cycle: u32) -> Result<Self> {
        let cfg = DecompositionConfig {
            target_cycle,
            color_multiplier: 200,
            retention: 0.1,
            decay: 0.9,
            threshold_fn: default_threshold,
            rng_seed: 0,
            max_retries: 20,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.target_cycle, 6 | 10) {
            return Err(Error::InvalidArgument(format!(
                "target cycle must be 6 or 10, got {}",
                self.target_cycle
            )));
        }
        if !(self.retention > 0.0 && self.retention < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "retention {} not in (0, 1)",
                self.retention
            )));
        }
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "decay {} not in (0, 1]",
                self.decay
            )));
        }
        if self.color_multiplier < 1 {
            return Err(Error::InvalidArgument(
                "color multiplier must be at least 1".into(),
            ));
        }
        if self.max_retries < 1 {
            return Err(Error::InvalidArgument(
                "max_retries must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Girth of the palette partition: 8 rules out C6, 12 rules out C10.
    pub fn palette_girth(&self) -> u32 {
        if self.target_cycle == 6 {
            8
        } else {
            12
        }
    }
}

/// A vertex coloring with the spanning subgraph on which it is a proper
/// rainbow coloring.
#[derive(Clone, Debug)]
pub struct RainbowColoring {
    pub host: Graph,
    pub retained: Graph,
    pub color: Vec<u32>,
    pub palette_size: usize,
    /// 1-based attempt that succeeded.
    pub attempts: u32,
}

impl RainbowColoring {
    pub fn is_proper(&self) -> bool {
        self.retained
            .edges()
            .all(|(u, v)| self.color[u as usize] != self.color[v as usize])
    }

    pub fn is_neighborhood_injective(&self) -> bool {
        let mut seen = Vec::new();
        self.retained.vertices().all(|v| {
            seen.clear();
            seen.extend(
                self.retained
                    .neighbors(v)
                    .iter()
                    .map(|&w| self.color[w as usize]),
            );
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn palette_within(&self, multiplier: usize) -> bool {
        self.color.iter().all(|&c| (c as usize) < self.palette_size)
            && self.palette_size <= multiplier * self.host.max_degree().max(1)
    }

    /// Vertex with the smallest `d_H(v) / d_G(v)` among vertices with an
    /// edge, and that ratio.
    pub fn worst_retention(&self) -> Option<(u32, f64)> {
        worst_retention(&self.host, &self.retained)
    }

    pub fn retention_holds(&self, retention: f64) -> bool {
        self.host
            .vertices()
            .all(|v| self.retained.degree(v) as f64 >= retention * self.host.degree(v) as f64)
    }

    /// Every invariant of the coloring, with a description of the first
    /// violated one.
    pub fn check(&self, multiplier: usize, retention: f64) -> std::result::Result<(), String> {
        if self
            .retained
            .edges()
            .any(|(u, v)| !self.host.has_edge(u, v))
        {
            return Err("retained graph is not a subgraph of the host".into());
        }
        if !self.is_proper() {
            return Err("coloring is not proper on the retained graph".into());
        }
        if !self.is_neighborhood_injective() {
            return Err("a retained neighborhood repeats a color".into());
        }
        if !self.palette_within(multiplier) {
            return Err(format!(
                "palette {} exceeds {multiplier} * max degree",
                self.palette_size
            ));
        }
        if !self.retention_holds(retention) {
            let (v, r) = self.worst_retention().unwrap_or((0, 0.0));
            return Err(format!("vertex {v} keeps only {r:.4} of its degree"));
        }
        Ok(())
    }
}

fn worst_retention(host: &Graph, retained: &Graph) -> Option<(u32, f64)> {
    host.vertices()
        .filter(|&v| host.degree(v) > 0)
        .map(|v| (v, retained.degree(v) as f64 / host.degree(v) as f64))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Random proper rainbow coloring of `g` retaining the configured fraction
/// of every degree.
///
/// Colors are uniform over `color_multiplier * max_degree` colors.
/// Monochromatic edges are dropped; where a vertex sees a color on several
/// neighbors, only the edge to the lowest-id such neighbor survives.
pub fn rainbow_color(g: &Graph, cfg: &DecompositionConfig) -> Result<RainbowColoring> {
    rainbow_color_in_round(g, cfg, 0)
}

fn rainbow_color_in_round(
    g: &Graph,
    cfg: &DecompositionConfig,
    round: u32,
) -> Result<RainbowColoring> {
    cfg.validate()?;
    let palette_size = cfg.color_multiplier * g.max_degree().max(1);
    let mut worst = (0u32, 1.0f64);
    for attempt in 0..cfg.max_retries {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(((round as u64) << 32) | attempt as u64);
        let color: Vec<u32> = g
            .vertices()
            .map(|_| rng.gen_range(0..palette_size as u32))
            .collect();
        let retained = prune_conflicts(g, &color);
        let rc = RainbowColoring {
            host: g.clone(),
            retained,
            color,
            palette_size,
            attempts: attempt + 1,
        };
        if rc.retention_holds(cfg.retention) {
            return Ok(rc);
        }
        if let Some((v, r)) = rc.worst_retention() {
            if r < worst.1 {
                worst = (v, r);
            }
        }
    }
    Err(Error::RetentionFailed {
        retries: cfg.max_retries,
        vertex: worst.0,
        ratio: worst.1,
    })
}

/// Keeps edge `uv` iff the colors differ, `u` is the lowest-id neighbor of
/// `v` with color `color[u]`, and symmetrically.
fn prune_conflicts(g: &Graph, color: &[u32]) -> Graph {
    // first[v]: for each color among v's properly colored neighbors, the
    // lowest neighbor id. Neighbor lists are sorted, so first seen wins.
    let first: Vec<HashMap<u32, u32>> = g
        .vertices()
        .map(|v| {
            let mut m = HashMap::with_capacity(g.degree(v));
            for &w in g.neighbors(v) {
                if color[w as usize] != color[v as usize] {
                    m.entry(color[w as usize]).or_insert(w);
                }
            }
            m
        })
        .collect();
    g.filter_edges(|(u, v)| {
        let (cu, cv) = (color[u as usize], color[v as usize]);
        cu != cv && first[v as usize].get(&cu) == Some(&u) && first[u as usize].get(&cv) == Some(&v)
    })
}

/// Splits the retained graph of `rc` by the palette part containing each
/// edge's color pair, then checks that the coloring is a locally injective
/// homomorphism from every part into its palette part.
///
/// Parts are returned with their palette part ids and claim the palette's
/// girth bound.
pub fn pullback_partition(
    g: &Graph,
    rc: &RainbowColoring,
    palette: &dyn PaletteLookup,
    target_cycle: u32,
) -> Result<EdgePartition> {
    if palette.palette_size() != rc.palette_size {
        return Err(Error::PaletteMismatch {
            expected: rc.palette_size,
            found: palette.palette_size(),
        });
    }
    if g.vertex_count() != rc.retained.vertex_count() {
        return Err(Error::InvalidArgument(
            "coloring does not belong to this graph".into(),
        ));
    }
    if palette.girth_bound() <= target_cycle {
        return Err(Error::InvalidArgument(format!(
            "palette girth {} does not exclude cycles of length {target_cycle}",
            palette.girth_bound()
        )));
    }
    let mut buckets: HashMap<usize, Vec<Edge>> = HashMap::new();
    for (u, v) in rc.retained.edges() {
        let part = palette
            .part_of(rc.color[u as usize], rc.color[v as usize])
            .ok_or_else(|| {
                Error::CertificateFailed(format!("retained edge {u}-{v} is monochromatic"))
            })?;
        buckets.entry(part).or_default().push((u, v));
    }
    let mut parts: Vec<Part> = buckets
        .into_iter()
        .map(|(id, edges)| Part { id, edges })
        .collect();
    parts.sort_unstable_by_key(|p| p.id);

    let n = g.vertex_count();
    let phi = Homomorphism::new(rc.color.clone());
    parts.par_iter().try_for_each(|part| {
        let h = Graph::from_edges(n, part.edges.iter().copied())?;
        let target = PalettePart {
            lookup: palette,
            part: part.id,
        };
        if is_locally_injective_hom(&h, &target, &phi) {
            Ok(())
        } else {
            Err(Error::CertificateFailed(format!(
                "coloring is not a locally injective homomorphism on part {}",
                part.id
            )))
        }
    })?;

    Ok(EdgePartition {
        host: Host::Explicit(rc.retained.clone()),
        target: Target::Girth(palette.girth_bound()),
        parts,
        declared_parts: palette.part_count(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RoundLog {
    pub round: usize,
    pub delta_before: usize,
    pub core_edges: usize,
    pub shell_edges: usize,
    pub forests: usize,
    pub core_delta: usize,
    pub palette_size: usize,
    pub palette_parts: usize,
    pub parts_used: usize,
    pub retained_edges: usize,
    pub attempts: u32,
    pub delta_after: usize,
    /// `delta_after <= ceil(decay * core_delta)`.
    pub decay_ok: bool,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub partition: EdgePartition,
    pub rounds: Vec<RoundLog>,
    /// Forests from the last peel, after the final coloring round.
    pub closing_forests: usize,
    /// Palette parts of every round (empty or not) plus all forests.
    pub total_parts: usize,
    pub threshold: usize,
    pub report: VerificationReport,
}

impl DecompositionResult {
    pub fn nonempty_parts(&self) -> usize {
        self.partition.parts.len()
    }

    pub fn round_log_text(&self) -> String {
        rounds_text(&self.rounds, self.threshold)
    }
}

fn rounds_text(rounds: &[RoundLog], threshold: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "threshold: {threshold} (ceil(ln(delta)^2), natural log, min 2)"
    );
    for r in rounds {
        let _ = writeln!(
            s,
            "round {}: delta_before={} core_edges={} shell_edges={} forests={} core_delta={} palette={} \
             palette_parts={} parts_used={} retained={} attempts={} delta_after={} decay_ok={}",
            r.round,
            r.delta_before,
            r.core_edges,
            r.shell_edges,
            r.forests,
            r.core_delta,
            r.palette_size,
            r.palette_parts,
            r.parts_used,
            r.retained_edges,
            r.attempts,
            r.delta_after,
            r.decay_ok
        );
    }
    s
}

/// Partitions the edges of `g` into parts with no cycle of length
/// `cfg.target_cycle`, and verifies the result.
pub fn decompose(g: &Graph, cfg: &DecompositionConfig) -> Result<DecompositionResult> {
    cfg.validate()?;
    let n = g.vertex_count();
    let threshold = (cfg.threshold_fn)(g.max_degree());
    let mut palettes: HashMap<usize, CompleteCover> = HashMap::new();
    let mut parts: Vec<Part> = Vec::new();
    let mut next_id = 0usize;
    let mut rounds: Vec<RoundLog> = Vec::new();
    let mut remaining = g.clone();
    let closing_forests;

    loop {
        let delta_before = remaining.max_degree();
        let peel = degeneracy_peel(&remaining, threshold);
        let forests = forest_decompose(&peel.shell, &peel.order)?;
        let forest_count = forests.len();
        for f in forests {
            parts.push(Part {
                id: next_id,
                edges: f.edge_list(),
            });
            next_id += 1;
        }
        if peel.core.edge_count() == 0 {
            closing_forests = forest_count;
            break;
        }

        let round = rounds.len();
        let abort = |e: Error, rounds: &[RoundLog]| Error::DecompositionAborted {
            round,
            log: rounds_text(rounds, threshold),
            source: Box::new(e),
        };
        let rc =
            rainbow_color_in_round(&peel.core, cfg, round as u32).map_err(|e| abort(e, &rounds))?;
        if let Entry::Vacant(e) = palettes.entry(rc.palette_size) {
            let cover = CompleteCover::new(rc.palette_size, cfg.palette_girth())
                .map_err(|e| abort(e, &rounds))?;
            e.insert(cover);
        }
        let palette = &palettes[&rc.palette_size];
        let pulled = pullback_partition(&peel.core, &rc, palette, cfg.target_cycle)
            .map_err(|e| abort(e, &rounds))?;
        let parts_used = pulled.parts.len();
        for p in pulled.parts {
            parts.push(Part {
                id: next_id + p.id,
                edges: p.edges,
            });
        }
        next_id += palette.part_count();

        let core_delta = peel.core.max_degree();
        remaining = peel.core.filter_edges(|(u, v)| !rc.retained.has_edge(u, v));
        let delta_after = remaining.max_degree();
        rounds.push(RoundLog {
            round,
            delta_before,
            core_edges: peel.core.edge_count(),
            shell_edges: peel.shell.edge_count(),
            forests: forest_count,
            core_delta,
            palette_size: rc.palette_size,
            palette_parts: palette.part_count(),
            parts_used,
            retained_edges: rc.retained.edge_count(),
            attempts: rc.attempts,
            delta_after,
            decay_ok: delta_after as f64 <= (cfg.decay * core_delta as f64).ceil(),
        });
    }

    for p in parts.iter_mut() {
        p.edges.sort_unstable();
    }
    let partition = EdgePartition {
        host: Host::Explicit(g.clone()),
        target: Target::CycleFree(cfg.target_cycle),
        parts,
        declared_parts: next_id,
    };
    let report = verify_partition(&partition, partition.target)
        .with_config("target_cycle", cfg.target_cycle)
        .with_config("color_multiplier", cfg.color_multiplier)
        .with_config("retention", cfg.retention)
        .with_config("rng_seed", cfg.rng_seed)
        .with_config("threshold", threshold);
    if !report.passed() {
        return Err(Error::CertificateFailed(report.to_text(false)));
    }
    debug_assert_eq!(partition.host.vertex_count(), n);
    Ok(DecompositionResult {
        total_parts: next_id,
        partition,
        rounds,
        closing_forests,
        threshold,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::{girth, has_cycle_of_length};
    use crate::partition::{cover_complete, PartIndex};

    fn cfg(cycle: u32) -> DecompositionConfig {
        DecompositionConfig::new(cycle).unwrap().with_seed(1)
    }

    #[test]
    fn threshold_function() {
        assert_eq!(default_threshold(0), 2);
        assert_eq!(default_threshold(1), 2);
        assert_eq!(default_threshold(3), 2);
        assert_eq!(default_threshold(16), 8);
        assert_eq!(default_threshold(32), 13);
        assert_eq!(default_threshold(64), 18);
    }

    #[test]
    fn config_validation() {
        assert!(DecompositionConfig::new(8).is_err());
        let mut c = cfg(6);
        c.retention = 1.0;
        assert!(c.validate().is_err());
        c.retention = 0.1;
        c.color_multiplier = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_edge() {
        let g = generators::complete(2);
        let rc = rainbow_color(&g, &cfg(6)).unwrap();
        assert_ne!(rc.color[0], rc.color[1]);
        assert_eq!(rc.retained, g);
        assert_eq!(rc.worst_retention(), Some((0, 1.0)));
        rc.check(200, 0.1).unwrap();
    }

    #[test]
    fn star_keeps_rainbow_leaves() {
        let g = generators::star(30);
        let rc = rainbow_color(&g, &cfg(6)).unwrap();
        rc.check(200, 0.1).unwrap();
        // Every retained leaf differs from the center and from each other.
        let center = rc.color[0];
        let mut leaves: Vec<u32> = rc
            .retained
            .neighbors(0)
            .iter()
            .map(|&l| rc.color[l as usize])
            .collect();
        assert!(leaves.iter().all(|&c| c != center));
        leaves.sort_unstable();
        leaves.dedup();
        assert_eq!(leaves.len(), rc.retained.degree(0));
    }

    #[test]
    fn pruning_keeps_lowest_neighbor() {
        // Vertex 0 sees color 7 on neighbors 1 and 2; only 0-1 survives.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let kept = prune_conflicts(&g, &[5, 7, 7, 9]);
        assert_eq!(kept.edge_list(), vec![(0, 1), (0, 3)]);
        // Monochromatic edges go.
        let kept = prune_conflicts(&g, &[5, 5, 7, 9]);
        assert_eq!(kept.edge_list(), vec![(0, 2), (0, 3)]);
    }

    #[test]
    fn retention_failure_is_reported() {
        // Palette of 2 colors on a triangle-rich graph cannot keep 90%.
        let mut c = cfg(6);
        c.color_multiplier = 1;
        c.retention = 0.9;
        c.max_retries = 3;
        let g = generators::complete(8);
        match rainbow_color(&g, &c) {
            Err(Error::RetentionFailed {
                retries: 3, ratio, ..
            }) => assert!(ratio < 0.9),
            other => panic!("expected retention failure, got {other:?}"),
        }
    }

    #[test]
    fn pullback_of_empty_retained_graph() {
        let g = Graph::empty(5);
        let rc = RainbowColoring {
            host: g.clone(),
            retained: g.clone(),
            color: vec![0; 5],
            palette_size: 200,
            attempts: 1,
        };
        let cover = CompleteCover::new(200, 8).unwrap();
        let p = pullback_partition(&g, &rc, &cover, 6).unwrap();
        assert!(p.parts.is_empty());
    }

    #[test]
    fn pullback_rejects_wrong_palette() {
        let g = generators::cycle(6);
        let rc = rainbow_color(&g, &cfg(6)).unwrap();
        let cover = CompleteCover::new(rc.palette_size + 1, 8).unwrap();
        assert!(matches!(
            pullback_partition(&g, &rc, &cover, 6),
            Err(Error::PaletteMismatch { .. })
        ));
    }

    #[test]
    fn pullback_on_explicit_palette_partition() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = generators::random_regular(300, 4, &mut rng).unwrap();
        let mut c = cfg(6);
        c.color_multiplier = 50;
        let rc = rainbow_color(&g, &c).unwrap();
        let (palette, _) = cover_complete(rc.palette_size, 8).unwrap();
        let index = PartIndex::new(&palette).unwrap();
        let p = pullback_partition(&g, &rc, &index, 6).unwrap();
        let mut all: Vec<Edge> = p
            .parts
            .iter()
            .flat_map(|x| x.edges.iter().copied())
            .collect();
        all.sort_unstable();
        assert_eq!(all, rc.retained.edge_list());
        for (i, part) in p.parts.iter().enumerate() {
            let h = p.part_graph(i).unwrap();
            let gi = Graph::from_edges(
                rc.palette_size,
                palette
                    .parts
                    .iter()
                    .find(|x| x.id == part.id)
                    .unwrap()
                    .edges
                    .iter()
                    .copied(),
            )
            .unwrap();
            assert!(is_locally_injective_hom(
                &h,
                &gi,
                &Homomorphism::new(rc.color.clone())
            ));
            assert!(girth(&h) >= girth(&gi));
        }
    }

    #[test]
    fn forest_input_is_one_part() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = generators::random_tree(200, &mut rng);
        let r = decompose(&t, &cfg(6)).unwrap();
        assert!(r.rounds.is_empty());
        assert_eq!(r.total_parts, 1);
        assert_eq!(r.partition.parts[0].edges, t.edge_list());
    }

    #[test]
    fn complete_graph_k10() {
        let g = generators::complete(10);
        for cycle in [6, 10] {
            let r = decompose(&g, &cfg(cycle)).unwrap();
            assert!(r.partition.is_exact());
            assert_eq!(r.partition.edge_total(), 45);
            for i in 0..r.partition.parts.len() {
                assert!(!has_cycle_of_length(&r.partition.part_graph(i).unwrap(), cycle).unwrap());
            }
            assert!(r.rounds.iter().all(|x| x.decay_ok));
        }
    }

    #[test]
    fn random_graph_rounds_decay() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = generators::random_regular(400, 12, &mut rng).unwrap();
        let mut c = cfg(6);
        c.color_multiplier = 4;
        let r = decompose(&g, &c).unwrap();
        assert!(r.report.passed());
        assert!(!r.rounds.is_empty());
        for w in r.rounds.windows(2) {
            assert!(w[1].delta_before <= w[0].delta_after);
        }
        assert!(
            r.rounds.iter().all(|x| x.decay_ok),
            "{}",
            r.round_log_text()
        );
    }
}
