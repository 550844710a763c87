//! Covering `K_n` with randomly relabeled copies of a high-girth seed
//! graph. Each pair of `K_n` goes to the first copy containing it, which
//! turns the cover into an exact partition.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebraic::{build_hexagon, build_quadrangle, ShiftH, ShiftQ};
use crate::bounds::cover_rate_exponent;
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::graph::{girth, Edge, Girth, Graph};
use crate::partition::{EdgePartition, Host, Part, Target};

/// A graph with a verified girth.
#[derive(Clone, Debug)]
pub struct SeedGraph {
    graph: Graph,
    girth: Girth,
    name: String,
}

impl SeedGraph {
    /// Computes the girth of `graph` and checks it is at least `min_girth`.
    pub fn new(graph: Graph, min_girth: u32, name: impl Into<String>) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::InvalidArgument("seed graph has no edges".into()));
        }
        let g = girth(&graph);
        if !g.at_least(min_girth) {
            return Err(Error::CertificateFailed(format!(
                "seed girth {g} is below the required {min_girth}"
            )));
        }
        Ok(SeedGraph {
            graph,
            girth: g,
            name: name.into(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn girth(&self) -> Girth {
        self.girth
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Adds isolated vertices up to `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        Ok(SeedGraph {
            graph: self.graph.padded(n)?,
            girth: self.girth,
            name: self.name.clone(),
        })
    }
}

/// `ceil(c * ln(n) * n(n-1) / (2 * seed_edges))`: the number of copies
/// giving every pair an expected coverage of `c * ln(n)`.
pub fn required_copies(n: usize, seed_edges: usize, c: f64) -> Result<usize> {
    if n < 2 || seed_edges < 1 || c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "required_copies needs n >= 2, seed_edges >= 1, C > 0 (got {n}, {seed_edges}, {c})"
        )));
    }
    let pairs = n as f64 * (n - 1) as f64 / 2.0;
    Ok((c * (n as f64).ln() * pairs / seed_edges as f64).ceil() as usize)
}

#[derive(Clone, Debug)]
pub struct CoverOutcome {
    pub n: usize,
    /// `copies[i][v]` is the image of seed vertex `v` in copy `i`.
    pub copies: Vec<Vec<u32>>,
    /// Copy index owning each pair, indexed by [`pair_index`].
    pub assignment: Vec<Option<u32>>,
    /// Number of copies containing each pair.
    pub coverage: Vec<u32>,
    pub uncovered: Vec<Edge>,
    pub copy_count: usize,
    pub safety_constant: f64,
    pub seed_edges: usize,
    pub seed_girth: Girth,
    pub seed_name: String,
    pub rng_seed: u64,
}

/// Index of pair `u < v` among the `n(n-1)/2` pairs in lexicographic order.
pub fn pair_index(n: usize, u: u32, v: u32) -> usize {
    let (u, v) = (u.min(v) as usize, u.max(v) as usize);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl CoverOutcome {
    pub fn success(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// Copies that own at least one pair.
    pub fn contributing_copies(&self) -> usize {
        let mut used = vec![false; self.copy_count];
        for c in self.assignment.iter().flatten() {
            used[*c as usize] = true;
        }
        used.into_iter().filter(|&u| u).count()
    }

    /// Mean of the per-pair coverage counts.
    pub fn mean_coverage(&self) -> f64 {
        self.coverage.iter().map(|&c| c as f64).sum::<f64>() / self.coverage.len().max(1) as f64
    }

    /// `copy_count * 2 * seed_edges / (n(n-1))`.
    pub fn expected_coverage(&self) -> f64 {
        let pairs = self.n as f64 * (self.n - 1) as f64 / 2.0;
        self.copy_count as f64 * self.seed_edges as f64 / pairs
    }

    /// Partition of the covered pairs, one part per contributing copy with
    /// the copy index as id. The target is the seed girth.
    pub fn partition(&self) -> EdgePartition {
        let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); self.copy_count];
        let n = self.n as u32;
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                if let Some(c) = self.assignment[idx] {
                    buckets[c as usize].push((u, v));
                }
                idx += 1;
            }
        }
        let parts = buckets
            .into_iter()
            .enumerate()
            .filter(|(_, e)| !e.is_empty())
            .map(|(id, edges)| Part { id, edges })
            .collect();
        EdgePartition {
            host: Host::Complete { n: self.n },
            target: Target::Girth(self.seed_girth.finite().unwrap_or(u32::MAX)),
            parts,
            declared_parts: self.copy_count,
        }
    }

    /// Structured summary. `k` adds the rate comparison for `C_2k`.
    pub fn summary(&self, k: Option<u32>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "report: random-cover");
        let _ = writeln!(s, "log: natural");
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "seed: {}", self.seed_name);
        let _ = writeln!(s, "seed_edges: {}", self.seed_edges);
        let _ = writeln!(s, "seed_girth: {}", self.seed_girth);
        let _ = writeln!(s, "C: {}", self.safety_constant);
        let _ = writeln!(s, "rng_seed: {}", self.rng_seed);
        let _ = writeln!(s, "copies: {}", self.copy_count);
        let _ = writeln!(s, "contributing_copies: {}", self.contributing_copies());
        let _ = writeln!(s, "expected_coverage: {:.4}", self.expected_coverage());
        let _ = writeln!(s, "mean_coverage: {:.4}", self.mean_coverage());
        if let Some(k) = k {
            if let Ok(e) = cover_rate_exponent(k) {
                let n = self.n as f64;
                let rate = n.powf(e.to_f64().unwrap_or(f64::NAN)) * n.ln();
                let _ = writeln!(s, "rate_exponent: {e}");
                let _ = writeln!(s, "rate: {rate:.4}");
                let _ = writeln!(s, "copies_over_rate: {:.4}", self.copy_count as f64 / rate);
            }
        }
        let _ = writeln!(s, "uncovered: {}", self.uncovered.len());
        let _ = writeln!(s, "success: {}", self.success());
        s
    }
}

fn random_permutation(n: usize, rng_seed: u64, copy: usize) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(copy as u64);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    perm
}

/// Places `required_copies(n, seed_edges, c)` uniformly relabeled copies
/// of `seed` on `K_n`. Copy `i` draws its permutation from ChaCha stream
/// `i` of `rng_seed`, so the outcome does not depend on thread count.
pub fn cover_random(n: usize, seed: &SeedGraph, c: f64, rng_seed: u64) -> Result<CoverOutcome> {
    let seed = if seed.graph.vertex_count() < n {
        seed.padded(n)?
    } else {
        seed.clone()
    };
    if seed.graph.vertex_count() != n {
        return Err(Error::InvalidArgument(format!(
            "seed has {} vertices, more than n = {n}",
            seed.graph.vertex_count()
        )));
    }
    let t = required_copies(n, seed.edge_count(), c)?;
    let copies: Vec<Vec<u32>> = (0..t)
        .into_par_iter()
        .map(|i| random_permutation(n, rng_seed, i))
        .collect();

    let pairs = n * (n - 1) / 2;
    let mut assignment: Vec<Option<u32>> = vec![None; pairs];
    let mut coverage = vec![0u32; pairs];
    let seed_edges = seed.graph.edge_list();
    for (i, perm) in copies.iter().enumerate() {
        for &(u, v) in &seed_edges {
            let idx = pair_index(n, perm[u as usize], perm[v as usize]);
            coverage[idx] += 1;
            assignment[idx].get_or_insert(i as u32);
        }
    }
    let mut uncovered = Vec::new();
    let mut idx = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if coverage[idx] == 0 {
                uncovered.push((u, v));
            }
            idx += 1;
        }
    }
    Ok(CoverOutcome {
        n,
        copies,
        assignment,
        coverage,
        uncovered,
        copy_count: t,
        safety_constant: c,
        seed_edges: seed.edge_count(),
        seed_girth: seed.girth,
        seed_name: seed.name.clone(),
        rng_seed,
    })
}

/// Densest built-in seed with girth at least `2k + 2` on at most `n`
/// vertices: the quadrangle graph (girth 8) for `k <= 3`, the hexagon
/// graph (girth 12) for `k = 5`.
pub fn builtin_seed(n: usize, k: u32) -> Result<SeedGraph> {
    let min_girth = 2 * k + 2;
    let (arity, name) = match k {
        2 | 3 => (3u32, "quadrangle"),
        5 => (5, "hexagon"),
        _ => {
            return Err(Error::NoSeedAvailable {
                n,
                girth: min_girth,
            })
        }
    };
    let q = (5..)
        .filter(|&q| is_prime(q))
        .take_while(|&q| 2 * q.pow(arity) <= n as u64)
        .last()
        .ok_or(Error::NoSeedAvailable {
            n,
            girth: min_girth,
        })?;
    let field = PrimeField::new(q)?;
    let graph = if arity == 3 {
        build_quadrangle(q, ShiftQ::zero(&field))?.into_graph()
    } else {
        build_hexagon(q, ShiftH::zero(&field))?.into_graph()
    };
    SeedGraph::new(graph, min_girth, format!("{name}(q={q})"))?.padded(n)
}

/// [`cover_random`] with the built-in seed for `C_2k`.
pub fn cover_for_cycle(n: usize, k: u32, c: f64, rng_seed: u64) -> Result<CoverOutcome> {
    let seed = builtin_seed(n, k)?;
    cover_random(n, &seed, c, rng_seed)
}
