//! Exact edge partitions of complete and complete bipartite graphs into
//! shifted point-line graphs.
//!
//! K_{q^k,q^k} splits into the `q^(k-1)` shifted copies of the quadrangle
//! (k = 3) or hexagon (k = 5) graph. K_{m,m} embeds into the smallest such
//! host, and K_n is covered level by level: every block is halved, and the
//! crossing bipartite graphs of one level share part ids, so part `j` of a
//! level is a disjoint union of copies of cover part `j`.

use std::fmt;

use crate::algebraic::{tuple_from_index, Geometry, Incidence, Shift};
use crate::error::{Error, Result};
use crate::field::{next_prime_at_least, FieldElement, PrimeField};
use crate::graph::{normalize, Edge, EdgeOracle, Graph};

/// The graph whose edges a partition covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Host {
    Complete {
        n: usize,
    },
    /// Sides `0..a` and `a..a+b`.
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Explicit(Graph),
}

impl Host {
    pub fn vertex_count(&self) -> usize {
        match self {
            Host::Complete { n } => *n,
            Host::CompleteBipartite { a, b } => a + b,
            Host::Explicit(g) => g.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Host::Complete { n } => n * n.saturating_sub(1) / 2,
            Host::CompleteBipartite { a, b } => a * b,
            Host::Explicit(g) => g.edge_count(),
        }
    }

    /// All host edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Host::Complete { n } => {
                let n = *n as u32;
                (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect()
            }
            Host::CompleteBipartite { a, b } => {
                let (a, b) = (*a as u32, *b as u32);
                (0..a)
                    .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                    .collect()
            }
            Host::Explicit(g) => g.edge_list(),
        }
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Host::Complete { n } => write!(f, "complete n={n}"),
            Host::CompleteBipartite { a, b } => write!(f, "complete-bipartite a={a} b={b}"),
            Host::Explicit(g) => write!(f, "explicit n={} m={}", g.vertex_count(), g.edge_count()),
        }
    }
}

/// The property every part claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Girth at least this value.
    Girth(u32),
    /// No cycle of exactly this length.
    CycleFree(u32),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Girth(g) => write!(f, "girth>={g}"),
            Target::CycleFree(l) => write!(f, "no-C{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub id: usize,
    /// Normalized and sorted.
    pub edges: Vec<Edge>,
}

/// A partition of a host graph's edges into parts that each claim `target`.
///
/// Empty parts are not stored; `declared_parts` counts them anyway.
#[derive(Clone, Debug)]
pub struct EdgePartition {
    pub host: Host,
    pub target: Target,
    pub parts: Vec<Part>,
    pub declared_parts: usize,
}

impl EdgePartition {
    pub fn edge_total(&self) -> usize {
        self.parts.iter().map(|p| p.edges.len()).sum()
    }

    /// Part `i` (by position) as a spanning graph of the host.
    pub fn part_graph(&self, i: usize) -> Result<Graph> {
        Graph::from_edges(
            self.host.vertex_count(),
            self.parts[i].edges.iter().copied(),
        )
    }

    /// Whether the parts cover every host edge exactly once and nothing else.
    pub fn is_exact(&self) -> bool {
        exactness(self).is_ok()
    }

    fn from_buckets(host: Host, target: Target, buckets: Vec<Vec<Edge>>) -> Self {
        let declared_parts = buckets.len();
        let parts = buckets
            .into_iter()
            .enumerate()
            .filter(|(_, e)| !e.is_empty())
            .map(|(id, mut edges)| {
                for e in edges.iter_mut() {
                    *e = normalize(e.0, e.1);
                }
                edges.sort_unstable();
                Part { id, edges }
            })
            .collect();
        EdgePartition {
            host,
            target,
            parts,
            declared_parts,
        }
    }
}

/// Compares the multiset of part edges against the host edge set. On
/// failure describes the first discrepancy.
pub fn exactness(p: &EdgePartition) -> std::result::Result<(), String> {
    let mut all: Vec<Edge> = p
        .parts
        .iter()
        .flat_map(|part| part.edges.iter().copied())
        .collect();
    all.sort_unstable();
    if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("edge {}-{} covered more than once", w[0].0, w[0].1));
    }
    let host = p.host.edges();
    if all == host {
        return Ok(());
    }
    let (mut i, mut j) = (0, 0);
    while i < all.len() && j < host.len() {
        match all[i].cmp(&host[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                return Err(format!("edge {}-{} is not a host edge", all[i].0, all[i].1))
            }
            std::cmp::Ordering::Greater => {
                return Err(format!(
                    "host edge {}-{} is uncovered",
                    host[j].0, host[j].1
                ))
            }
        }
    }
    if i < all.len() {
        Err(format!("edge {}-{} is not a host edge", all[i].0, all[i].1))
    } else {
        Err(format!(
            "host edge {}-{} is uncovered",
            host[j].0, host[j].1
        ))
    }
}

/// Smallest prime `q >= 5` with `q^arity >= m`.
pub fn prime_for_side(m: usize, geometry: Geometry) -> Result<u64> {
    let k = geometry.arity() as u32;
    let mut q = next_prime_at_least(5)?;
    // Start near the k-th root to avoid walking up from 5.
    let root = (m as f64).powf(1.0 / k as f64).floor() as u64;
    if root > q {
        q = next_prime_at_least(root.saturating_sub(1).max(5))?;
    }
    while q.pow(k) < m as u64 {
        q = next_prime_at_least(q + 1)?;
    }
    Ok(q)
}

/// Implicit cover of K_{m,m} by the restricted shifted copies over F_q.
///
/// Point `x` and line `y` (both in `0..m`) lie in the part whose shift makes
/// tuple `x` adjacent to tuple `y`.
#[derive(Clone, Debug)]
pub struct BipartiteCover {
    m: usize,
    incidence: Incidence,
    shifts: Vec<Vec<FieldElement>>,
}

impl BipartiteCover {
    pub fn new(m: usize, geometry: Geometry) -> Result<Self> {
        let q = prime_for_side(m, geometry)?;
        Self::with_prime(m, q, geometry)
    }

    pub fn with_prime(m: usize, q: u64, geometry: Geometry) -> Result<Self> {
        let field = PrimeField::new(q)?;
        if geometry.side_size(q) < m as u64 {
            return Err(Error::InvalidArgument(format!(
                "q = {q} too small for side {m}"
            )));
        }
        let shifts = (0..geometry.shift_count(q))
            .map(|i| Shift::from_index(geometry, &field, i).offsets())
            .collect();
        Ok(BipartiteCover {
            m,
            incidence: Incidence::new(field, geometry),
            shifts,
        })
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.incidence.field().modulus() as u64
    }

    pub fn geometry(&self) -> Geometry {
        self.incidence.geometry()
    }

    pub fn part_count(&self) -> usize {
        self.shifts.len()
    }

    /// Part containing point `x`, line `y`.
    pub fn part_of(&self, x: usize, y: usize) -> usize {
        let k = self.geometry().arity();
        let field = self.incidence.field();
        let p = tuple_from_index(field, k, x as u64);
        let l = tuple_from_index(field, k, y as u64);
        let s = self.incidence.solve_offsets(&p, &l);
        s.iter().fold(0usize, |acc, c| {
            acc * self.q() as usize + c.value() as usize
        })
    }

    /// Calls `f(x, y)` for every edge of `part` with `x < a` and `y < b`.
    pub fn for_each_edge(&self, part: usize, a: usize, b: usize, mut f: impl FnMut(usize, usize)) {
        let mut lines = Vec::with_capacity(self.q() as usize);
        for x in 0..a.min(self.m) {
            self.incidence
                .lines_of_point(x as u64, &self.shifts[part], &mut lines);
            for &y in &lines {
                if (y as usize) < b.min(self.m) {
                    f(x, y as usize);
                }
            }
        }
    }
}

/// Partition of K_{q^k,q^k} into its `q^(k-1)` shifted copies. Points are
/// vertices `0..q^k`, lines `q^k..2q^k`.
pub fn partition_bipartite_exact(q: u64, arity: usize) -> Result<EdgePartition> {
    let geometry = Geometry::from_arity(arity)?;
    let side = geometry.side_size(q) as usize;
    let cover = BipartiteCover::with_prime(side, q, geometry)?;
    Ok(bipartite_partition(&cover, side))
}

/// Cover of K_{m,m} by the restriction of every shifted copy over the
/// smallest usable prime to its first `m` points and lines.
pub fn cover_bipartite(m: usize, target_girth: u32) -> Result<EdgePartition> {
    if m == 0 {
        return Err(Error::InvalidArgument("side must be at least 1".into()));
    }
    let cover = BipartiteCover::new(m, Geometry::from_girth(target_girth)?)?;
    Ok(bipartite_partition(&cover, m))
}

fn bipartite_partition(cover: &BipartiteCover, m: usize) -> EdgePartition {
    let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); cover.part_count()];
    for (part, bucket) in buckets.iter_mut().enumerate() {
        cover.for_each_edge(part, m, m, |x, y| bucket.push((x as u32, (m + y) as u32)));
    }
    EdgePartition::from_buckets(
        Host::CompleteBipartite { a: m, b: m },
        Target::Girth(cover.geometry().girth()),
        buckets,
    )
}

/// One halving level of [`CompleteCover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPlan {
    /// 1-based.
    pub level: usize,
    /// Largest half at this level, `ceil(n / 2^level)`.
    pub block: usize,
    pub prime: u64,
    pub parts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPlan {
    pub n: usize,
    pub target_girth: u32,
    pub levels: Vec<LevelPlan>,
    pub total_parts: usize,
}

#[derive(Clone, Debug)]
struct Level {
    cover: BipartiteCover,
    /// Global id of this level's part 0.
    offset: usize,
    /// Sibling pairs `(left start, left len, right start, right len)`.
    pairs: Vec<(usize, usize, usize, usize)>,
}

/// Implicit partition of K_n by recursive halving.
#[derive(Clone, Debug)]
pub struct CompleteCover {
    n: usize,
    geometry: Geometry,
    levels: Vec<Level>,
}

impl CompleteCover {
    pub fn new(n: usize, target_girth: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "complete cover needs n >= 2, got {n}"
            )));
        }
        let geometry = Geometry::from_girth(target_girth)?;
        let mut levels = Vec::new();
        let mut blocks = vec![(0usize, n)];
        let mut offset = 0;
        while blocks.iter().any(|&(_, len)| len >= 2) {
            let mut pairs = Vec::new();
            let mut next = Vec::new();
            for &(lo, len) in &blocks {
                if len < 2 {
                    continue;
                }
                let h = len.div_ceil(2);
                pairs.push((lo, h, lo + h, len - h));
                next.push((lo, h));
                next.push((lo + h, len - h));
            }
            let block = pairs.iter().map(|p| p.1).max().expect("some block splits");
            let cover = BipartiteCover::new(block, geometry)?;
            let parts = cover.part_count();
            levels.push(Level {
                cover,
                offset,
                pairs,
            });
            offset += parts;
            blocks = next;
        }
        Ok(CompleteCover {
            n,
            geometry,
            levels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn target_girth(&self) -> u32 {
        self.geometry.girth()
    }

    pub fn part_count(&self) -> usize {
        self.levels.iter().map(|l| l.cover.part_count()).sum()
    }

    pub fn plan(&self) -> CoverPlan {
        let levels: Vec<LevelPlan> = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| LevelPlan {
                level: i + 1,
                block: l.cover.side(),
                prime: l.cover.q(),
                parts: l.cover.part_count(),
            })
            .collect();
        CoverPlan {
            n: self.n,
            target_girth: self.target_girth(),
            total_parts: levels.iter().map(|l| l.parts).sum(),
            levels,
        }
    }

    /// Global part id of edge `uv`.
    pub fn part_of(&self, u: u32, v: u32) -> Option<usize> {
        let (u, v) = normalize(u, v);
        let (u, v) = (u as usize, v as usize);
        if u == v || v >= self.n {
            return None;
        }
        let (mut lo, mut len) = (0usize, self.n);
        for level in &self.levels {
            let h = len.div_ceil(2);
            if v < lo + h {
                len = h;
            } else if u >= lo + h {
                lo += h;
                len -= h;
            } else {
                return Some(level.offset + level.cover.part_of(u - lo, v - lo - h));
            }
        }
        unreachable!("distinct vertices separate within ceil(log2 n) levels")
    }

    /// Builds every part explicitly by generating the restricted shifted
    /// copies for each sibling pair.
    pub fn materialize(&self) -> EdgePartition {
        let mut buckets: Vec<Vec<Edge>> = vec![Vec::new(); self.part_count()];
        for level in &self.levels {
            for part in 0..level.cover.part_count() {
                let bucket = &mut buckets[level.offset + part];
                for &(l0, a, r0, b) in &level.pairs {
                    level.cover.for_each_edge(part, a, b, |x, y| {
                        bucket.push(((l0 + x) as u32, (r0 + y) as u32))
                    });
                }
            }
        }
        EdgePartition::from_buckets(
            Host::Complete { n: self.n },
            Target::Girth(self.target_girth()),
            buckets,
        )
    }
}

/// Exact partition of E(K_n) into parts of girth >= `target_girth`.
pub fn cover_complete(n: usize, target_girth: u32) -> Result<(EdgePartition, CoverPlan)> {
    let cover = CompleteCover::new(n, target_girth)?;
    Ok((cover.materialize(), cover.plan()))
}

/// Edge-to-part lookup on a complete graph whose vertices are colors.
pub trait PaletteLookup: Sync {
    fn palette_size(&self) -> usize;
    fn part_count(&self) -> usize;
    fn part_of(&self, a: u32, b: u32) -> Option<usize>;
    /// Girth lower bound shared by all parts.
    fn girth_bound(&self) -> u32;
}

impl PaletteLookup for CompleteCover {
    fn palette_size(&self) -> usize {
        self.n
    }

    fn part_count(&self) -> usize {
        CompleteCover::part_count(self)
    }

    fn part_of(&self, a: u32, b: u32) -> Option<usize> {
        CompleteCover::part_of(self, a, b)
    }

    fn girth_bound(&self) -> u32 {
        self.target_girth()
    }
}

/// Hash index over an explicit partition of a complete graph.
#[derive(Clone, Debug)]
pub struct PartIndex {
    n: usize,
    parts: usize,
    girth: u32,
    owner: std::collections::HashMap<Edge, usize>,
}

impl PartIndex {
    pub fn new(p: &EdgePartition) -> Result<Self> {
        let n = match p.host {
            Host::Complete { n } => n,
            _ => {
                return Err(Error::InvalidArgument(
                    "palette partitions must have a complete host".into(),
                ))
            }
        };
        let girth = match p.target {
            Target::Girth(g) => g,
            Target::CycleFree(_) => {
                return Err(Error::InvalidArgument(
                    "palette partitions must certify girth".into(),
                ))
            }
        };
        let mut owner = std::collections::HashMap::with_capacity(p.edge_total());
        for part in &p.parts {
            for &e in &part.edges {
                owner.insert(e, part.id);
            }
        }
        Ok(PartIndex {
            n,
            parts: p.declared_parts,
            girth,
            owner,
        })
    }
}

impl PaletteLookup for PartIndex {
    fn palette_size(&self) -> usize {
        self.n
    }

    fn part_count(&self) -> usize {
        self.parts
    }

    fn part_of(&self, a: u32, b: u32) -> Option<usize> {
        self.owner.get(&normalize(a, b)).copied()
    }

    fn girth_bound(&self) -> u32 {
        self.girth
    }
}

/// One palette part seen as a graph on the colors.
pub struct PalettePart<'a> {
    pub lookup: &'a dyn PaletteLookup,
    pub part: usize,
}

impl EdgeOracle for PalettePart<'_> {
    fn vertex_count(&self) -> usize {
        self.lookup.palette_size()
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.lookup.part_of(a, b) == Some(self.part)
    }
}
