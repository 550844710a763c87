//! Re-derives every certificate of a partition from its edge lists.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::graph::{girth, has_cycle_of_length, Girth, Graph};
use crate::partition::{exactness, EdgePartition, Target};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartCheck {
    pub id: usize,
    pub edges: usize,
    pub girth: Girth,
    pub pass: bool,
    /// Set when the part could not even be read as a simple graph.
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub host: String,
    pub host_edges: usize,
    pub target: Target,
    pub declared_parts: usize,
    pub parts: Vec<PartCheck>,
    pub exact: bool,
    pub exact_detail: Option<String>,
    pub elapsed: Duration,
    pub config: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.exact && self.parts.iter().all(|p| p.pass)
    }

    pub fn failed_parts(&self) -> impl Iterator<Item = &PartCheck> {
        self.parts.iter().filter(|p| !p.pass)
    }

    pub fn min_girth(&self) -> Girth {
        self.parts
            .iter()
            .map(|p| p.girth)
            .min()
            .unwrap_or(Girth::Infinite)
    }

    pub fn with_config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    /// Stable `key: value` text. Per-part lines are included when
    /// `per_part` is set; failing parts are always listed.
    pub fn to_text(&self, per_part: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "report: verification");
        let _ = writeln!(s, "host: {}", self.host);
        let _ = writeln!(s, "host_edges: {}", self.host_edges);
        let _ = writeln!(s, "target: {}", self.target);
        let _ = writeln!(s, "parts: {}", self.parts.len());
        let _ = writeln!(s, "declared_parts: {}", self.declared_parts);
        let _ = writeln!(s, "exact: {}", self.exact);
        if let Some(d) = &self.exact_detail {
            let _ = writeln!(s, "exact_detail: {d}");
        }
        for p in &self.parts {
            if per_part || !p.pass {
                let _ = write!(
                    s,
                    "part {}: edges={} girth={} {}",
                    p.id,
                    p.edges,
                    p.girth,
                    if p.pass { "pass" } else { "FAIL" }
                );
                if let Some(e) = &p.error {
                    let _ = write!(s, " error={e}");
                }
                s.push('\n');
            }
        }
        let _ = writeln!(s, "failed_parts: {}", self.failed_parts().count());
        let _ = writeln!(s, "min_girth: {}", self.min_girth());
        let _ = writeln!(s, "elapsed_ms: {}", self.elapsed.as_millis());
        for (k, v) in &self.config {
            let _ = writeln!(s, "config.{k}: {v}");
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

/// Checks exactness against the host and `target` on every part. Claims
/// stored alongside the partition are ignored.
pub fn verify_partition(p: &EdgePartition, target: Target) -> VerificationReport {
    let start = Instant::now();
    let n = p.host.vertex_count();
    let parts: Vec<PartCheck> = p
        .parts
        .par_iter()
        .map(
            |part| match Graph::from_edges(n, part.edges.iter().copied()) {
                Ok(g) => check_part(part.id, &g, target),
                Err(e) => PartCheck {
                    id: part.id,
                    edges: part.edges.len(),
                    girth: Girth::Infinite,
                    pass: false,
                    error: Some(e.to_string()),
                },
            },
        )
        .collect();
    let exact = exactness(p);
    VerificationReport {
        host: p.host.to_string(),
        host_edges: p.host.edge_count(),
        target,
        declared_parts: p.declared_parts,
        parts,
        exact: exact.is_ok(),
        exact_detail: exact.err(),
        elapsed: start.elapsed(),
        config: Vec::new(),
    }
}

pub fn check_part(id: usize, g: &Graph, target: Target) -> PartCheck {
    let gi = girth(g);
    let pass = match target {
        Target::Girth(min) => gi.at_least(min),
        Target::CycleFree(len) => match has_cycle_of_length(g, len) {
            Ok(found) => !found,
            Err(_) => false,
        },
    };
    PartCheck {
        id,
        edges: g.edge_count(),
        girth: gi,
        pass,
        error: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{cover_complete, Host, Part};

    #[test]
    fn detects_planted_violations() {
        let (mut p, _) = cover_complete(30, 8).unwrap();
        let report = verify_partition(&p, Target::Girth(8));
        assert!(report.passed(), "{}", report.to_text(false));

        // Move a hexagon's worth of edges into one part: still exact, but
        // that part now has a 6-cycle.
        let hexagon = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
        for part in p.parts.iter_mut() {
            part.edges.retain(|e| !hexagon.contains(e));
        }
        p.parts.push(Part {
            id: 999,
            edges: hexagon.to_vec(),
        });
        let report = verify_partition(&p, Target::CycleFree(6));
        assert!(report.exact);
        assert!(!report.passed());
        assert_eq!(report.failed_parts().next().unwrap().id, 999);
        assert!(report.to_text(false).contains("result: fail"));
    }

    #[test]
    fn duplicate_edge_inside_part_fails() {
        let p = EdgePartition {
            host: Host::Complete { n: 3 },
            target: Target::Girth(3),
            parts: vec![Part {
                id: 0,
                edges: vec![(0, 1), (0, 1), (0, 2), (1, 2)],
            }],
            declared_parts: 1,
        };
        let report = verify_partition(&p, Target::Girth(3));
        assert!(!report.passed());
        assert!(report.parts[0].error.is_some());
    }
}
