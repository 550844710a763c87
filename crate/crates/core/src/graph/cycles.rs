use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

pub const MIN_CYCLE_QUERY: u32 = 3;
pub const MAX_CYCLE_QUERY: u32 = 16;

const FAR: u32 = u32::MAX;

/// Whether `g` contains a cycle of length exactly `len` (a simple cycle, not
/// a closed walk).
///
/// Every cycle is found from its smallest vertex `s`: paths leave `s`, only
/// visit vertices above `s`, and are pruned once the remaining budget cannot
/// bring them back to `s`.
pub fn has_cycle_of_length(g: &Graph, len: u32) -> Result<bool> {
    if !(MIN_CYCLE_QUERY..=MAX_CYCLE_QUERY).contains(&len) {
        return Err(Error::InvalidArgument(format!(
            "cycle length {len} outside supported range {MIN_CYCLE_QUERY}..={MAX_CYCLE_QUERY}"
        )));
    }
    let n = g.vertex_count();
    if g.edge_count() < len as usize {
        return Ok(false);
    }
    Ok((0..n as u32)
        .into_par_iter()
        .filter(|&s| g.degree(s) >= 2)
        .map_init(
            || Scratch::new(n),
            |scratch, s| {
                Search {
                    g,
                    start: s,
                    len,
                    scratch,
                }
                .run()
            },
        )
        .any(|hit| hit))
}

struct Scratch {
    dist: Vec<u32>,
    on_path: Vec<bool>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![FAR; n],
            on_path: vec![false; n],
            touched: Vec::new(),
        }
    }
}

struct Search<'a, 's> {
    g: &'a Graph,
    start: u32,
    len: u32,
    scratch: &'s mut Scratch,
}

impl Search<'_, '_> {
    fn run(mut self) -> bool {
        self.measure_distances();
        self.scratch.on_path[self.start as usize] = true;
        let hit = self.extend(self.start, 0);
        self.scratch.on_path[self.start as usize] = false;
        for &v in &self.scratch.touched {
            self.scratch.dist[v as usize] = FAR;
        }
        self.scratch.touched.clear();
        hit
    }

    /// Distances from `start` among vertices >= start, up to len / 2: a
    /// vertex further away cannot sit on a len-cycle through `start`.
    fn measure_distances(&mut self) {
        let Scratch { dist, touched, .. } = &mut *self.scratch;
        let cap = self.len / 2;
        dist[self.start as usize] = 0;
        touched.push(self.start);
        let mut head = 0;
        while head < touched.len() {
            let u = touched[head];
            head += 1;
            let du = dist[u as usize];
            if du == cap {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if w > self.start && dist[w as usize] == FAR {
                    dist[w as usize] = du + 1;
                    touched.push(w);
                }
            }
        }
    }

    /// `v` is the end of a path from `start` with `edges` edges.
    fn extend(&mut self, v: u32, edges: u32) -> bool {
        if edges == self.len - 1 {
            return self.g.has_edge(v, self.start);
        }
        let remaining_after = self.len - (edges + 1);
        for &w in self.g.neighbors(v) {
            if w <= self.start || self.scratch.on_path[w as usize] {
                continue;
            }
            let dw = self.scratch.dist[w as usize];
            if dw == FAR || dw > remaining_after {
                continue;
            }
            self.scratch.on_path[w as usize] = true;
            let hit = self.extend(w, edges + 1);
            self.scratch.on_path[w as usize] = false;
            if hit {
                return true;
            }
        }
        false
    }
}
