//! Desk-scale stability probe: graphs near the Goodman bound at the Turán
//! edge count, and their distance to the Turán graph.

use super::brute::{table, BRUTE_MAX_ORDER};
use super::partition::min_inside;
use crate::error::{out_of_range, Result};
use crate::extremal::goodman_bound;
use crate::graph::{binomial, emit_graph6, turan_parts, Graph};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityEntry {
    pub graph6: String,
    pub triangles: u64,
    /// Fewest adjacency changes to reach `T_t(n)`.
    pub distance: u64,
    pub bipartite: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    pub n: usize,
    pub t: usize,
    pub m: usize,
    pub delta: f64,
    /// Largest triangle count admitted.
    pub threshold: f64,
    pub entries: Vec<StabilityEntry>,
}

/// Edits from `g` to the nearest labeling of `T_t(n)`.
pub fn distance_to_turan(g: &Graph, t: usize) -> u64 {
    let n = g.order();
    let sizes = turan_parts(t, n);
    let cross: u64 = n as u64 * (n as u64).saturating_sub(1) / 2
        - sizes.iter().map(|&p| binomial(p as u64, 2) as u64).sum::<u64>();
    let inside = min_inside(g, g.vertex_mask(), &sizes) as u64;
    // edits = edges inside parts + missing cross pairs
    cross + 2 * inside - g.edge_count() as u64
}

/// Every graph with `n` vertices and `m = round((1 - 1/t) n²/2)` edges whose
/// triangle count is at most the Goodman bound plus `delta·C(n,3)`.
pub fn stability_probe(n: usize, t: usize, delta: f64) -> Result<StabilityReport> {
    if n == 0 || n > BRUTE_MAX_ORDER {
        return Err(out_of_range("n", n, "1..=8"));
    }
    if t == 0 || t > n {
        return Err(out_of_range("t", t, "1..=n"));
    }
    let m = ((1.0 - 1.0 / t as f64) * (n * n) as f64 / 2.0).round() as usize;
    let threshold = goodman_bound(3, m as u64, n as u64) + delta * binomial(n as u64, 3) as f64;
    let entries = table(n)?
        .iter()
        .filter(|row| row.1 == m && row.2 as f64 <= threshold + 1e-9)
        .map(|row| StabilityEntry {
            graph6: emit_graph6(&row.0),
            triangles: row.2,
            distance: distance_to_turan(&row.0, t),
            bipartite: is_bipartite(&row.0),
        })
        .collect();
    Ok(StabilityReport {
        n,
        t,
        m,
        delta,
        threshold,
        entries,
    })
}

fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut color = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = color[v].expect("coloured");
            for u in crate::graph::bits(g.neighbors(v)) {
                match color[u] {
                    None => {
                        color[u] = Some(!c);
                        stack.push(u);
                    }
                    Some(x) if x == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}
