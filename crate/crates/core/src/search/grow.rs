//! Growing a triangle-free graph to a prescribed edge count with few edits.

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct GrowResult {
    pub graph: DenseGraph,
    /// Adjacencies changed relative to the input.
    pub edits: usize,
    pub edges: usize,
    /// Whether the complete bipartite fallback was needed.
    pub fallback: bool,
}

/// Returns a triangle-free graph on the same vertices with exactly `s`
/// edges, close to `g`.
///
/// Steps, each repeated while the edge count is below `s`: add an edge
/// whose ends have no common neighbour; otherwise rewire some `w` to copy
/// the neighbourhood of a non-neighbour `x` (the neighbourhood of `x` is
/// independent, so no triangle appears), taking the best gain per edit;
/// when no clone gains, take a zero-gain clone to an unseen state. If that
/// stalls, fall back to a complete bipartite graph on a large cut. Surplus
/// edges are then trimmed, newly added ones first.
pub fn grow_trianglefree(g: &DenseGraph, s: usize) -> Result<GrowResult> {
    let n = g.order();
    if !g.is_triangle_free() {
        return Err(Error::Precondition("input graph has a triangle".into()));
    }
    let e0 = g.edge_count();
    if s < e0 || s > n * n / 4 {
        return Err(Error::Precondition(format!(
            "target {s} outside [{e0}, {}]",
            n * n / 4
        )));
    }
    let mut h = g.clone();
    let mut seen: HashSet<DenseGraph> = HashSet::new();
    let mut fallback = false;
    while h.edge_count() < s {
        if add_free_edges(&mut h, s) {
            continue;
        }
        if let Some((x, w)) = best_clone(&h, g) {
            clone_onto(&mut h, x, w);
            continue;
        }
        seen.insert(h.clone());
        if seen.len() <= 4 * n && zero_gain_clone(&mut h, &seen) {
            continue;
        }
        h = bipartite_fallback(&h, s);
        fallback = true;
    }
    trim(&mut h, g, s);
    debug_assert!(h.is_triangle_free());
    Ok(GrowResult {
        edits: h.edit_distance(g),
        edges: h.edge_count(),
        graph: h,
        fallback,
    })
}

/// Random triangle-free graph: pairs are visited in random order and each
/// one that closes no triangle is added with probability `fill`.
pub fn random_trianglefree<R: Rng>(n: usize, fill: f64, rng: &mut R) -> DenseGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = DenseGraph::new(n);
    for (u, v) in pairs {
        if g.common(u, v) == 0 && rng.gen_bool(fill.clamp(0.0, 1.0)) {
            g.add_edge(u, v);
        }
    }
    g
}

fn add_free_edges(h: &mut DenseGraph, s: usize) -> bool {
    let n = h.order();
    let mut added = false;
    for u in 0..n {
        for v in u + 1..n {
            if h.edge_count() >= s {
                return added;
            }
            if !h.has_edge(u, v) && h.common(u, v) == 0 {
                h.add_edge(u, v);
                added = true;
            }
        }
    }
    added
}

/// Cost of making `N(w) = N(x)`, counted against the original graph so that
/// moves undoing earlier edits look cheap.
fn clone_cost(h: &DenseGraph, orig: &DenseGraph, x: usize, w: usize) -> usize {
    (0..h.order())
        .filter(|&v| v != w && h.has_edge(w, v) != h.has_edge(x, v))
        .filter(|&v| h.has_edge(w, v) == orig.has_edge(w, v))
        .count()
        .max(1)
}

fn best_clone(h: &DenseGraph, orig: &DenseGraph) -> Option<(usize, usize)> {
    let n = h.order();
    let deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut best: Option<(f64, usize, usize)> = None;
    for x in 0..n {
        for w in 0..n {
            if w == x || h.has_edge(x, w) || deg[x] <= deg[w] {
                continue;
            }
            let ratio = (deg[x] - deg[w]) as f64 / clone_cost(h, orig, x, w) as f64;
            if best.is_none_or(|(r, _, _)| ratio > r) {
                best = Some((ratio, x, w));
            }
        }
    }
    best.map(|(_, x, w)| (x, w))
}

fn clone_onto(h: &mut DenseGraph, x: usize, w: usize) {
    h.isolate(w);
    let nbrs: Vec<usize> = h.neighbors(x).collect();
    for v in nbrs {
        h.add_edge(w, v);
    }
}

fn zero_gain_clone(h: &mut DenseGraph, seen: &HashSet<DenseGraph>) -> bool {
    let n = h.order();
    for x in 0..n {
        for w in 0..n {
            if w == x || h.has_edge(x, w) || h.degree(x) != h.degree(w) {
                continue;
            }
            let mut next = h.clone();
            clone_onto(&mut next, x, w);
            if !seen.contains(&next) {
                *h = next;
                return true;
            }
        }
    }
    false
}

/// Complete bipartite graph on a locally maximal cut of `h`, rebalanced so
/// it has at least `s` edges.
fn bipartite_fallback(h: &DenseGraph, s: usize) -> DenseGraph {
    let n = h.order();
    let mut side: Vec<bool> = (0..n).map(|v| v % 2 == 1).collect();
    let gain = |side: &[bool], v: usize| -> i64 {
        h.neighbors(v)
            .map(|u| if side[u] == side[v] { 1 } else { -1 })
            .sum()
    };
    let mut improved = true;
    while improved {
        improved = false;
        for v in 0..n {
            if gain(&side, v) > 0 {
                side[v] = !side[v];
                improved = true;
            }
        }
    }
    loop {
        let a = side.iter().filter(|&&b| b).count();
        if a * (n - a) >= s {
            break;
        }
        let big = a * 2 < n;
        // move the vertex of the larger side that loses the fewest cut edges
        let v = (0..n)
            .filter(|&v| side[v] != big)
            .max_by_key(|&v| (gain(&side, v), std::cmp::Reverse(v)))
            .expect("larger side is non-empty");
        side[v] = big;
    }
    let mut out = DenseGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] {
                out.add_edge(u, v);
            }
        }
    }
    out
}

fn trim(h: &mut DenseGraph, orig: &DenseGraph, s: usize) {
    let surplus = h.edge_count().saturating_sub(s);
    if surplus == 0 {
        return;
    }
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    edges.sort_by_key(|&(u, v)| orig.has_edge(u, v));
    for &(u, v) in &edges[..surplus] {
        h.remove_edge(u, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_plus_one() {
        let c5 = DenseGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let r = grow_trianglefree(&c5, 6).unwrap();
        assert_eq!(r.edges, 6);
        assert!(r.graph.is_triangle_free());
        assert!(r.edits <= 6);
    }

    #[test]
    fn unchanged_at_target() {
        let t2 = DenseGraph::complete_multipartite(&[5, 4]);
        let r = grow_trianglefree(&t2, 20).unwrap();
        assert_eq!(r.edits, 0);
        assert_eq!(r.graph, t2);
    }

    #[test]
    fn empty_to_balanced_bipartite() {
        let r = grow_trianglefree(&DenseGraph::new(100), 2500).unwrap();
        assert_eq!(r.edges, 2500);
        assert_eq!(r.edits, 2500);
        assert!(r.graph.is_triangle_free());
    }

    #[test]
    fn rejects_bad_input() {
        let k3 = DenseGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(grow_trianglefree(&k3, 2).is_err());
        let p = DenseGraph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(grow_trianglefree(&p, 1).is_err());
        assert!(grow_trianglefree(&p, 5).is_err());
    }
}
