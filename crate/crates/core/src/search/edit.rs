//! Edit distance from a graph to the extremal family at a given density.
//!
//! A member has `t - 1` shell parts of size `p` (independent, completely
//! joined to everything outside them) and a set `U` of size `u` carrying a
//! triangle-free graph with exactly `s` edges. For a fixed assignment of
//! vertices to shell parts and `U`, the cost splits into shell
//! disagreements plus the cheapest edit of `G[U]` to a triangle-free graph
//! with `s` edges.

use super::grow::grow_trianglefree;
use super::partition::min_inside;
use crate::error::{out_of_range, Result};
use crate::extremal::HFamilySpec;
use crate::graph::{binomial, enumerate_graphs, subsets_of_size, DenseGraph, Graph};
use crate::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

/// Largest order handled by enumerating every part assignment.
pub const EDIT_EXACT_MAX_ORDER: usize = 12;
/// Largest `|U|` for which the interior edit is solved exactly.
pub const EDIT_EXACT_U_MAX: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct EditDistance {
    pub n: usize,
    pub lower_edits: u64,
    pub upper_edits: u64,
    /// `lower_edits / C(n, 2)`.
    pub lower: Rational,
    /// `upper_edits / C(n, 2)`.
    pub upper: Rational,
    /// Lower and upper agree and both are proven.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct EditConfig {
    /// Annealing steps per restart above the exact-mode order.
    pub iters: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for EditConfig {
    fn default() -> Self {
        EditConfig {
            iters: 200_000,
            restarts: 4,
            seed: 0,
        }
    }
}

/// Shape of the family member at `(a, n)`.
#[derive(Clone, Copy, Debug)]
struct Shape {
    /// Number of shell parts.
    k: usize,
    p: usize,
    u: usize,
    s: usize,
}

impl Shape {
    fn new(a: f64, n: usize) -> Result<Shape> {
        let parts = HFamilySpec::new(a, n).part_sizes()?;
        let t = parts.len() - 1;
        Ok(Shape {
            k: t - 1,
            p: parts[0],
            u: parts[t - 1] + parts[t],
            s: parts[t - 1] * parts[t],
        })
    }

    fn edges(&self) -> u64 {
        let (k, p, u) = (self.k as u64, self.p as u64, self.u as u64);
        k * k.saturating_sub(1) / 2 * p * p + k * p * u + self.s as u64
    }

    /// Pairs not inside a shell part or inside `U`.
    fn cross_pairs(&self, n: usize) -> u64 {
        let n = n as u64;
        n * (n - 1) / 2 - self.k as u64 * binomial(self.p as u64, 2) as u64 - binomial(self.u as u64, 2) as u64
    }
}

pub fn edit_distance_to_family(g: &DenseGraph, a: f64) -> Result<EditDistance> {
    edit_distance_with(g, a, &EditConfig::default())
}

pub fn edit_distance_with(g: &DenseGraph, a: f64, cfg: &EditConfig) -> Result<EditDistance> {
    let n = g.order();
    if n < 2 {
        return Err(out_of_range("n", n, ">= 2"));
    }
    let shape = Shape::new(a, n)?;
    let (lower, upper) = if n <= EDIT_EXACT_MAX_ORDER {
        exact_mode(&g.to_graph()?, shape)
    } else {
        heuristic_mode(g, shape, cfg)?
    };
    let total = BigInt::from(binomial(n as u64, 2));
    Ok(EditDistance {
        n,
        lower_edits: lower,
        upper_edits: upper,
        lower: Rational::new(BigInt::from(lower), total.clone()),
        upper: Rational::new(BigInt::from(upper), total),
        exact: lower == upper,
    })
}

fn exact_mode(g: &Graph, shape: Shape) -> (u64, u64) {
    let n = g.order();
    let all = g.vertex_mask();
    let base = shape.cross_pairs(n) as i64 - g.edge_count() as i64;
    let sizes = vec![shape.p; shape.k];
    let mut best = (u64::MAX, u64::MAX);
    for umask in subsets_of_size(all, shape.u) {
        let shell = min_inside(g, all & !umask, &sizes) as i64;
        let h = g.induced_mask(umask);
        let (lo, hi) = interior_cost(&h, shape.s);
        let fixed = (base + 2 * shell + h.edge_count() as i64) as u64;
        best.0 = best.0.min(fixed + lo);
        best.1 = best.1.min(fixed + hi);
    }
    best
}

type Memo = HashMap<(Graph, usize), (u64, u64)>;

static INTERIOR: LazyLock<Mutex<Memo>> = LazyLock::new(Default::default);
type Targets = HashMap<(usize, usize), Arc<Vec<Graph>>>;

static TARGETS: LazyLock<Mutex<Targets>> = LazyLock::new(Default::default);

/// Bounds on the fewest edits taking `h` to a triangle-free graph with `s`
/// edges; exact (both equal) when `|h| <= 8`.
fn interior_cost(h: &Graph, s: usize) -> (u64, u64) {
    let key = (h.canonical(), s);
    if let Some(&v) = INTERIOR.lock().expect("cache poisoned").get(&key) {
        return v;
    }
    let h = key.0;
    let e = h.edge_count();
    let v = if h.is_triangle_free() && e == s {
        (0, 0)
    } else if h.order() <= EDIT_EXACT_U_MAX {
        let targets = targets(h.order(), s);
        let best = targets.iter().map(|t| max_overlap(&h, t)).max().unwrap_or(0);
        let d = (e + s - 2 * best as usize) as u64;
        (d, d)
    } else {
        let built = triangle_free_near(&DenseGraph::from(&h), s);
        (e.abs_diff(s) as u64, built as u64)
    };
    INTERIOR.lock().expect("cache poisoned").insert(key, v);
    v
}

fn targets(order: usize, s: usize) -> Arc<Vec<Graph>> {
    if let Some(t) = TARGETS.lock().expect("cache poisoned").get(&(order, s)) {
        return t.clone();
    }
    let list: Vec<Graph> = if order == 0 {
        vec![]
    } else {
        enumerate_graphs(order)
            .expect("order at most 8")
            .into_iter()
            .filter(|g| g.edge_count() == s && g.is_triangle_free())
            .collect()
    };
    let list = Arc::new(list);
    TARGETS.lock().expect("cache poisoned").insert((order, s), list.clone());
    list
}

/// Largest number of common edges of `h` and a relabeling of `t`.
fn max_overlap(h: &Graph, t: &Graph) -> u32 {
    let n = h.order();
    let cap = h.edge_count().min(t.edge_count()) as u32;
    // H edges with larger endpoint >= i
    let mut remaining = vec![0u32; n + 1];
    for i in (0..n).rev() {
        remaining[i] = remaining[i + 1] + (h.neighbors(i) & ((1u16 << i) - 1)).count_ones();
    }
    let mut best = 0;
    let mut image = vec![0usize; n];
    overlap_search(h, t, 0, 0, 0, &remaining, &mut image, &mut best, cap);
    best
}

#[allow(clippy::too_many_arguments)]
fn overlap_search(
    h: &Graph,
    t: &Graph,
    i: usize,
    used: u16,
    acc: u32,
    remaining: &[u32],
    image: &mut [usize],
    best: &mut u32,
    cap: u32,
) {
    if *best >= cap || acc + remaining[i] <= *best {
        return;
    }
    if i == h.order() {
        *best = acc;
        return;
    }
    for x in 0..h.order() {
        if used >> x & 1 == 1 {
            continue;
        }
        let gained = (0..i)
            .filter(|&j| h.has_edge(i, j) && t.has_edge(x, image[j]))
            .count() as u32;
        image[i] = x;
        overlap_search(h, t, i + 1, used | 1 << x, acc + gained, remaining, image, best, cap);
    }
}

/// Edits used by a concrete triangle-free graph with `s` edges built from `h`.
fn triangle_free_near(h: &DenseGraph, s: usize) -> usize {
    let mut f = h.clone();
    loop {
        let worst = f.edges().map(|(x, y)| (f.common(x, y), (x, y))).max();
        match worst {
            Some((c, (x, y))) if c > 0 => f.remove_edge(x, y),
            _ => break,
        }
    }
    let e = f.edge_count();
    if e > s {
        let extra: Vec<_> = f.edges().take(e - s).collect();
        for (x, y) in extra {
            f.remove_edge(x, y);
        }
    } else if e < s {
        f = grow_trianglefree(&f, s).expect("target within the bipartite bound").graph;
    }
    f.edit_distance(h)
}

/// Edge-count and degree-sequence lower bounds, annealed assignment upper
/// bound.
fn heuristic_mode(g: &DenseGraph, shape: Shape, cfg: &EditConfig) -> Result<(u64, u64)> {
    let n = g.order();
    if cfg.restarts == 0 {
        return Err(out_of_range("restarts", 0, ">= 1"));
    }
    let e = g.edge_count() as u64;
    let lower = e.abs_diff(shape.edges()).max(degree_bound(g, shape));
    let runs: Vec<(u64, Vec<usize>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            anneal(g, shape, cfg.iters, i == 0, &mut rng)
        })
        .collect();
    let (_, block) = runs.into_iter().min_by_key(|r| r.0).expect("at least one restart");
    let base = shape.cross_pairs(n) as i64 - e as i64;
    let mut inner = vec![0i64; shape.k + 1];
    for (x, y) in g.edges() {
        if block[x] == block[y] {
            inner[block[x]] += 1;
        }
    }
    let shell: i64 = inner[..shape.k].iter().sum();
    let fixed = (base + 2 * shell + inner[shape.k]) as u64;
    let uverts: Vec<usize> = (0..n).filter(|&v| block[v] == shape.k).collect();
    let mut h = DenseGraph::new(uverts.len());
    for (i, &x) in uverts.iter().enumerate() {
        for (j, &y) in uverts.iter().enumerate().skip(i + 1) {
            if g.has_edge(x, y) {
                h.add_edge(i, j);
            }
        }
    }
    let interior = if h.order() <= EDIT_EXACT_U_MAX {
        interior_cost(&h.to_graph()?, shape.s).1
    } else {
        triangle_free_near(&h, shape.s) as u64
    };
    Ok((lower, fixed + interior))
}

/// Every edit moves two degrees by one; shell vertices need degree `n - p`
/// and `U` vertices a degree in `[n - u, n - 1]`.
fn degree_bound(g: &DenseGraph, shape: Shape) -> u64 {
    let n = g.order() as i64;
    let (p, u) = (shape.p as i64, shape.u as i64);
    let ucost = |d: i64| (n - u - d).max(0) + (d - (n - 1)).max(0);
    let mut total = 0i64;
    let mut diffs: Vec<i64> = (0..g.order())
        .map(|v| {
            let d = g.degree(v) as i64;
            total += ucost(d);
            (d - (n - p)).abs() - ucost(d)
        })
        .collect();
    diffs.sort_unstable();
    total += diffs[..shape.k * shape.p].iter().sum::<i64>();
    (total as u64).div_ceil(2)
}

/// Swap annealing on block labels (`0..k` shell, `k` for `U`); returns the
/// proxy cost and labels. The proxy counts `U` interior edits by the edge
/// count gap alone.
fn anneal(g: &DenseGraph, shape: Shape, iters: usize, by_degree: bool, rng: &mut ChaCha8Rng) -> (u64, Vec<usize>) {
    let n = g.order();
    let k = shape.k;
    let mut order: Vec<usize> = (0..n).collect();
    if by_degree {
        // U vertices tend to have the smaller degrees
        order.sort_by_key(|&v| (g.degree(v), v));
    } else {
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    }
    let mut block = vec![k; n];
    for (i, &v) in order.iter().skip(shape.u).enumerate() {
        block[v] = i / shape.p.max(1);
    }
    if k == 0 {
        return (0, block);
    }
    let mut deg_to = vec![vec![0i64; k + 1]; n];
    let mut inner = vec![0i64; k + 1];
    for (x, y) in g.edges() {
        deg_to[x][block[y]] += 1;
        deg_to[y][block[x]] += 1;
        if block[x] == block[y] {
            inner[block[x]] += 1;
        }
    }
    let s = shape.s as i64;
    let proxy = |inner: &[i64]| 2 * inner[..k].iter().sum::<i64>() + inner[k] + (inner[k] - s).abs();
    let mut cost = proxy(&inner);
    let mut best = (cost, block.clone());
    let (t0, t1) = (2.0f64, 0.02f64);
    for step in 0..iters {
        let temp = t0 * (t1 / t0).powf(step as f64 / iters as f64);
        let v = rng.gen_range(0..n);
        let w = rng.gen_range(0..n);
        let (bv, bw) = (block[v], block[w]);
        if bv == bw {
            continue;
        }
        let vw = i64::from(g.has_edge(v, w));
        let mut next = inner.clone();
        next[bv] += deg_to[w][bv] - deg_to[v][bv] - vw;
        next[bw] += deg_to[v][bw] - deg_to[w][bw] - vw;
        let new_cost = proxy(&next);
        let delta = new_cost - cost;
        if delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp() {
            for x in g.neighbors(v) {
                deg_to[x][bv] -= 1;
                deg_to[x][bw] += 1;
            }
            for x in g.neighbors(w) {
                deg_to[x][bw] -= 1;
                deg_to[x][bv] += 1;
            }
            block.swap(v, w);
            inner = next;
            cost = new_cost;
            if cost < best.0 {
                best = (cost, block.clone());
            }
        }
    }
    (best.0 as u64, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::construct_h_dense;

    #[test]
    fn members_are_at_distance_zero() {
        for (a, n) in [(0.7, 12), (0.55, 10), (0.3, 9), (0.76, 11)] {
            let g = construct_h_dense(&HFamilySpec::new(a, n)).unwrap();
            let d = edit_distance_to_family(&g, a).unwrap();
            assert!(d.exact && d.upper_edits == 0, "a={a} n={n}: {d:?}");
        }
    }

    #[test]
    fn turan_four_twelve() {
        let t4 = DenseGraph::complete_multipartite(&[3, 3, 3, 3]);
        assert_eq!(edit_distance_to_family(&t4, 0.75).unwrap().upper_edits, 0);
        let mut plus = t4.clone();
        plus.add_edge(0, 1);
        let d = edit_distance_to_family(&plus, 0.75).unwrap();
        assert!(d.exact);
        assert!(d.upper <= Rational::new(2.into(), 66.into()));
        assert_eq!(d.upper_edits, 1);
    }

    #[test]
    fn interior_cost_matches_brute_force() {
        // P4 to a triangle-free graph with 4 edges on 4 vertices: C4, one edit
        let p4 = Graph::path(4).unwrap();
        assert_eq!(interior_cost(&p4, 4), (1, 1));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(interior_cost(&k4, 4), (2, 2));
        assert_eq!(interior_cost(&k4, 0), (6, 6));
    }

    #[test]
    fn heuristic_brackets_members() {
        let spec = HFamilySpec::new(0.7, 40);
        let g = construct_h_dense(&spec).unwrap();
        let d = edit_distance_to_family(&g, 0.7).unwrap();
        assert_eq!(d.lower_edits, 0);
        assert_eq!(d.upper_edits, 0);
        let mut h = g.clone();
        h.remove_edge(0, 39);
        h.remove_edge(1, 38);
        let d = edit_distance_to_family(&h, 0.7).unwrap();
        assert_eq!(d.lower_edits, 2);
        assert!(d.upper_edits >= 2 && d.upper_edits <= 4, "{d:?}");
    }
}
