//! Edge-swap hill climbing for few triangles at a fixed edge count.

use crate::error::{out_of_range, Result};
use crate::extremal::{construct_h_dense, HFamilySpec};
use crate::graph::{binomial, DenseGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const LOCAL_MAX_ORDER: usize = 512;

#[derive(Clone, Debug)]
pub struct LocalMinConfig {
    pub n: usize,
    pub m: usize,
    /// Swap attempts per restart.
    pub iters: usize,
    pub seed: u64,
    pub random_restarts: usize,
    /// Restarts from the extremal family member adjusted to `m` edges; the
    /// first one is unperturbed.
    pub family_restarts: usize,
}

impl LocalMinConfig {
    pub fn new(n: usize, m: usize, iters: usize, seed: u64) -> LocalMinConfig {
        LocalMinConfig {
            n,
            m,
            iters,
            seed,
            random_restarts: 2,
            family_restarts: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalMinResult {
    pub n: usize,
    pub m: usize,
    pub triangles: u64,
    /// `triangles / C(n, 3)`.
    pub density: f64,
    pub graph: DenseGraph,
    /// Triangle count of the unperturbed family start, when one was used.
    pub family_start: Option<u64>,
}

/// Edge and non-edge lists with O(1) sampling and swapping.
struct PairSets {
    edges: Vec<(u32, u32)>,
    holes: Vec<(u32, u32)>,
}

impl PairSets {
    fn new(g: &DenseGraph) -> PairSets {
        let n = g.order();
        let mut s = PairSets {
            edges: Vec::new(),
            holes: Vec::new(),
        };
        for u in 0..n {
            for v in u + 1..n {
                let list = if g.has_edge(u, v) { &mut s.edges } else { &mut s.holes };
                list.push((u as u32, v as u32));
            }
        }
        s
    }

    fn swap(&mut self, ei: usize, hi: usize) {
        std::mem::swap(&mut self.edges[ei], &mut self.holes[hi]);
    }
}

fn random_graph(n: usize, m: usize, rng: &mut ChaCha8Rng) -> DenseGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = DenseGraph::new(n);
    for &(u, v) in &pairs[..m] {
        g.add_edge(u, v);
    }
    g
}

/// Greedily adds cheapest or removes costliest edges until exactly `m` remain.
pub fn adjust_edges(g: &mut DenseGraph, m: usize) {
    let n = g.order();
    while g.edge_count() > m {
        let (u, v) = g.edges().max_by_key(|&(u, v)| (g.common(u, v), std::cmp::Reverse((u, v)))).expect("has edges");
        g.remove_edge(u, v);
    }
    while g.edge_count() < m {
        let (u, v) = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .min_by_key(|&(u, v)| (g.common(u, v), (u, v)))
            .expect("has non-edges");
        g.add_edge(u, v);
    }
}

/// The extremal family member at density `m / C(n,2)`, adjusted to `m` edges.
pub fn family_start(n: usize, m: usize) -> Result<DenseGraph> {
    let total = n * (n - 1) / 2;
    let mut g = if m >= total {
        DenseGraph::complete_multipartite(&vec![1; n])
    } else {
        construct_h_dense(&HFamilySpec::new(m as f64 / total as f64, n))?
    };
    adjust_edges(&mut g, m);
    Ok(g)
}

const SAMPLES: usize = 4;

/// Hill climbing from `start`: every step swaps one edge for one non-edge
/// and is kept when the triangle count does not increase.
pub fn climb(start: &DenseGraph, iters: usize, rng: &mut ChaCha8Rng) -> (DenseGraph, u64) {
    let mut g = start.clone();
    let mut tri = g.triangle_count() as i64;
    let mut sets = PairSets::new(&g);
    if sets.edges.is_empty() || sets.holes.is_empty() {
        return (g, tri as u64);
    }
    for _ in 0..iters {
        let ei = (0..SAMPLES)
            .map(|_| rng.gen_range(0..sets.edges.len()))
            .max_by_key(|&i| {
                let (u, v) = sets.edges[i];
                g.common(u as usize, v as usize)
            })
            .expect("samples");
        let (u, v) = sets.edges[ei];
        let (u, v) = (u as usize, v as usize);
        let lost = g.common(u, v) as i64;
        g.remove_edge(u, v);
        let hi = (0..SAMPLES)
            .map(|_| rng.gen_range(0..sets.holes.len()))
            .min_by_key(|&i| {
                let (x, y) = sets.holes[i];
                g.common(x as usize, y as usize)
            })
            .expect("samples");
        let (x, y) = sets.holes[hi];
        let (x, y) = (x as usize, y as usize);
        let gained = g.common(x, y) as i64;
        if gained <= lost {
            g.add_edge(x, y);
            sets.swap(ei, hi);
            tri += gained - lost;
        } else {
            g.add_edge(u, v);
        }
    }
    debug_assert_eq!(tri as u64, g.triangle_count());
    (g, tri as u64)
}

pub fn local_min(n: usize, m: usize, iters: usize, seed: u64) -> Result<LocalMinResult> {
    local_min_with(&LocalMinConfig::new(n, m, iters, seed))
}

pub fn local_min_with(cfg: &LocalMinConfig) -> Result<LocalMinResult> {
    let (n, m) = (cfg.n, cfg.m);
    if !(3..=LOCAL_MAX_ORDER).contains(&n) {
        return Err(out_of_range("n", n, "3..=512"));
    }
    if m > n * (n - 1) / 2 {
        return Err(out_of_range("m", m, "0..=C(n,2)"));
    }
    let restarts = cfg.random_restarts + cfg.family_restarts;
    if restarts == 0 {
        return Err(out_of_range("restarts", 0, ">= 1"));
    }
    let base = if cfg.family_restarts > 0 { Some(family_start(n, m)?) } else { None };
    let family_count = base.as_ref().map(|g| g.triangle_count());
    let runs: Vec<(DenseGraph, u64)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let start = if i < cfg.family_restarts {
                let mut g = base.clone().expect("family start");
                if i > 0 {
                    perturb(&mut g, n, &mut rng);
                }
                g
            } else {
                random_graph(n, m, &mut rng)
            };
            climb(&start, cfg.iters, &mut rng)
        })
        .collect();
    let (graph, triangles) = runs.into_iter().min_by_key(|(_, t)| *t).expect("at least one restart");
    Ok(LocalMinResult {
        n,
        m,
        triangles,
        density: triangles as f64 / binomial(n as u64, 3) as f64,
        graph,
        family_start: family_count,
    })
}

/// `n/2` random edge/non-edge swaps.
fn perturb(g: &mut DenseGraph, n: usize, rng: &mut ChaCha8Rng) {
    let mut sets = PairSets::new(g);
    if sets.edges.is_empty() || sets.holes.is_empty() {
        return;
    }
    for _ in 0..n / 2 {
        let ei = rng.gen_range(0..sets.edges.len());
        let hi = rng.gen_range(0..sets.holes.len());
        let (u, v) = sets.edges[ei];
        let (x, y) = sets.holes[hi];
        g.remove_edge(u as usize, v as usize);
        g.add_edge(x as usize, y as usize);
        sets.swap(ei, hi);
    }
}
