use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trimin::extremal::{goodman_bound, h3, HFamilySpec};
use trimin::graph::{DenseGraph, Graph};
use trimin::search::{
    brute_min, distance_to_turan, edit_distance_to_family, grow_trianglefree, local_min, local_min_with,
    minimize_ratios, project_ratios, random_trianglefree, ratio_objective, LocalMinConfig,
};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn cliques(n: usize, adj: &[u16], r: usize) -> u64 {
    fn go(adj: &[u16], cand: u16, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += go(adj, rest & adj[v], left - 1);
        }
        total
    }
    go(adj, ((1u32 << n) - 1) as u16, r)
}

/// Minimum `K_r` count for every edge count, over all labeled graphs.
fn labeled_minima(n: usize, r: usize) -> Vec<u64> {
    let ps = pairs(n);
    let mut best = vec![u64::MAX; ps.len() + 1];
    for mask in 0u32..1 << ps.len() {
        let mut adj = vec![0u16; n];
        for (i, &(u, v)) in ps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let m = mask.count_ones() as usize;
        best[m] = best[m].min(cliques(n, &adj, r));
    }
    best
}

#[test]
fn brute_matches_labeled_enumeration() {
    for n in 3..=6 {
        for r in [3, 4] {
            if r > n {
                continue;
            }
            for (m, &want) in labeled_minima(n, r).iter().enumerate() {
                assert_eq!(brute_min(n, m, r).unwrap().min_count, want, "n={n} m={m} r={r}");
            }
        }
    }
}

#[test]
fn rademacher_and_goodman() {
    for n in 4..=8 {
        let m = n * n / 4 + 1;
        assert_eq!(brute_min(n, m, 3).unwrap().min_count, (n / 2) as u64, "n={n}");
    }
    for n in 3..=7 {
        for m in 0..=n * (n - 1) / 2 {
            let p = brute_min(n, m, 3).unwrap();
            assert!(p.min_count as f64 >= goodman_bound(3, m as u64, n as u64) - 1e-9, "n={n} m={m}");
        }
    }
}

fn edit_oracle_graph(g: &DenseGraph, h: &[(usize, usize)]) -> usize {
    let n = g.order();
    let mut hm = DenseGraph::new(n);
    for &(u, v) in h {
        hm.add_edge(u, v);
    }
    g.edit_distance(&hm)
}

#[test]
fn grow_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..60 {
        let n = rng.gen_range(4..=40);
        let g = random_trianglefree(n, rng.gen_range(0.0..1.0), &mut rng);
        let e = g.edge_count();
        let s = rng.gen_range(e..=n * n / 4);
        let out = grow_trianglefree(&g, s).unwrap();
        assert!(out.graph.is_triangle_free(), "case {case}");
        assert_eq!(out.graph.edge_count(), s);
        assert_eq!(out.edges, s);
        assert_eq!(out.edits, g.edit_distance(&out.graph));
        assert!(out.edits >= s - e);
        if !out.fallback && (s - e) as f64 <= 0.005 * (n * n) as f64 {
            assert!(out.edits as f64 <= 0.05 * (n * n) as f64, "case {case}");
        }
    }
}

/// Minimum edits to any labeled member of the family: vertices go to the
/// shell parts or to `U`, and `U` carries any triangle-free graph with the
/// required number of edges.
fn family_oracle(g: &DenseGraph, a: f64) -> usize {
    let n = g.order();
    let parts = HFamilySpec::new(a, n).part_sizes().unwrap();
    let t = parts.len() - 1;
    let mut sizes: Vec<usize> = parts[..t - 1].to_vec();
    sizes.push(parts[t - 1] + parts[t]);
    let s = parts[t - 1] * parts[t];
    let mut best = usize::MAX;
    let mut block = vec![0usize; n];
    assign(g, &sizes, s, 0, &mut block, &mut vec![0; sizes.len()], &mut best);
    best
}

fn assign(g: &DenseGraph, sizes: &[usize], s: usize, v: usize, block: &mut Vec<usize>, used: &mut Vec<usize>, best: &mut usize) {
    let n = g.order();
    if v == n {
        let ublock = sizes.len() - 1;
        let mut base = Vec::new();
        for (x, y) in pairs(n) {
            if block[x] != block[y] {
                base.push((x, y));
            }
        }
        let u: Vec<usize> = (0..n).filter(|&x| block[x] == ublock).collect();
        let upairs: Vec<(usize, usize)> = pairs(u.len()).into_iter().map(|(i, j)| (u[i], u[j])).collect();
        for mask in 0u32..1 << upairs.len() {
            if mask.count_ones() as usize != s {
                continue;
            }
            let mut h = base.clone();
            let mut ug = DenseGraph::new(n);
            for (i, &(x, y)) in upairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    h.push((x, y));
                    ug.add_edge(x, y);
                }
            }
            if ug.is_triangle_free() {
                *best = (*best).min(edit_oracle_graph(g, &h));
            }
        }
        return;
    }
    for b in 0..sizes.len() {
        if used[b] < sizes[b] {
            used[b] += 1;
            block[v] = b;
            assign(g, sizes, s, v + 1, block, used, best);
            used[b] -= 1;
        }
    }
}

#[test]
fn exact_edit_distance_matches_member_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, n) in [(0.7, 7), (0.6, 7), (0.75, 8), (0.55, 6)] {
        for _ in 0..6 {
            let mut g = DenseGraph::new(n);
            for (u, v) in pairs(n) {
                if rng.gen_bool(a) {
                    g.add_edge(u, v);
                }
            }
            let d = edit_distance_to_family(&g, a).unwrap();
            assert!(d.exact);
            assert_eq!(d.lower_edits, d.upper_edits);
            assert_eq!(d.upper_edits as usize, family_oracle(&g, a), "a={a} n={n}");
        }
    }
}

#[test]
fn heuristic_edit_distance_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = 0.7;
    let mut g = trimin::extremal::construct_h_dense(&HFamilySpec::new(a, 30)).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for _ in 0..3 {
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        g.remove_edge(u, v);
    }
    let d = edit_distance_to_family(&g, a).unwrap();
    // three deletions from a member: the bracket must contain a value <= 3
    assert!(d.lower_edits <= d.upper_edits && d.upper_edits <= 3, "{d:?}");
    assert_eq!(d.exact, d.lower_edits == d.upper_edits);
}

#[test]
fn ratios_are_not_beaten_by_random_feasible_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in [0.6, 0.7, 0.76, 0.85] {
        let best = minimize_ratios(a).unwrap();
        assert!((best.objective - h3(a).unwrap() / 6.0).abs() < 1e-8);
        for _ in 0..2000 {
            let s = rng.gen_range(2..=7);
            let raw: Vec<f64> = (0..s).map(|_| rng.gen_range(0.0..1.0)).collect();
            if let Some(p) = project_ratios(&raw, 1.0, 1.0 - a) {
                if p.iter().all(|&x| x >= 0.0) {
                    assert!(ratio_objective(0.0, &p) >= best.objective - 1e-12, "a={a} {p:?}");
                }
            }
        }
    }
}

#[test]
fn local_search_is_seeded_and_consistent() {
    let (n, m) = (30, 300);
    let x = local_min(n, m, 3000, 9).unwrap();
    let y = local_min(n, m, 3000, 9).unwrap();
    assert_eq!(x.triangles, y.triangles);
    assert_eq!(x.graph.edit_distance(&y.graph), 0);
    assert_eq!(x.graph.edge_count(), m);
    assert_eq!(x.graph.triangle_count(), x.triangles);
    assert!(x.triangles <= x.family_start.unwrap());
    assert!(x.triangles as f64 >= goodman_bound(3, m as u64, n as u64) - 1e-9);
    let mut cfg = LocalMinConfig::new(n, m, 3000, 9);
    cfg.family_restarts = 0;
    let z = local_min_with(&cfg).unwrap();
    assert!(z.family_start.is_none());
    assert!(z.triangles >= x.triangles || z.triangles as f64 >= goodman_bound(3, m as u64, n as u64));
}

/// Distance to `T_t(n)` over every labeling.
fn turan_oracle(g: &Graph, t: usize) -> u64 {
    let n = g.order();
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = (0..n).collect();
    let tg = Graph::turan(t, n).unwrap();
    permutohedron_like(&mut perm, 0, &mut |p| {
        let d = pairs(n).iter().filter(|&&(u, v)| g.has_edge(p[u], p[v]) != tg.has_edge(u, v)).count() as u64;
        best = best.min(d);
    });
    best
}

fn permutohedron_like(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutohedron_like(p, k + 1, f);
        p.swap(k, i);
    }
}

#[test]
fn turan_distance_matches_all_labelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let n = rng.gen_range(3..=7);
        let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(0.6)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        for t in 1..=n.min(4) {
            assert_eq!(distance_to_turan(&g, t), turan_oracle(&g, t), "{edges:?} t={t}");
        }
    }
}
