//! Canonical labeling by individualization and refinement.
//!
//! The search explores the tree of ordered partitions obtained by repeatedly
//! refining to an equitable partition and individualizing a vertex of the
//! first non-singleton cell. Each leaf is a vertex ordering; the canonical
//! form is the leaf whose relabeled adjacency code is smallest. Subtrees are
//! skipped when a twin transposition or a previously discovered automorphism
//! maps them onto an explored sibling.

use super::{bits, Graph, MAX_ORDER};

type Cells = Vec<Vec<u8>>;

const MAX_STORED_AUTOS: usize = 64;

/// Canonical form of `g` under relabelings that respect the ordered initial
/// partition `cells` (vertices may only move within their cell, and cells
/// keep their relative order). Returns the relabeled graph and the leaf
/// ordering: new vertex `i` is old vertex `order[i]`.
pub(crate) fn canonical_with_cells(g: &Graph, cells: Cells) -> (Graph, [u8; MAX_ORDER]) {
    let n = g.order();
    if n <= 1 {
        let mut order = [0u8; MAX_ORDER];
        for (i, o) in order.iter_mut().enumerate().take(n) {
            *o = i as u8;
        }
        return (*g, order);
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    let mut fixed = Vec::with_capacity(n);
    search.descend(cells, &mut fixed);
    let (_, order) = search.best.expect("search tree has at least one leaf");
    let perm: Vec<usize> = order[..n].iter().map(|&v| v as usize).collect();
    (g.permuted(&perm), order)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u128, [u8; MAX_ORDER])>,
    autos: Vec<[u8; MAX_ORDER]>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Cells, fixed: &mut Vec<u8>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<u8> = Vec::new();
        for &v in &cells[target] {
            if explored.iter().any(|&u| are_twins(self.g, u, v)) {
                continue;
            }
            if self.autos.iter().any(|gamma| {
                fixed.iter().all(|&f| gamma[f as usize] == f)
                    && explored.iter().any(|&u| gamma[u as usize] == v)
            }) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let mut order = [0u8; MAX_ORDER];
        for (i, c) in cells.iter().enumerate() {
            order[i] = c[0];
        }
        let code = relabeled_code(self.g, &order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, _)) if code < *best => self.best = Some((code, order)),
            Some((best, best_order)) if code == *best => {
                if self.autos.len() < MAX_STORED_AUTOS {
                    let mut gamma = [0u8; MAX_ORDER];
                    for i in 0..self.g.order() {
                        gamma[order[i] as usize] = best_order[i];
                    }
                    self.autos.push(gamma);
                }
            }
            Some(_) => {}
        }
    }
}

fn are_twins(g: &Graph, u: u8, v: u8) -> bool {
    let (u, v) = (u as usize, v as usize);
    g.neighbors(u) & !(1 << v) == g.neighbors(v) & !(1 << u)
}

fn relabeled_code(g: &Graph, order: &[u8; MAX_ORDER]) -> u128 {
    let mut code = 0u128;
    for j in 1..g.order() {
        let row = g.neighbors(order[j] as usize);
        for &oi in &order[..j] {
            code = code << 1 | (row >> oi & 1) as u128;
        }
    }
    code
}

/// Refines `cells` to the coarsest equitable partition finer than it.
/// Cells are split in place by their neighbour-count signature against the
/// current partition, sub-cells ordered by signature, so the result does not
/// depend on vertex names.
fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        let masks: Vec<u16> = cells
            .iter()
            .map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v))
            .collect();
        let mut next: Cells = Vec::with_capacity(g.order());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(u128, u8)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbors(v as usize);
                    let sig = masks
                        .iter()
                        .fold(0u128, |s, &m| s << 5 | (row & m).count_ones() as u128);
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
            if keyed[0].0 != keyed[keyed.len() - 1].0 {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

/// Number of automorphisms, by backtracking over adjacency-preserving maps.
/// Exponential in the worst case; intended for the small graphs (at most
/// eight or so vertices) that appear in join evaluations.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.order();
    let mut image = vec![usize::MAX; n];
    let mut used = 0u16;
    count_maps(g, 0, &mut image, &mut used)
}

fn count_maps(g: &Graph, v: usize, image: &mut [usize], used: &mut u16) -> u64 {
    let n = g.order();
    if v == n {
        return 1;
    }
    let mut total = 0;
    for w in bits(g.vertex_mask() & !*used) {
        if g.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        *used |= 1 << w;
        total += count_maps(g, v + 1, image, used);
        *used &= !(1 << w);
    }
    image[v] = usize::MAX;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        let p: f64 = rng.gen();
        let mut g = Graph::new(n).unwrap();
        for v in 1..n {
            for u in 0..v {
                if rng.gen::<f64>() < p {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn shuffled(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.permuted(&perm)
    }

    /// Global lexicographic minimum over all n! relabelings.
    fn brute_min_code(g: &Graph) -> u128 {
        fn rec(g: &Graph, order: &mut Vec<usize>, used: u16, best: &mut u128) {
            if order.len() == g.order() {
                *best = (*best).min(g.permuted(order).code());
                return;
            }
            for v in 0..g.order() {
                if used >> v & 1 == 0 {
                    order.push(v);
                    rec(g, order, used | 1 << v, best);
                    order.pop();
                }
            }
        }
        let mut best = u128::MAX;
        rec(g, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn path_relabelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn idempotent_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=8);
            let g = random_graph(&mut rng, n);
            let c = g.canonical();
            assert_eq!(c.canonical(), c);
        }
    }

    #[test]
    fn invariant_under_relabeling_up_to_16() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=16);
            let g = random_graph(&mut rng, n);
            let h = shuffled(&mut rng, &g);
            assert_eq!(g.canonical(), h.canonical(), "{g:?}");
        }
    }

    #[test]
    fn symmetric_graphs_finish_quickly() {
        let graphs = [
            Graph::empty(16).unwrap(),
            Graph::complete(16).unwrap(),
            Graph::turan(4, 16).unwrap(),
            Graph::cycle(16).unwrap(),
            // 4x4 rook's graph, strongly regular
            Graph::from_edges(
                16,
                &(0..16)
                    .flat_map(|u| (u + 1..16).map(move |v| (u, v)))
                    .filter(|&(u, v)| u / 4 == v / 4 || u % 4 == v % 4)
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in graphs {
            assert_eq!(g.canonical(), shuffled(&mut rng, &g).canonical());
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c6 = Graph::cycle(6).unwrap();
        let two_triangles = Graph::disjoint_union(&[Graph::complete(3).unwrap(); 2]).unwrap();
        assert_ne!(c6.canonical(), two_triangles.canonical());
    }

    #[test]
    fn canonical_code_is_minimal_within_search_tree_on_small_graphs() {
        // The search restricts to orderings compatible with refinement, so the
        // result is at least as large as the global minimum; it must still be
        // a relabeling of the input.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let g = random_graph(&mut rng, n);
            let c = g.canonical();
            assert!(c.code() >= brute_min_code(&g));
            assert_eq!(c.edge_count(), g.edge_count());
            let mut d1 = c.degrees();
            let mut d2 = g.degrees();
            d1.sort();
            d2.sort();
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn respects_initial_cells() {
        // P3 with the centre pinned first vs an end pinned first are different
        // rooted graphs.
        let p3 = Graph::path(3).unwrap();
        let centre = canonical_with_cells(&p3, vec![vec![1], vec![0, 2]]).0;
        let end = canonical_with_cells(&p3, vec![vec![0], vec![1, 2]]).0;
        assert_ne!(centre, end);
        assert_eq!(centre.degree(0), 2);
        assert_eq!(end.degree(0), 1);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Graph::complete(4).unwrap()), 24);
        assert_eq!(automorphism_count(&Graph::cycle(4).unwrap()), 8);
        assert_eq!(automorphism_count(&Graph::path(3).unwrap()), 2);
        assert_eq!(automorphism_count(&Graph::new(0).unwrap()), 1);
    }
}
