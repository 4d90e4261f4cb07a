//! The exceptional 5-vertex graphs and the exhaustive 5-vertex case check.

use crate::graph::{subsets_of_size, Graph};

// vertex names used below
const X1: usize = 0;
const X2: usize = 1;
const X3: usize = 2;
const Y: usize = 3;
const Z: usize = 4;

/// `(G1, G2)` on `{x1, x2, x3, y, z}`: `x1x2` an edge, `y` adjacent to every
/// `xi`, `z` adjacent to `x1` only, and additionally to `x3` in `G2`.
pub fn g1_g2() -> (Graph, Graph) {
    let base = [(X1, X2), (Y, X1), (Y, X2), (Y, X3), (Z, X1)];
    let g1 = Graph::from_edges(5, &base).expect("5 vertices");
    let mut g2 = g1;
    g2.add_edge(Z, X3);
    (g1, g2)
}

/// Summary of the exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveCombCheck {
    /// Labeled graphs satisfying the hypothesis.
    pub cases: usize,
    /// Cases where neither an induced triangle-plus-isolated-vertex nor
    /// `G1`/`G2` was found.
    pub counterexamples: Vec<Graph>,
}

impl FiveCombCheck {
    pub fn holds(&self) -> bool {
        self.cases > 0 && self.counterexamples.is_empty()
    }
}

fn hypothesis(g: &Graph) -> bool {
    g.has_edge(X1, X2)
        && !g.has_edge(X1, X3)
        && !g.has_edge(X2, X3)
        && [X1, X2, X3].iter().all(|&x| g.has_edge(Y, x))
        && [X1, X2, X3].iter().any(|&x| !g.has_edge(Z, x))
        && !g.has_edge(Y, Z)
}

fn has_induced_k3_plus_k1(g: &Graph) -> bool {
    let target = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).expect("4 vertices").canonical();
    subsets_of_size(g.vertex_mask(), 4).any(|s| g.induced_mask(s).canonical() == target)
}

/// Runs the check over all `2^10` labeled graphs on five vertices.
pub fn verify_5comb() -> FiveCombCheck {
    let (g1, g2) = g1_g2();
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for bits in 0u32..1 << pairs.len() {
        let mut g = Graph::new(5).expect("5 vertices");
        for (k, &(i, j)) in pairs.iter().enumerate() {
            g.set_edge(i, j, bits >> k & 1 == 1);
        }
        if !hypothesis(&g) {
            continue;
        }
        cases += 1;
        if !(has_induced_k3_plus_k1(&g) || g.is_isomorphic(&g1) || g.is_isomorphic(&g2)) {
            counterexamples.push(g);
        }
    }
    FiveCombCheck { cases, counterexamples }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_graphs() {
        let (g1, g2) = g1_g2();
        assert_eq!(g1.edge_count(), 5);
        assert_eq!(g2.edge_count(), 6);
        assert!(!g1.is_isomorphic(&g2));
        assert!(!has_induced_k3_plus_k1(&g1));
        assert!(!has_induced_k3_plus_k1(&g2));
    }

    #[test]
    fn holds_on_all_five_vertex_graphs() {
        let check = verify_5comb();
        // z sees a proper subset of {x1, x2, x3}
        assert_eq!(check.cases, 7);
        assert!(check.holds());
    }
}
