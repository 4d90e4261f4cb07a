use super::Graph;
use crate::error::{Error, Result};

/// Bitset adjacency for graphs too large for [`Graph`] (local search,
/// triangle-free growth). Rows are `words` 64-bit words each.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> DenseGraph {
        let words = n.div_ceil(64).max(1);
        DenseGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<DenseGraph> {
        let mut g = DenseGraph::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    order: n,
                });
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete_multipartite(parts: &[usize]) -> DenseGraph {
        let n = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, p));
        }
        let mut g = DenseGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|N(u) ∩ N(v)|`.
    #[inline]
    pub fn common(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|N(u) ∩ N(v) ∩ N(w)|`.
    pub fn common3(&self, u: usize, v: usize, w: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .zip(self.row(w))
            .map(|((a, b), c)| (a & b & c).count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn triangle_count(&self) -> u64 {
        self.edges().map(|(u, v)| self.common(u, v) as u64).sum::<u64>() / 3
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.common(u, v) == 0)
    }

    /// Number of adjacencies on which `self` and `other` differ.
    pub fn edit_distance(&self, other: &DenseGraph) -> usize {
        assert_eq!(self.n, other.n);
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Removes every edge at `v`.
    pub fn isolate(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for u in nbrs {
            self.remove_edge(u, v);
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new(self.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        Ok(g)
    }
}

impl From<&Graph> for DenseGraph {
    fn from(g: &Graph) -> DenseGraph {
        let mut d = DenseGraph::new(g.order());
        for (u, v) in g.edges() {
            d.add_edge(u, v);
        }
        d
    }
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseGraph(n={}, m={})", self.n, self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles_in_multipartite() {
        let g = DenseGraph::complete_multipartite(&[3, 3, 3]);
        assert_eq!(g.edge_count(), 27);
        assert_eq!(g.triangle_count(), 27);
        let big = DenseGraph::complete_multipartite(&[70, 70]);
        assert_eq!(big.edge_count(), 4900);
        assert!(big.is_triangle_free());
        assert_eq!(big.common(0, 1), 70);
    }

    #[test]
    fn round_trip_small() {
        let g = Graph::cycle(7).unwrap();
        assert_eq!(DenseGraph::from(&g).to_graph().unwrap(), g);
    }
}
