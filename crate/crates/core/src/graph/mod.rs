//! Small simple graphs (at most 16 vertices) stored as bit-adjacency rows.
//!
//! Everything downstream (flags, densities, enumeration) is built on the
//! [`Graph`] value type. It is `Copy`, so graphs are passed around freely and
//! shared across threads without synchronization.

mod canon;
mod count;
mod dense;
mod enumerate;
mod graph6;

pub use canon::automorphism_count;
pub(crate) use canon::canonical_with_cells;
pub use count::{binomial, clique_count, clique_count_rational, subgraph_density, triangle_count};
pub use dense::DenseGraph;
pub use enumerate::{enumerate_graphs, enumerate_graphs_slow};
pub use graph6::{
    dense_graph6, emit_graph6, graph6_labeled, parse_graph6, parse_graph6_dense, parse_graph6_lines, write_graph6_lines,
};

use crate::error::{Error, Result};
use std::fmt;

/// Hard cap on the order of a [`Graph`]; rows fit in a `u16`.
pub const MAX_ORDER: usize = 16;

/// An undirected loop-free graph on vertices `0..order`.
///
/// Row `v` of `adj` is the neighbourhood bitmask of `v`. The derived
/// equality is equality of labeled graphs; compare [`Graph::canonical`]
/// forms to test isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood bitmasks. Rows are symmetrized and
    /// the diagonal cleared.
    pub fn from_rows(rows: &[u16]) -> Result<Graph> {
        let n = rows.len();
        let mut g = Graph::new(n)?;
        let mask = g.vertex_mask();
        for (u, &row) in rows.iter().enumerate() {
            let row = row & mask & !(1 << u);
            for v in bits(row) {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Graph> {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Ok(Graph::new(n)?.complement())
    }

    /// Path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Precondition(format!("cycle needs 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Complete multipartite graph with the given part sizes, parts laid out
    /// consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
        let n: usize = parts.iter().sum();
        let mut g = Graph::complete(n)?;
        let mut start = 0;
        for &p in parts {
            for u in start..start + p {
                for v in u + 1..start + p {
                    g.remove_edge(u, v);
                }
            }
            start += p;
        }
        Ok(g)
    }

    /// Turán graph `T_t(n)`: complete `t`-partite, part sizes differing by at
    /// most one.
    pub fn turan(t: usize, n: usize) -> Result<Graph> {
        if t == 0 {
            return Err(crate::error::out_of_range("t", t, "t >= 1"));
        }
        Graph::complete_multipartite(&turan_parts(t, n))
    }

    /// Join of the given graphs: disjoint union plus every cross edge.
    pub fn join(graphs: &[Graph]) -> Result<Graph> {
        let n: usize = graphs.iter().map(|g| g.order()).sum();
        let mut out = Graph::complete(n)?;
        let mut start = 0;
        for g in graphs {
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    if !g.has_edge(u, v) {
                        out.remove_edge(start + u, start + v);
                    }
                }
            }
            start += g.order();
        }
        Ok(out)
    }

    pub fn disjoint_union(graphs: &[Graph]) -> Result<Graph> {
        let n: usize = graphs.iter().map(|g| g.order()).sum();
        let mut out = Graph::new(n)?;
        let mut start = 0;
        for g in graphs {
            for (u, v) in g.edges() {
                out.add_edge(start + u, start + v);
            }
            start += g.order();
        }
        Ok(out)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertex_mask(&self) -> u16 {
        if self.n as usize == MAX_ORDER {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.order()).flat_map(move |v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn complement(&self) -> Graph {
        let mask = self.vertex_mask();
        let mut g = *self;
        for v in 0..self.order() {
            g.adj[v] = !self.adj[v] & mask & !(1 << v);
        }
        g
    }

    /// Subgraph induced by `vertices`, relabeled so that `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph {
            n: vertices.len() as u8,
            adj: [0; MAX_ORDER],
        };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Subgraph induced by the vertex bitmask, vertices kept in increasing order.
    pub fn induced_mask(&self, mask: u16) -> Graph {
        let vs: Vec<usize> = bits(mask).collect();
        self.induced(&vs)
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`.
    /// `order` must be a permutation of `0..n`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.order());
        self.induced(order)
    }

    /// Adds a vertex adjacent to the vertices in `nbrs`.
    pub fn with_vertex(&self, nbrs: u16) -> Result<Graph> {
        let mut g = Graph::new(self.order() + 1)?;
        g.adj[..self.order()].copy_from_slice(&self.adj[..self.order()]);
        let new = self.order();
        for u in bits(nbrs & self.vertex_mask()) {
            g.add_edge(u, new);
        }
        Ok(g)
    }

    /// Removes vertex `v`, shifting higher vertices down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Upper-triangle bit string in graph6 order (column by column), first
    /// bit most significant. Fits in 120 bits for 16 vertices.
    pub fn code(&self) -> u128 {
        let mut code = 0u128;
        for j in 1..self.order() {
            for i in 0..j {
                code = code << 1 | self.has_edge(i, j) as u128;
            }
        }
        code
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical(&self) -> Graph {
        let cells: Vec<Vec<u8>> = if self.order() == 0 {
            Vec::new()
        } else {
            vec![(0..self.n).collect()]
        };
        canonical_with_cells(self, cells).0
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.order() == other.order()
            && self.edge_count() == other.edge_count()
            && self.canonical() == other.canonical()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order())?;
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{})", edges.join(" "))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_graph6(self))
    }
}

/// Part sizes of `T_t(n)`, largest first.
pub fn turan_parts(t: usize, n: usize) -> Vec<usize> {
    (0..t).map(|i| n / t + usize::from(i < n % t)).collect()
}

/// Iterates the set bit positions of `mask` in increasing order.
pub fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Iterates all `k`-element subsets of the bits of `universe`.
pub fn subsets_of_size(universe: u16, k: usize) -> impl Iterator<Item = u16> {
    let elems: Vec<usize> = bits(universe).collect();
    let m = elems.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u16, |acc, &i| acc | 1 << elems[i]);
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    })
}
