//! The extremal family: `t - 1` parts of size `⌊cn⌋` completely joined to a
//! set `U` that carries a triangle-free graph with `|V_t|·|V_{t+1}|` edges.

use super::params::{c_of, t_of};
use crate::error::{Error, Result};
use crate::graph::{binomial, DenseGraph, Graph};
use crate::Rational;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Graph placed on `U`.
#[derive(Clone, Debug, Default)]
pub enum UVariant {
    /// Complete bipartite between `V_t` and `V_{t+1}`.
    #[default]
    CompleteBipartite,
    /// Any triangle-free graph on `|U|` vertices with `|V_t|·|V_{t+1}|` edges.
    Custom(DenseGraph),
}

#[derive(Clone, Debug)]
pub struct HFamilySpec {
    pub a: f64,
    pub n: usize,
    pub u_variant: UVariant,
}

impl HFamilySpec {
    pub fn new(a: f64, n: usize) -> HFamilySpec {
        HFamilySpec {
            a,
            n,
            u_variant: UVariant::CompleteBipartite,
        }
    }

    /// Sizes `|V_1|, ..., |V_{t+1}|`.
    pub fn part_sizes(&self) -> Result<Vec<usize>> {
        let t = t_of(self.a)?;
        // cn is often an exact integer in theory (a = 1 - 1/t gives c = 1/t)
        // but lands just below it in floating point
        let size = (c_of(self.a)? * self.n as f64 + 1e-9).floor() as usize;
        if t * size > self.n {
            return Err(Error::Precondition(format!(
                "{t} parts of size {size} exceed n = {}",
                self.n
            )));
        }
        let mut parts = vec![size; t];
        parts.push(self.n - t * size);
        Ok(parts)
    }

    fn validated_u(&self, parts: &[usize]) -> Result<Option<&DenseGraph>> {
        let UVariant::Custom(u) = &self.u_variant else {
            return Ok(None);
        };
        let t = parts.len() - 1;
        let (vt, vt1) = (parts[t - 1], parts[t]);
        if u.order() != vt + vt1 {
            return Err(Error::SizeMismatch(format!(
                "U graph has {} vertices, expected {}",
                u.order(),
                vt + vt1
            )));
        }
        if u.edge_count() != vt * vt1 {
            return Err(Error::Precondition(format!(
                "U graph has {} edges, expected {}",
                u.edge_count(),
                vt * vt1
            )));
        }
        if !u.is_triangle_free() {
            return Err(Error::Precondition("U graph is not triangle-free".into()));
        }
        Ok(Some(u))
    }
}

/// Builds the member as a bitset graph of any order.
pub fn construct_h_dense(spec: &HFamilySpec) -> Result<DenseGraph> {
    let parts = spec.part_sizes()?;
    let t = parts.len() - 1;
    let custom = spec.validated_u(&parts)?;
    let u_size = parts[t - 1] + parts[t];
    let mut shell: Vec<usize> = parts[..t - 1].to_vec();
    shell.push(u_size);
    let mut g = DenseGraph::complete_multipartite(&shell);
    let off = spec.n - u_size;
    match custom {
        None => {
            for i in 0..parts[t - 1] {
                for j in parts[t - 1]..u_size {
                    g.add_edge(off + i, off + j);
                }
            }
        }
        Some(u) => {
            for (i, j) in u.edges() {
                g.add_edge(off + i, off + j);
            }
        }
    }
    Ok(g)
}

/// Builds the member as a [`Graph`]; needs `n <= 16`.
pub fn construct_h(spec: &HFamilySpec) -> Result<Graph> {
    if spec.n > crate::graph::MAX_ORDER {
        return Err(Error::OrderTooLarge(spec.n));
    }
    construct_h_dense(spec)?.to_graph()
}

/// Elementary symmetric polynomials `e_0..=e_kmax` of `xs`.
fn elementary(xs: &[usize], kmax: usize) -> Vec<u128> {
    let mut e = vec![0u128; kmax + 1];
    e[0] = 1;
    for &x in xs {
        for k in (1..=kmax).rev() {
            e[k] += e[k - 1] * x as u128;
        }
    }
    e
}

/// Exact counts for a family member, computed from the part sizes alone.
#[derive(Clone, Debug, PartialEq)]
pub struct HStats {
    pub n: usize,
    pub parts: Vec<usize>,
    pub u_edges: usize,
    pub edges: u128,
    pub triangles: u128,
    /// `cliques[r]` = number of `K_r`, for `r <= 8`.
    pub cliques: Vec<u128>,
    complete_multipartite: bool,
}

/// Largest clique order tracked by [`HStats`].
pub const STATS_MAX_CLIQUE: usize = 8;

pub fn h_statistics(spec: &HFamilySpec) -> Result<HStats> {
    let parts = spec.part_sizes()?;
    let t = parts.len() - 1;
    let custom = spec.validated_u(&parts)?;
    let u_edges = parts[t - 1] * parts[t];
    let outside = &parts[..t - 1];
    let mut shell = outside.to_vec();
    shell.push(parts[t - 1] + parts[t]);
    // a clique uses at most one shell part each and at most two U vertices,
    // which then form a U edge
    let es = elementary(&shell, STATS_MAX_CLIQUE);
    let eo = elementary(outside, STATS_MAX_CLIQUE);
    let cliques: Vec<u128> = (0..=STATS_MAX_CLIQUE)
        .map(|r| es[r] + if r >= 2 { u_edges as u128 * eo[r - 2] } else { 0 })
        .collect();
    Ok(HStats {
        n: spec.n,
        parts,
        u_edges,
        edges: cliques[2],
        triangles: cliques[3],
        cliques,
        complete_multipartite: custom.is_none(),
    })
}

fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl HStats {
    pub fn clique_density(&self, r: usize) -> Rational {
        ratio(self.cliques[r], binomial(self.n as u64, r as u64))
    }

    pub fn edge_density(&self) -> Rational {
        self.clique_density(2)
    }

    pub fn triangle_density(&self) -> Rational {
        self.clique_density(3)
    }

    /// Exact induced densities of every graph on `level` vertices. Only
    /// available for the complete bipartite `U` variant, where the member is
    /// complete multipartite.
    pub fn induced_densities(&self, level: usize) -> Result<BTreeMap<Graph, Rational>> {
        if !self.complete_multipartite {
            return Err(Error::Precondition(
                "induced densities need the complete bipartite U variant".into(),
            ));
        }
        if level > self.n {
            return Err(Error::SizeMismatch(format!("level {level} above order {}", self.n)));
        }
        let total = binomial(self.n as u64, level as u64);
        let mut out: BTreeMap<Graph, Rational> = crate::graph::enumerate_graphs(level.max(1))?
            .into_iter()
            .filter(|g| g.order() == level)
            .map(|g| (g, ratio(0, 1)))
            .collect();
        if level == 0 {
            out.insert(Graph::new(0)?, ratio(1, 1));
            return Ok(out);
        }
        for (pattern, count) in multipartite_patterns(&self.parts, level) {
            let g = Graph::complete_multipartite(&pattern)?.canonical();
            *out.get_mut(&g).expect("every graph is enumerated") += ratio(count, total);
        }
        Ok(out)
    }

    /// `(part size, degree, K4 through the vertex)` for each part.
    pub fn vertex_profiles(&self) -> Result<Vec<(usize, usize, u128)>> {
        if !self.complete_multipartite {
            return Err(Error::Precondition(
                "vertex profiles need the complete bipartite U variant".into(),
            ));
        }
        Ok((0..self.parts.len())
            .map(|i| {
                let others: Vec<usize> = self
                    .parts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &p)| p)
                    .collect();
                (self.parts[i], self.n - self.parts[i], elementary(&others, 3)[3])
            })
            .collect())
    }
}

/// Ways to pick `k` vertices from a complete multipartite graph, grouped by
/// the multiset of part-intersection sizes (sorted descending).
pub fn multipartite_patterns(parts: &[usize], k: usize) -> BTreeMap<Vec<usize>, u128> {
    let mut states: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
    states.insert(Vec::new(), 1);
    for &p in parts {
        let mut next: BTreeMap<Vec<usize>, u128> = BTreeMap::new();
        for (pattern, count) in states {
            let used: usize = pattern.iter().sum();
            for j in 0..=p.min(k - used) {
                let mut key = pattern.clone();
                if j > 0 {
                    key.push(j);
                    key.sort_unstable_by(|a, b| b.cmp(a));
                }
                *next.entry(key).or_default() += count * binomial(p as u64, j as u64);
            }
        }
        states = next;
    }
    states.retain(|pattern, _| pattern.iter().sum::<usize>() == k);
    states
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_count, subgraph_density};

    #[test]
    fn small_member_is_k3333() {
        let g = construct_h(&HFamilySpec::new(0.7, 12)).unwrap();
        assert!(g.is_isomorphic(&Graph::turan(4, 12).unwrap()));
    }

    #[test]
    fn boundary_density_gives_turan_parts() {
        let s = HFamilySpec::new(0.8, 400);
        assert_eq!(s.part_sizes().unwrap(), vec![80, 80, 80, 80, 80, 0]);
    }

    #[test]
    fn statistics_at_200() {
        let s = h_statistics(&HFamilySpec::new(0.7, 200)).unwrap();
        assert_eq!(s.parts, vec![62, 62, 62, 14]);
        assert_eq!(s.edges, 14136);
        assert_eq!(s.edge_density(), ratio(14136, 19900));
    }

    #[test]
    fn statistics_match_the_graph() {
        for (a, n) in [(0.7, 12), (0.55, 11), (0.76, 16), (0.3, 9)] {
            let spec = HFamilySpec::new(a, n);
            let g = construct_h(&spec).unwrap();
            let s = h_statistics(&spec).unwrap();
            for r in 0..=6 {
                assert_eq!(s.cliques[r], clique_count(&g, r) as u128, "a={a} n={n} r={r}");
            }
            for (f, d) in s.induced_densities(4).unwrap() {
                assert_eq!(subgraph_density(&f, &g).unwrap(), d);
            }
        }
    }

    #[test]
    fn custom_u_keeps_triangle_count() {
        // a = 0.7, n = 16: parts 5,5,5,1; U has 6 vertices and 5 edges
        let base = HFamilySpec::new(0.7, 16);
        assert_eq!(base.part_sizes().unwrap(), vec![5, 5, 5, 1]);
        let path = DenseGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let spec = HFamilySpec {
            u_variant: UVariant::Custom(path),
            ..base.clone()
        };
        let g = construct_h(&spec).unwrap();
        let d = construct_h(&base).unwrap();
        assert_eq!(g.edge_count(), d.edge_count());
        assert_eq!(clique_count(&g, 3), clique_count(&d, 3));
        assert_eq!(h_statistics(&spec).unwrap().triangles, clique_count(&g, 3) as u128);
        assert!(h_statistics(&spec).unwrap().induced_densities(3).is_err());

        let triangle = DenseGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)]).unwrap();
        let bad = HFamilySpec {
            u_variant: UVariant::Custom(triangle),
            ..base.clone()
        };
        assert!(construct_h(&bad).is_err());
        let short = DenseGraph::from_edges(6, &[(0, 1)]).unwrap();
        assert!(construct_h(&HFamilySpec {
            u_variant: UVariant::Custom(short),
            ..base
        })
        .is_err());
    }
}
