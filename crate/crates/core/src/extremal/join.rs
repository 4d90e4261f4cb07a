//! Joins of graph limits and the conjectured-extremal limits built from them.

use super::params::{c_of, t_of};
use crate::error::{out_of_range, Error, Result};
use crate::graph::{automorphism_count, canonical_with_cells, enumerate_graphs, subgraph_density, Graph};
use crate::Rational;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Largest graph a join can be evaluated on.
pub const JOIN_MAX_ORDER: usize = 8;

/// A graph limit, seen through its induced densities.
pub trait Evaluator: Send + Sync {
    /// Limiting induced density of `f`; the empty graph has density 1.
    fn density(&self, f: &Graph) -> f64;
}

impl<F: Fn(&Graph) -> f64 + Send + Sync> Evaluator for F {
    fn density(&self, f: &Graph) -> f64 {
        self(f)
    }
}

/// The limit of edgeless graphs.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroHom;

impl Evaluator for ZeroHom {
    fn density(&self, f: &Graph) -> f64 {
        zero_hom(f)
    }
}

pub fn zero_hom(f: &Graph) -> f64 {
    if f.edge_count() == 0 {
        1.0
    } else {
        0.0
    }
}

/// Limit of complete bipartite graphs with part ratios `(β, 1 - β)`.
#[derive(Clone, Copy, Debug)]
pub struct BipartiteLimit {
    pub beta: f64,
}

impl Evaluator for BipartiteLimit {
    fn density(&self, f: &Graph) -> f64 {
        bipartite_limit(self.beta, f)
    }
}

pub fn bipartite_limit(beta: f64, f: &Graph) -> f64 {
    join_eval(&[&ZeroHom, &ZeroHom], &[beta, 1.0 - beta], f).expect("valid bipartite weights")
}

/// A weighted join of limits.
#[derive(Clone)]
pub struct Join {
    pub parts: Vec<(Arc<dyn Evaluator>, f64)>,
}

impl Evaluator for Join {
    fn density(&self, f: &Graph) -> f64 {
        let phis: Vec<&dyn Evaluator> = self.parts.iter().map(|(p, _)| p.as_ref()).collect();
        let alphas: Vec<f64> = self.parts.iter().map(|(_, a)| *a).collect();
        join_eval(&phis, &alphas, f).expect("join weights checked on construction")
    }
}

fn check_weights(k: usize, alphas: &[f64]) -> Result<()> {
    if k == 0 || k != alphas.len() {
        return Err(Error::SizeMismatch(format!("{k} limits but {} weights", alphas.len())));
    }
    let sum: f64 = alphas.iter().sum();
    if alphas.iter().any(|&a| a < 0.0 || !a.is_finite()) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!(
            "join weights must be non-negative and sum to 1, got {alphas:?}"
        )));
    }
    Ok(())
}

fn check_order(f: &Graph) -> Result<()> {
    if f.order() > JOIN_MAX_ORDER {
        return Err(out_of_range("join pattern order", f.order(), "<= 8"));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Calls `visit(assignment)` for every map of the vertices of `f` to `k`
/// parts in which vertices in different parts are adjacent.
fn for_each_join_partition(f: &Graph, k: usize, mut visit: impl FnMut(&[usize])) {
    fn go(f: &Graph, k: usize, v: usize, part_of: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if v == f.order() {
            visit(part_of);
            return;
        }
        for p in 0..k {
            if (0..v).all(|u| part_of[u] == p || f.has_edge(u, v)) {
                part_of.push(p);
                go(f, k, v + 1, part_of, visit);
                part_of.pop();
            }
        }
    }
    go(f, k, 0, &mut Vec::with_capacity(f.order()), &mut visit);
}

fn part_masks(part_of: &[usize], k: usize) -> Vec<u16> {
    let mut masks = vec![0u16; k];
    for (v, &p) in part_of.iter().enumerate() {
        masks[p] |= 1 << v;
    }
    masks
}

/// Density of `f` in `∨(φ_1, ..., φ_k; α_1, ..., α_k)`: with `n = |V(f)|`,
/// `n!/aut(f) · Σ_parts Π_i α_i^{|V_i|} φ_i(f[V_i]) aut(f[V_i]) / |V_i|!`,
/// summed over ordered vertex partitions with complete cross pairs.
pub fn join_eval(phis: &[&dyn Evaluator], alphas: &[f64], f: &Graph) -> Result<f64> {
    check_weights(phis.len(), alphas)?;
    check_order(f)?;
    let k = phis.len();
    // labeled probability that part i induces exactly f[mask] on its vertices
    let mut cache: HashMap<(usize, u16), f64> = HashMap::new();
    let mut labeled = |i: usize, mask: u16| -> f64 {
        *cache.entry((i, mask)).or_insert_with(|| {
            let sub = f.induced_mask(mask);
            let size = sub.order();
            alphas[i].powi(size as i32) * phis[i].density(&sub) * automorphism_count(&sub) as f64 / factorial(size)
        })
    };
    let mut total = 0.0;
    for_each_join_partition(f, k, |part_of| {
        let masks = part_masks(part_of, k);
        total += masks
            .iter()
            .enumerate()
            .map(|(i, &m)| if m == 0 { 1.0 } else { labeled(i, m) })
            .product::<f64>();
    });
    Ok(total * factorial(f.order()) / automorphism_count(f) as f64)
}

/// The orbit-sum form `1/aut(f) · Σ_{orbits} multinomial · Π α_i^{|V_i|} φ_i(f[V_i])`,
/// with one term per ordered partition up to automorphisms of `f`.
pub fn join_eval_orbit_form(phis: &[&dyn Evaluator], alphas: &[f64], f: &Graph) -> Result<f64> {
    check_weights(phis.len(), alphas)?;
    check_order(f)?;
    let k = phis.len();
    let mut orbits: BTreeMap<(Vec<usize>, Graph), f64> = BTreeMap::new();
    for_each_join_partition(f, k, |part_of| {
        let masks = part_masks(part_of, k);
        let sizes: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
        let cells: Vec<Vec<u8>> = masks
            .iter()
            .filter(|&&m| m != 0)
            .map(|&m| crate::graph::bits(m).map(|v| v as u8).collect())
            .collect();
        let key = (sizes.clone(), canonical_with_cells(f, cells).0);
        orbits.entry(key).or_insert_with(|| {
            let multinomial = factorial(f.order()) / sizes.iter().map(|&s| factorial(s)).product::<f64>();
            let weight: f64 = masks
                .iter()
                .enumerate()
                .map(|(i, &m)| alphas[i].powi(m.count_ones() as i32) * phis[i].density(&f.induced_mask(m)))
                .product();
            multinomial * weight
        });
    });
    Ok(orbits.values().sum::<f64>() / automorphism_count(f) as f64)
}

/// Limiting density of `f` in blow-ups of `K_k` with part weights `weights`:
/// sum over maps of the vertices of `f` to parts of the map's probability,
/// counting maps whose complete multipartite pattern is isomorphic to `f`.
pub fn multipartite_limit_density(weights: &[f64], f: &Graph) -> Result<f64> {
    check_order(f)?;
    let n = f.order();
    let k = weights.len();
    let target = f.canonical();
    let mut total = 0.0;
    let mut part_of = vec![0usize; n];
    let count = k.checked_pow(n as u32).ok_or_else(|| out_of_range("parts^order", k, "small"))?;
    for code in 0..count {
        let mut x = code;
        for p in part_of.iter_mut() {
            *p = x % k;
            x /= k;
        }
        let mut g = Graph::new(n)?;
        for v in 0..n {
            for u in 0..v {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        if g.canonical() == target {
            total += part_of.iter().map(|&p| weights[p]).product::<f64>();
        }
    }
    Ok(total)
}

/// Densities of all graphs of one order.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityVector<V = f64> {
    pub level: usize,
    pub values: BTreeMap<Graph, V>,
}

impl<V: Clone> DensityVector<V> {
    pub fn get(&self, g: &Graph) -> Option<V> {
        self.values.get(&g.canonical()).cloned()
    }
}

impl DensityVector<f64> {
    pub fn total(&self) -> f64 {
        self.values.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(g, v)| (crate::graph::emit_graph6(g), serde_json::json!(v)))
            .collect();
        serde_json::json!({ "level": self.level, "values": values })
    }
}

impl DensityVector<Rational> {
    /// Exact induced densities of a concrete graph.
    pub fn of_graph(g: &Graph, level: usize) -> Result<DensityVector<Rational>> {
        let mut values = BTreeMap::new();
        for f in enumerate_graphs(level)? {
            values.insert(f, subgraph_density(&f, g)?);
        }
        Ok(DensityVector { level, values })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(g, v)| (crate::graph::emit_graph6(g), serde_json::json!(v.to_string())))
            .collect();
        serde_json::json!({ "level": self.level, "values": values })
    }
}

/// The triangle-free limit placed on `U`.
#[derive(Clone, Default)]
pub enum PsiSpec {
    /// Complete bipartite limit with the smaller root `β`.
    #[default]
    Bipartite,
    /// Any limit with `ψ(K3) = 0` and the required edge density.
    Custom(Arc<dyn Evaluator>),
}

impl std::fmt::Debug for PsiSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PsiSpec::Bipartite => write!(f, "Bipartite"),
            PsiSpec::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// The join `∨(0, ..., 0, ψ; c, ..., c, 1 - (t-1)c)` at edge density `a`.
pub fn phi_member_join(a: f64, psi: &PsiSpec) -> Result<Join> {
    let t = t_of(a)?;
    let c = c_of(a)?;
    let tf = t as f64;
    let w = 1.0 - (tf - 1.0) * c;
    let need = 2.0 * c * (1.0 - tf * c) / (w * w);
    if need > 0.5 + 1e-12 {
        return Err(Error::Precondition(format!("psi edge density {need} above 1/2")));
    }
    let psi: Arc<dyn Evaluator> = match psi {
        PsiSpec::Bipartite => {
            let beta = ((1.0 - tf * c) / w).clamp(0.0, 1.0);
            Arc::new(BipartiteLimit { beta })
        }
        PsiSpec::Custom(e) => {
            let k2 = e.density(&Graph::complete(2)?);
            let k3 = e.density(&Graph::complete(3)?);
            if k3.abs() > 1e-12 || (k2 - need).abs() > 1e-9 {
                return Err(Error::Precondition(format!(
                    "psi must have K3 density 0 and K2 density {need}, got {k3} and {k2}"
                )));
            }
            e.clone()
        }
    };
    let mut parts: Vec<(Arc<dyn Evaluator>, f64)> = (1..t).map(|_| (Arc::new(ZeroHom) as Arc<dyn Evaluator>, c)).collect();
    parts.push((psi, w));
    Ok(Join { parts })
}

/// Density vector of the extremal limit at `a` over all graphs of order `level <= 5`.
pub fn phi_member(a: f64, psi: &PsiSpec, level: usize) -> Result<DensityVector> {
    if level > 5 {
        return Err(out_of_range("level", level, "<= 5"));
    }
    let join = phi_member_join(a, psi)?;
    let values = enumerate_graphs(level.max(1))?
        .into_iter()
        .filter(|g| g.order() == level)
        .map(|g| {
            let d = join.density(&g);
            (g, d)
        })
        .collect::<BTreeMap<_, _>>();
    let values = if level == 0 {
        BTreeMap::from([(Graph::new(0)?, 1.0)])
    } else {
        values
    };
    Ok(DensityVector { level, values })
}

/// Side-by-side values of the two join forms and the blow-up oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinFormRow {
    pub graph: Graph,
    pub labeled: f64,
    pub orbit_form: f64,
    pub oracle: f64,
}

/// Compares both join forms with the blow-up oracle for the join of
/// edgeless limits with the given weights, over every graph of `level`.
pub fn compare_join_forms(weights: &[f64], level: usize) -> Result<Vec<JoinFormRow>> {
    let zeros: Vec<&dyn Evaluator> = weights.iter().map(|_| &ZeroHom as &dyn Evaluator).collect();
    enumerate_graphs(level)?
        .into_iter()
        .map(|g| {
            Ok(JoinFormRow {
                graph: g,
                labeled: join_eval(&zeros, weights, &g)?,
                orbit_form: join_eval_orbit_form(&zeros, weights, &g)?,
                oracle: multipartite_limit_density(weights, &g)?,
            })
        })
        .collect()
}
