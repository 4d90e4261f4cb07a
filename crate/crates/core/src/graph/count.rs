use super::{bits, subsets_of_size, Graph};
use crate::error::{Error, Result};
use crate::Rational;
use num_bigint::BigInt;

/// `C(n, k)` as `u128`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Induced density `p(f, g)`: the probability that a uniformly random
/// `|V(f)|`-subset of `V(g)` induces a copy of `f`.
pub fn subgraph_density(f: &Graph, g: &Graph) -> Result<Rational> {
    let k = f.order();
    if k > g.order() {
        return Err(Error::SizeMismatch(format!(
            "pattern has {} vertices but host only {}",
            k,
            g.order()
        )));
    }
    let target = f.canonical();
    let edges = f.edge_count();
    let hits = subsets_of_size(g.vertex_mask(), k)
        .filter(|&s| {
            let h = g.induced_mask(s);
            h.edge_count() == edges && h.canonical() == target
        })
        .count();
    Ok(Rational::new(
        BigInt::from(hits),
        BigInt::from(binomial(g.order() as u64, k as u64)),
    ))
}

/// Number of `r`-subsets of `V(g)` inducing a complete graph.
pub fn clique_count(g: &Graph, r: usize) -> u64 {
    fn extend(g: &Graph, cand: u16, r: usize) -> u64 {
        if r == 0 {
            return 1;
        }
        if (cand.count_ones() as usize) < r {
            return 0;
        }
        bits(cand)
            .map(|v| extend(g, cand & g.neighbors(v) & above(v), r - 1))
            .sum()
    }
    if r == 0 {
        return 1;
    }
    extend(g, g.vertex_mask(), r)
}

/// `clique_count(g, r) / C(n, r)`.
pub fn clique_count_rational(g: &Graph, r: usize) -> Rational {
    let total = binomial(g.order() as u64, r as u64);
    if total == 0 {
        return Rational::from_integer(0.into());
    }
    Rational::new(BigInt::from(clique_count(g, r)), BigInt::from(total))
}

/// Bitmask of the vertices with index greater than `v`.
#[inline]
fn above(v: usize) -> u16 {
    (u32::from(u16::MAX) & !((1u32 << (v + 1)) - 1)) as u16
}

pub fn triangle_count(g: &Graph) -> u64 {
    clique_count(g, 3)
}
