//! Isomorphism-free generation of all graphs of a given order.

use super::{binomial, Graph};
use crate::error::{out_of_range, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// All graphs on `order` vertices, one canonical representative per
/// isomorphism class, sorted by adjacency code.
///
/// Generated by canonical augmentation: a child obtained by adding a vertex
/// to parent `P` is kept only when deleting the last vertex of the child's
/// canonical form gives back `P`. Each class therefore has exactly one
/// parent, and duplicates from the same parent are merged locally.
pub fn enumerate_graphs(order: usize) -> Result<Vec<Graph>> {
    if !(1..=10).contains(&order) {
        return Err(out_of_range("order", order, "1..=10"));
    }
    let mut level = vec![Graph::new(1)?];
    for n in 2..=order {
        level = level
            .par_iter()
            .flat_map_iter(|parent| augment(parent, n))
            .collect();
        level.sort_unstable_by_key(Graph::code);
    }
    Ok(level)
}

fn augment(parent: &Graph, n: usize) -> Vec<Graph> {
    let mut children = BTreeSet::new();
    for nbrs in 0..(1u32 << (n - 1)) {
        let child = parent
            .with_vertex(nbrs as u16)
            .expect("order bounded by caller")
            .canonical();
        if children.contains(&child) {
            continue;
        }
        if child.without_vertex(n - 1).canonical() == *parent {
            children.insert(child);
        }
    }
    children.into_iter().collect()
}

/// Reference enumeration: canonicalize all `2^C(n,2)` labeled graphs and
/// deduplicate. Only practical up to about seven vertices.
pub fn enumerate_graphs_slow(order: usize) -> Result<Vec<Graph>> {
    if !(1..=7).contains(&order) {
        return Err(out_of_range("order", order, "1..=7"));
    }
    let pairs: Vec<(usize, usize)> = (1..order).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total = 1u64 << binomial(order as u64, 2);
    let classes: BTreeSet<(u128, Graph)> = (0..total)
        .into_par_iter()
        .map(|mask| {
            let mut g = Graph::new(order).expect("order checked");
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            let c = g.canonical();
            (c.code(), c)
        })
        .collect();
    Ok(classes.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let expected = [1, 2, 4, 11, 34, 156];
        for (i, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_graphs(i + 1).unwrap().len(), count, "order {}", i + 1);
        }
    }

    #[test]
    fn matches_slow_oracle_up_to_five() {
        for n in 1..=5 {
            assert_eq!(enumerate_graphs(n).unwrap(), enumerate_graphs_slow(n).unwrap());
        }
    }

    #[test]
    fn order_range() {
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(11).is_err());
    }
}
