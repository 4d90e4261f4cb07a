//! Memoized flag bases, subflag-count tables and product tables.
//!
//! Tables are computed once per key and shared as `Arc`s. Entry counts are
//! raw subset counts; callers divide by the matching binomial.

use super::{Flag, TypeSigma, MAX_LEVEL};
use crate::error::{out_of_range, Result};
use crate::graph::{enumerate_graphs, subsets_of_size, Graph};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

type Basis = Arc<Vec<Flag>>;
/// For each small flag, the big-basis indices it occurs in and how often.
pub(crate) type DensityTable = Arc<HashMap<Flag, Vec<(usize, u64)>>>;
/// For each ordered pair of factors, the big-basis indices and split counts.
pub(crate) type ProductTable = Arc<HashMap<(Flag, Flag), Vec<(usize, u64)>>>;

static BASES: LazyLock<Mutex<HashMap<(TypeSigma, usize), Basis>>> = LazyLock::new(Default::default);
type Cache<V> = LazyLock<Mutex<HashMap<(TypeSigma, usize, usize), V>>>;

static DENSITIES: Cache<DensityTable> = LazyLock::new(Default::default);
static PRODUCTS: Cache<ProductTable> = LazyLock::new(Default::default);

fn memo<K, V, F>(cache: &Mutex<HashMap<K, V>>, key: K, build: F) -> Result<V>
where
    K: std::hash::Hash + Eq + Clone,
    V: Clone,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    // Built outside the lock; a concurrent duplicate build is harmless.
    let v = build()?;
    cache.lock().expect("cache poisoned").entry(key).or_insert(v.clone());
    Ok(v)
}

pub(crate) fn basis(sigma: &TypeSigma, level: usize) -> Result<Basis> {
    let k = sigma.arity();
    if level < k || level > MAX_LEVEL {
        return Err(out_of_range("flag level", level, "arity..=8"));
    }
    memo(&BASES, (*sigma, level), || {
        if k == 0 {
            if level == 0 {
                return Ok(Arc::new(vec![sigma.identity_flag()]));
            }
            let graphs = enumerate_graphs(level)?;
            return Ok(Arc::new(graphs.iter().map(Flag::unlabeled).collect()));
        }
        if level == k {
            return Ok(Arc::new(vec![sigma.identity_flag()]));
        }
        let smaller = basis(sigma, level - 1)?;
        let grown: BTreeSet<Flag> = smaller
            .par_iter()
            .flat_map_iter(|f| {
                let n = f.order();
                (0..1u32 << n).map(move |nbrs| {
                    let g: Graph = f.graph().with_vertex(nbrs as u16).expect("level <= 8");
                    Flag::canonicalize(g, k)
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(Arc::new(grown.into_iter().collect()))
    })
}

pub(crate) fn density_table(sigma: &TypeSigma, small: usize, big: usize) -> Result<DensityTable> {
    memo(&DENSITIES, (*sigma, small, big), || {
        let flags = basis(sigma, big)?;
        let rows: Vec<Vec<(Flag, usize)>> = flags
            .par_iter()
            .map(|f| {
                let mut counts: HashMap<Flag, usize> = HashMap::new();
                for s in subsets_of_size(f.free_mask(), small - sigma.arity()) {
                    *counts.entry(f.restrict(s)).or_default() += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        let mut table: HashMap<Flag, Vec<(usize, u64)>> = HashMap::new();
        for (j, row) in rows.into_iter().enumerate() {
            for (sub, c) in row {
                table.entry(sub).or_default().push((j, c as u64));
            }
        }
        Ok(Arc::new(table))
    })
}

pub(crate) fn product_table(sigma: &TypeSigma, l1: usize, l2: usize) -> Result<ProductTable> {
    let k = sigma.arity();
    let big = l1 + l2 - k;
    if big > MAX_LEVEL {
        return Err(out_of_range("product level", big, "<= 8"));
    }
    memo(&PRODUCTS, (*sigma, l1, l2), || {
        let flags = basis(sigma, big)?;
        let rows: Vec<Vec<((Flag, Flag), usize)>> = flags
            .par_iter()
            .map(|f| {
                let free = f.free_mask();
                let mut counts: HashMap<(Flag, Flag), usize> = HashMap::new();
                for s in subsets_of_size(free, l1 - k) {
                    *counts.entry((f.restrict(s), f.restrict(free & !s))).or_default() += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        let mut table: HashMap<(Flag, Flag), Vec<(usize, u64)>> = HashMap::new();
        for (j, row) in rows.into_iter().enumerate() {
            for (pair, c) in row {
                table.entry(pair).or_default().push((j, c as u64));
            }
        }
        Ok(Arc::new(table))
    })
}
