use crate::error::{out_of_range, Result};
use crate::extremal::goodman_bound;
use crate::graph::{binomial, clique_count, enumerate_graphs, Graph};
use crate::Rational;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

/// Default order cap for exhaustive minimization.
pub const BRUTE_MAX_ORDER: usize = 8;

/// `(graph, edges, triangles, K4 count)` for every graph of one order.
type Table = Arc<Vec<(Graph, usize, u64, u64)>>;

static TABLES: LazyLock<Mutex<HashMap<usize, Table>>> = LazyLock::new(Default::default);

pub(crate) fn table(n: usize) -> Result<Table> {
    if let Some(t) = TABLES.lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let rows: Vec<_> = enumerate_graphs(n)?
        .into_par_iter()
        .map(|g| (g, g.edge_count(), clique_count(&g, 3), clique_count(&g, 4)))
        .collect();
    let rows = Arc::new(rows);
    TABLES.lock().expect("cache poisoned").insert(n, rows.clone());
    Ok(rows)
}

/// Exact minimum number of `K_r` over graphs with `n` vertices and `m` edges.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub min_count: u64,
    /// Every canonical graph attaining the minimum.
    pub witnesses: Vec<Graph>,
    /// `min_count / C(n, r)`.
    pub density: Rational,
}

fn check(n: usize, r: usize, cap: usize) -> Result<()> {
    if cap > 10 {
        return Err(out_of_range("order cap", cap, "<= 10"));
    }
    if r != 3 && r != 4 {
        return Err(out_of_range("r", r, "3 or 4"));
    }
    if n < r || n > cap {
        return Err(out_of_range("n", n, "r..=cap"));
    }
    Ok(())
}

fn point(n: usize, m: usize, r: usize, rows: &[(Graph, usize, u64, u64)]) -> CurvePoint {
    let count = |row: &(Graph, usize, u64, u64)| if r == 3 { row.2 } else { row.3 };
    let with_m: Vec<_> = rows.iter().filter(|row| row.1 == m).collect();
    let min_count = with_m.iter().map(|row| count(row)).min().expect("some graph has m edges");
    CurvePoint {
        n,
        m,
        r,
        min_count,
        witnesses: with_m.iter().filter(|row| count(row) == min_count).map(|row| row.0).collect(),
        density: Rational::new(
            BigInt::from(min_count),
            BigInt::from(binomial(n as u64, r as u64)),
        ),
    }
}

pub fn brute_min(n: usize, m: usize, r: usize) -> Result<CurvePoint> {
    brute_min_capped(n, m, r, BRUTE_MAX_ORDER)
}

/// [`brute_min`] with a caller-chosen order cap (at most 10).
pub fn brute_min_capped(n: usize, m: usize, r: usize, cap: usize) -> Result<CurvePoint> {
    check(n, r, cap)?;
    if m > n * (n - 1) / 2 {
        return Err(out_of_range("m", m, "0..=C(n,2)"));
    }
    Ok(point(n, m, r, &table(n)?))
}

/// One point per edge count `0..=C(n,2)`.
pub fn brute_curve(n: usize, r: usize) -> Result<Vec<CurvePoint>> {
    check(n, r, BRUTE_MAX_ORDER)?;
    let rows = table(n)?;
    Ok((0..=n * (n - 1) / 2)
        .into_par_iter()
        .map(|m| point(n, m, r, &rows))
        .collect())
}

/// `n,m,min_count,density_num,density_den,goodman` rows.
pub fn curve_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("n,m,min_count,density_num,density_den,goodman\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.n,
            p.m,
            p.min_count,
            p.density.numer(),
            p.density.denom(),
            goodman_bound(p.r, p.m as u64, p.n as u64)
        ));
    }
    out
}
