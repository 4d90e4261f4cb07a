//! Numerical minimization of the triangle density of complete partite
//! limits at a fixed edge density.
//!
//! A limit with part sizes `c_1, ..., c_s` and a mass `c_0` spread over
//! vanishing parts has edge density `a` when `Σ_{i>=1} c_i² = 1 - a` and
//! `Σ_{i>=0} c_i = 1`, and triangle density `6·F` with
//! `F = c_0³/6 + c_0²(1 - c_0)/2 + e_3(c_0, c_1, ..., c_s)`.

use crate::error::{out_of_range, Result};
use crate::extremal::t_of;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioPoint {
    pub a: f64,
    pub c0: f64,
    /// Positive parts, largest first.
    pub parts: Vec<f64>,
    pub objective: f64,
    /// Number of parts the search started from.
    pub s: usize,
}

impl RatioPoint {
    /// `Σ c_i - 1` and `c_0²/2 + Σ_{0<=i<j} c_i c_j - a/2`.
    pub fn residuals(&self) -> (f64, f64) {
        let sum = self.c0 + self.parts.iter().sum::<f64>();
        let sq = self.c0 * self.c0 + self.parts.iter().map(|c| c * c).sum::<f64>();
        (sum - 1.0, self.c0 * self.c0 / 2.0 + (sum * sum - sq) / 2.0 - self.a / 2.0)
    }
}

/// `F(c_0; c)`.
pub fn ratio_objective(c0: f64, parts: &[f64]) -> f64 {
    let (mut e1, mut e2, mut e3) = (c0, 0.0, 0.0);
    for &c in parts {
        e3 += c * e2;
        e2 += c * e1;
        e1 += c;
    }
    c0.powi(3) / 6.0 + c0 * c0 * (1.0 - c0) / 2.0 + e3
}

/// Moves `parts` to the nearest point (along the centred direction) with
/// `Σ = sum` and `Σ c² = sq`; `None` when that sphere is empty or the
/// direction degenerates.
pub fn project_ratios(parts: &[f64], sum: f64, sq: f64) -> Option<Vec<f64>> {
    let d = parts.len() as f64;
    if parts.is_empty() {
        return None;
    }
    let mean = sum / d;
    let radius2 = sq - sum * sum / d;
    if radius2 < -1e-15 {
        return None;
    }
    let m = parts.iter().sum::<f64>() / d;
    let w: Vec<f64> = parts.iter().map(|c| c - m).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if radius2 <= 0.0 {
        return Some(vec![mean; parts.len()]);
    }
    if norm < 1e-300 {
        return None;
    }
    let r = radius2.sqrt();
    Some(w.iter().map(|x| mean + r * x / norm).collect())
}

fn sum_cubes(c: &[f64]) -> f64 {
    c.iter().map(|x| x * x * x).sum()
}

/// With `Σc` and `Σc²` fixed, minimizing `e_3` means minimizing `Σc³`.
/// Riemannian gradient descent with Armijo steps on the sphere
/// `{Σc = sum, Σc² = sq}`, dropping coordinates that reach zero.
fn descend(mut c: Vec<f64>, sum: f64, sq: f64) -> Vec<f64> {
    let mut step = 0.1;
    for _ in 0..20_000 {
        let d = c.len();
        if d <= 2 {
            return c;
        }
        let g: Vec<f64> = c.iter().map(|x| 3.0 * x * x).collect();
        let mean = sum / d as f64;
        let u: Vec<f64> = c.iter().map(|x| x - mean).collect();
        let un = u.iter().map(|x| x * x).sum::<f64>();
        let gm = g.iter().sum::<f64>() / d as f64;
        let gu = g.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>() / un.max(1e-300);
        let pg: Vec<f64> = g.iter().zip(&u).map(|(gi, ui)| gi - gm - gu * ui).collect();
        let pn = pg.iter().map(|x| x * x).sum::<f64>();
        if pn < 1e-30 {
            return c;
        }
        let f0 = sum_cubes(&c);
        let mut accepted = false;
        let mut blocked = false;
        step *= 4.0;
        while step > 1e-16 {
            let trial: Vec<f64> = c.iter().zip(&pg).map(|(x, p)| x - step * p).collect();
            match project_ratios(&trial, sum, sq) {
                Some(next) if next.iter().all(|&x| x > 0.0) => {
                    if sum_cubes(&next) <= f0 - 1e-4 * step * pn {
                        c = next;
                        accepted = true;
                        break;
                    }
                }
                _ => blocked = true,
            }
            step /= 2.0;
        }
        if !accepted {
            if blocked {
                if let Some(next) = drop_smallest(&c, sum, sq) {
                    if sum_cubes(&next) <= f0 + 1e-15 {
                        c = next;
                        step = 0.1;
                        continue;
                    }
                }
            }
            return c;
        }
    }
    c
}

fn drop_smallest(c: &[f64], sum: f64, sq: f64) -> Option<Vec<f64>> {
    let i = (0..c.len()).min_by(|&i, &j| c[i].total_cmp(&c[j]))?;
    let mut rest = c.to_vec();
    rest.remove(i);
    project_ratios(&rest, sum, sq).filter(|v| v.iter().all(|&x| x > 0.0))
}

/// Best inner point over a few starts, for fixed `c_0` and `s`.
fn inner(c0: f64, s: usize, a: f64, starts: usize, rng: &mut ChaCha8Rng) -> Option<(f64, Vec<f64>)> {
    let sum = 1.0 - c0;
    let sq = 1.0 - a;
    if sq > sum * sum + 1e-15 || sq < sum * sum / s as f64 - 1e-15 {
        return None;
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for i in 0..starts {
        let raw: Vec<f64> = if i == 0 {
            // one small part, the rest equal
            (0..s).map(|j| if j + 1 == s { 0.5 } else { 1.0 }).collect()
        } else {
            (0..s).map(|_| rng.gen_range(0.05..1.0)).collect()
        };
        let Some(start) = project_ratios(&raw, sum, sq) else {
            continue;
        };
        let start = if start.iter().all(|&x| x > 0.0) {
            start
        } else {
            match positive_start(s, sum, sq) {
                Some(v) => v,
                None => continue,
            }
        };
        let mut c = descend(start, sum, sq);
        c.sort_by(|x, y| y.total_cmp(x));
        let f = ratio_objective(c0, &c);
        if best.as_ref().is_none_or(|(b, _)| f < *b) {
            best = Some((f, c));
        }
    }
    best
}

/// `s - 1` equal parts and one part of a different size, all positive.
fn positive_start(s: usize, sum: f64, sq: f64) -> Option<Vec<f64>> {
    let raw: Vec<f64> = (0..s).map(|j| if j == 0 { 2.0 } else { 1.0 }).collect();
    project_ratios(&raw, sum, sq).filter(|v| v.iter().all(|&x| x > 0.0))
}

/// Minimizes the objective over `s ∈ {t, t+1, t+2}` parts, with `c_0 = 0`
/// and with `c_0` free (grid plus golden-section refinement).
pub fn minimize_ratios(a: f64) -> Result<RatioPoint> {
    if !(0.0..1.0).contains(&a) {
        return Err(out_of_range("edge density", a, "[0, 1)"));
    }
    let t = t_of(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut best: Option<RatioPoint> = None;
    let mut consider = |p: RatioPoint| {
        if best.as_ref().is_none_or(|b| p.objective < b.objective) {
            best = Some(p);
        }
    };
    let sq = 1.0 - a;
    for s in t..=t + 2 {
        let point = |c0: f64, starts: usize, rng: &mut ChaCha8Rng| {
            inner(c0, s, a, starts, rng).map(|(objective, parts)| RatioPoint {
                a,
                c0,
                parts,
                objective,
                s,
            })
        };
        if let Some(p) = point(0.0, 8, &mut rng) {
            consider(p);
        }
        let lo = (1.0 - (s as f64 * sq).sqrt()).max(0.0);
        let hi = 1.0 - sq.sqrt();
        if hi <= lo {
            continue;
        }
        let value = |c0: f64, rng: &mut ChaCha8Rng| point(c0, 3, rng).map_or(f64::INFINITY, |p| p.objective);
        let grid = 16;
        let xs: Vec<f64> = (0..=grid).map(|i| lo + (hi - lo) * i as f64 / grid as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| value(x, &mut rng)).collect();
        let i = (0..xs.len()).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).expect("grid");
        let (mut x0, mut x1) = (xs[i.saturating_sub(1)], xs[(i + 1).min(grid)]);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        while x1 - x0 > 1e-10 {
            let m0 = x1 - phi * (x1 - x0);
            let m1 = x0 + phi * (x1 - x0);
            if value(m0, &mut rng) <= value(m1, &mut rng) {
                x1 = m1;
            } else {
                x0 = m0;
            }
        }
        for c0 in [xs[i], (x0 + x1) / 2.0] {
            if let Some(p) = point(c0, 8, &mut rng) {
                consider(p);
            }
        }
    }
    best.ok_or_else(|| out_of_range("edge density", a, "a feasible value"))
}
