use crate::error::{out_of_range, Error, Result};
use serde::Serialize;

/// Slack used when deciding whether `a` sits exactly on `1 - 1/s`.
const BOUNDARY_EPS: f64 = 1e-12;

fn check_density(a: f64) -> Result<()> {
    if !(0.0..1.0).contains(&a) {
        return Err(out_of_range("edge density", a, "[0, 1)"));
    }
    Ok(())
}

/// The integer `t >= 1` with `1 - 1/t <= a < 1 - 1/(t+1)`. On a boundary
/// `a = 1 - 1/s` this is `s`.
pub fn t_of(a: f64) -> Result<usize> {
    check_density(a)?;
    let mut t = (1.0 / (1.0 - a)).floor().max(1.0) as usize;
    while t > 1 && a < 1.0 - 1.0 / t as f64 - BOUNDARY_EPS {
        t -= 1;
    }
    while a >= 1.0 - 1.0 / (t + 1) as f64 - BOUNDARY_EPS {
        t += 1;
    }
    Ok(t)
}

fn c_for(a: f64, t: usize) -> f64 {
    let t = t as f64;
    let disc = (t * (t - a * (t + 1.0))).max(0.0);
    (t + disc.sqrt()) / (t * (t + 1.0))
}

/// Common size (as a fraction of `n`) of the `t` large parts.
pub fn c_of(a: f64) -> Result<f64> {
    Ok(c_for(a, t_of(a)?))
}

/// `2(C(t,2)c² + tc(1 - tc)) - a`.
pub fn c_residual(a: f64, t: usize, c: f64) -> f64 {
    let tf = t as f64;
    2.0 * (choose(tf, 2) * c * c + tf * c * (1.0 - tf * c)) - a
}

/// `C(x, k)` for real `x`, zero when `x` is an integer below `k`.
pub fn choose(x: f64, k: usize) -> f64 {
    let mut out = 1.0;
    for i in 0..k {
        out *= (x - i as f64) / (i + 1) as f64;
    }
    out
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}

/// Limiting `K_r` density of the extremal family at edge density `a`.
pub fn h_r(a: f64, r: usize) -> Result<f64> {
    if a == 1.0 {
        return Ok(1.0);
    }
    let t = t_of(a)?;
    let c = c_for(a, t);
    let tf = t as f64;
    let mut v = choose(tf, r) * c.powi(r as i32);
    if r >= 1 {
        v += choose(tf, r - 1) * c.powi(r as i32 - 1) * (1.0 - tf * c);
    }
    Ok(factorial(r) * v)
}

/// Minimum limiting triangle density at edge density `a`.
pub fn h3(a: f64) -> Result<f64> {
    h_r(a, 3)
}

/// Closed form of `h3` on `[1 - 1/t, 1 - 1/(t+1)]`.
pub fn h_t_explicit(x: f64, t: usize) -> f64 {
    let tf = t as f64;
    let root = (tf * (tf - x * (tf + 1.0))).max(0.0).sqrt();
    (tf - 1.0) * (tf - 2.0 * root) * (tf + root).powi(2) / (tf * tf * (tf + 1.0).powi(2))
}

/// `t(t-1)...(t-r+1)/r! · (n/t)^r` with real `t` from `m = (1 - 1/t)n²/2`;
/// zero when `t < r - 1`.
pub fn goodman_bound(r: usize, m: u64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let t = 1.0 / (1.0 - 2.0 * m as f64 / (nf * nf));
    if t < r as f64 - 1.0 {
        return 0.0;
    }
    choose(t, r) * (nf / t).powi(r as i32)
}

/// The Goodman bound in density form, `Π_{i<r} (1 - i/t')` with `t' = 1/(1-a)`.
pub fn goodman_density(a: f64, r: usize) -> f64 {
    let t = 1.0 / (1.0 - a);
    if t < r as f64 - 1.0 {
        return 0.0;
    }
    (0..r).map(|i| 1.0 - i as f64 / t).product()
}

/// Scalars of the extremal argument at one edge density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalParams {
    pub a: f64,
    pub t: usize,
    pub c: f64,
    pub hprime: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    /// `A·a - h3(a)`.
    #[serde(rename = "B")]
    pub big_b: f64,
    pub mu: f64,
    /// `eta[s - 1]` is `η_s` for `1 <= s <= t - 1`.
    pub eta: Vec<f64>,
}

impl ExtremalParams {
    pub fn eta(&self, s: usize) -> Option<f64> {
        s.checked_sub(1).and_then(|i| self.eta.get(i)).copied()
    }
}

/// Root of `(η - μ)/η² = 1 - 1/s` in `[μ, 2μ]`, by bisection.
pub fn eta_root(mu: f64, s: usize) -> Result<f64> {
    if s == 0 || mu <= 0.0 {
        return Err(Error::Precondition(format!("eta needs s >= 1 and mu > 0 (s={s}, mu={mu})")));
    }
    let target = 1.0 - 1.0 / s as f64;
    let g = |eta: f64| (eta - mu) / (eta * eta) - target;
    let (mut lo, mut hi) = (mu, 2.0 * mu);
    if g(hi) < -BOUNDARY_EPS {
        return Err(Error::Precondition(format!("no root of the eta equation in [mu, 2mu] for s={s}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All scalars for `a`, with `b = h3(a)`. Rejects `t = 1`.
pub fn params(a: f64) -> Result<ExtremalParams> {
    let t = t_of(a)?;
    if t < 2 {
        return Err(out_of_range("edge density", a, "[1/2, 1) (t >= 2)"));
    }
    let c = c_for(a, t);
    let tf = t as f64;
    let big_a = 2.0 * (tf - 1.0) * c;
    let big_b = big_a * a - h3(a)?;
    let mu = big_b / (big_a * big_a);
    let eta = (1..t).map(|s| eta_root(mu, s)).collect::<Result<_>>()?;
    Ok(ExtremalParams {
        a,
        t,
        c,
        hprime: 3.0 * (tf - 1.0) * c,
        big_a,
        big_b,
        mu,
        eta,
    })
}

/// Edge density of the neighbourhood limit, `(z - μ)/z²`.
pub fn link_edge_density(z: f64, mu: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(out_of_range("z", z, "> 0"));
    }
    Ok((z - mu) / (z * z))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct K41Bound {
    pub value: f64,
    /// `x` lies in `[B/A, 2B/A]`.
    pub in_window: bool,
}

/// Linear lower bound on the rooted `K4` density at root degree `x`.
pub fn k41_lower_bound(p: &ExtremalParams, x: f64) -> K41Bound {
    let tf = p.t as f64;
    let eta = p.eta(p.t - 1).expect("t >= 2");
    let value = p.big_a.powi(3)
        * (1.5 * (1.0 - 2.0 * p.mu) * (x / p.big_a - eta)
            + eta.powi(3) * (tf - 2.0) * (tf - 3.0) / (tf - 1.0).powi(2));
    let lo = p.big_b / p.big_a;
    let tol = 1e-12;
    K41Bound {
        value,
        in_window: x >= lo - tol && x <= 2.0 * lo + tol,
    }
}

/// `(a(2a-1)h' + k4 + k13bar/4) / (h' + 3a - 2)` with `h' = 3(t-1)c`.
pub fn bound_36(a: f64, k4: f64, k13bar: f64) -> Result<f64> {
    let t = t_of(a)?;
    let hp = 3.0 * (t as f64 - 1.0) * c_for(a, t);
    let den = hp + 3.0 * a - 2.0;
    if den <= 0.0 {
        return Err(Error::Precondition(format!("denominator {den} <= 0 at a={a}")));
    }
    Ok((a * (2.0 * a - 1.0) * hp + k4 + 0.25 * k13bar) / den)
}

/// `dens[r] - 2(t-r+2)c·dens[r-1] + (t-r+3)(t-r+2)c²·dens[r-2]`, where
/// `dens[k]` is the `K_k` density (`dens[1] = 1`, `dens[2] = a`).
pub fn kr_recursion_residual(dens: &[f64], t: usize, c: f64, r: usize) -> Result<f64> {
    if r < 3 || r >= dens.len() {
        return Err(out_of_range("r", r, "3..dens.len()"));
    }
    let (tf, rf) = (t as f64, r as f64);
    Ok(dens[r] - 2.0 * (tf - rf + 2.0) * c * dens[r - 1]
        + (tf - rf + 3.0) * (tf - rf + 2.0) * c * c * dens[r - 2])
}

/// One row of the curve table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub a: f64,
    pub t: usize,
    pub c: f64,
    pub h3: f64,
    pub h4: f64,
    pub h5: f64,
    pub goodman: f64,
    /// `A`, `B`, `μ`; absent where `t = 1`.
    pub scalars: Option<(f64, f64, f64)>,
}

pub fn curve_row(a: f64) -> Result<CurveRow> {
    let t = t_of(a)?;
    Ok(CurveRow {
        a,
        t,
        c: c_for(a, t),
        h3: h3(a)?,
        h4: h_r(a, 4)?,
        h5: h_r(a, 5)?,
        goodman: goodman_density(a, 3),
        scalars: params(a).ok().map(|p| (p.big_a, p.big_b, p.mu)),
    })
}

/// `steps` evenly spaced points from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![from],
        _ => (0..steps)
            .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("a,t,c,h3,h4,h5,goodman,A,B,mu\n");
    for r in rows {
        let (sa, sb, sm) = match r.scalars {
            Some((x, y, z)) => (x.to_string(), y.to_string(), z.to_string()),
            None => Default::default(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.a, r.t, r.c, r.h3, r.h4, r.h5, r.goodman, sa, sb, sm
        ));
    }
    out
}
