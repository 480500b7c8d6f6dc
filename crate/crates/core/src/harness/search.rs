//! Grid scan followed by golden-section refinement around the best grid cell.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridScale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchPolicy {
    pub points: usize,
    pub scale: GridScale,
    /// Refinement stops once the bracket is narrower than `rel_step` times the box width.
    pub rel_step: f64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy { points: 201, scale: GridScale::Linear, rel_step: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub argmax: f64,
    pub value: f64,
    pub grid_value: f64,
    pub evaluations: usize,
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points log-spaced over `[lo, hi]`, both positive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let mut v: Vec<f64> = linspace(a, b, n).into_iter().map(f64::exp).collect();
    // pin the endpoints exactly
    if n > 0 {
        v[0] = lo;
    }
    if n > 1 {
        v[n - 1] = hi;
    }
    v
}

/// Maximizes `g` over `[lo, hi]`.
///
/// For a log grid the refinement runs in `ln x`, so `lo` must be positive.
pub fn sup_search<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, policy: &SearchPolicy) -> Result<SupResult> {
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(invalid(format!("empty search domain [{lo}, {hi}]")));
    }
    if policy.scale == GridScale::Log && !(lo > 0.0) {
        return Err(invalid("log-scale search needs a positive lower bound"));
    }
    let n = policy.points.max(3);
    let (to, from): (fn(f64) -> f64, fn(f64) -> f64) = match policy.scale {
        GridScale::Linear => (|x| x, |u| u),
        GridScale::Log => (f64::ln, f64::exp),
    };
    let (ulo, uhi) = (to(lo), to(hi));
    let us = linspace(ulo, uhi, n);
    let vals: Vec<f64> = us.iter().map(|&u| g(from(u).clamp(lo, hi))).collect();
    let mut best = 0;
    for (i, v) in vals.iter().enumerate() {
        if *v > vals[best] {
            best = i;
        }
    }
    let grid_value = vals[best];
    let mut evaluations = n;

    let mut a = us[best.saturating_sub(1)];
    let mut b = us[(best + 1).min(n - 1)];
    let stop = policy.rel_step * (uhi - ulo);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let eval = |u: f64| g(from(u).clamp(lo, hi));
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (eval(c), eval(d));
    evaluations += 2;
    while (b - a) > stop {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d);
        }
        evaluations += 1;
    }
    let (u_ref, v_ref) = if fc >= fd { (c, fc) } else { (d, fd) };
    let (argmax, value) = if v_ref > grid_value { (from(u_ref), v_ref) } else { (from(us[best]), grid_value) };
    Ok(SupResult { argmax: argmax.clamp(lo, hi), value, grid_value, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_over_shift() {
        let r = sup_search(|x: f64| x.sqrt() / (x + 1.0), 1e-12, 10.0, &SearchPolicy::default()).unwrap();
        assert!((r.argmax - 1.0).abs() < 1e-4, "{r:?}");
        assert!((r.value - 0.5).abs() < 1e-12);
        assert!(r.value >= r.grid_value);
    }

    #[test]
    fn t_exp_over_c() {
        let c = 3.0;
        let r = sup_search(|t: f64| t * (-t / c).exp(), 0.0, 30.0, &SearchPolicy::default()).unwrap();
        assert!((r.argmax - 3.0).abs() < 1e-4);
        assert!((r.value - 3.0 * (-1f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn constant_function() {
        let r = sup_search(|_| 2.5, 0.0, 1.0, &SearchPolicy::default()).unwrap();
        assert_eq!(r.value, 2.5);
        assert!((0.0..=1.0).contains(&r.argmax));
    }

    #[test]
    fn log_scale_and_errors() {
        let pol = SearchPolicy { scale: GridScale::Log, points: 60, ..Default::default() };
        let r = sup_search(|x: f64| x.sqrt() / (x + 1e-4), 1e-6, 1e2, &pol).unwrap();
        assert!((r.value - 1.0 / (2.0 * 1e-2)).abs() < 1e-9 * 50.0, "{r:?}");
        assert!(sup_search(|x| x, 1.0, 1.0, &SearchPolicy::default()).is_err());
        assert!(sup_search(|x| x, 0.0, 1.0, &pol).is_err());
    }

    #[test]
    fn logspace_endpoints() {
        let v = logspace(1e-6, 1e2, 60);
        assert_eq!(v.len(), 60);
        assert_eq!(v[0], 1e-6);
        assert_eq!(v[59], 1e2);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }
}
