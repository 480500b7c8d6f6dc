//! Closed-form norms of diagonal semigroups and resolvents, and Weiss constants.
//!
//! For a diagonal operator `D` with symbol `d` every norm below is a supremum
//! over modes:
//!
//! - `‖T(t)D‖ = sup_n |d(λ_n)| e^{t Re λ_n}`
//! - `‖D R(λ, A)‖ = sup_n |d(λ_n)| / |λ − λ_n|`
//! - `sup_η ‖D R(ξ + iη, A)‖ = sup_n |d(λ_n)| / (ξ + |Re λ_n|)`
//!
//! The p-Weiss constant `sup_{Re λ > 0} (Re λ)^{1−1/p} ‖D R(λ, A)‖` is then
//! `sup_n |d(λ_n)| s_p(|Re λ_n|)` with `s_p(c) = sup_{ξ>0} ξ^{1−1/p}/(ξ + c)`.
//! A half-plane grid scan is kept alongside as an independent lower bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::harness::search::{linspace, logspace, sup_search, GridScale, SearchPolicy};
use crate::spectra::{ModeSup, OperatorSymbol, Spectrum};

/// Slack allowed between the grid estimate and the closed form.
pub const WEISS_GRID_TOL: f64 = 1e-9;

fn check_spectrum(spec: &Spectrum) -> Result<()> {
    if spec.modes().iter().any(|z| !(z.re < 0.0)) {
        return Err(invalid("spectrum has a mode with nonnegative real part"));
    }
    Ok(())
}

pub fn semigroup_norm(spec: &Spectrum, sym: &OperatorSymbol, t: f64) -> Result<ModeSup> {
    if !(t >= 0.0) {
        return Err(invalid(format!("time t = {t} must be nonnegative")));
    }
    check_spectrum(spec)?;
    let values: Vec<f64> = spec.modes().iter().map(|&z| sym.modulus(z) * (t * z.re).exp()).collect();
    Ok(ModeSup::from_values(&values))
}

/// `(t, ‖T(t)D‖)` at the full truncation for each `t` of an increasing grid.
pub fn decay_curve(spec: &Spectrum, sym: &OperatorSymbol, ts: &[f64]) -> Result<Vec<(f64, f64)>> {
    if ts.is_empty() {
        return Err(invalid("time grid is empty"));
    }
    if ts.windows(2).any(|w| !(w[1] > w[0])) || !(ts[0] >= 0.0) {
        return Err(invalid("time grid must be nonnegative and increasing"));
    }
    check_spectrum(spec)?;
    let moduli = sym.moduli(spec);
    Ok(ts
        .iter()
        .map(|&t| {
            let v = spec.modes().iter().zip(&moduli).map(|(z, m)| m * (t * z.re).exp()).fold(0.0, f64::max);
            (t, v)
        })
        .collect())
}

pub fn resolvent_norm(spec: &Spectrum, sym: &OperatorSymbol, lambda: Complex64) -> Result<ModeSup> {
    if !(lambda.re > 0.0) {
        return Err(invalid(format!("resolvent evaluated at Re λ = {} ≤ 0", lambda.re)));
    }
    check_spectrum(spec)?;
    let values: Vec<f64> = spec.modes().iter().map(|&z| sym.modulus(z) / (lambda - z).norm()).collect();
    Ok(ModeSup::from_values(&values))
}

/// `g(ξ) = sup_η ‖D R(ξ + iη, A)‖` at both truncations.
pub fn resolvent_profile_at(spec: &Spectrum, sym: &OperatorSymbol, xi: f64) -> Result<ModeSup> {
    if !(xi > 0.0) {
        return Err(invalid(format!("profile abscissa ξ = {xi} must be positive")));
    }
    check_spectrum(spec)?;
    let values: Vec<f64> = spec.modes().iter().map(|&z| sym.modulus(z) / (xi - z.re)).collect();
    Ok(ModeSup::from_values(&values))
}

pub fn resolvent_profile(spec: &Spectrum, sym: &OperatorSymbol, xis: &[f64]) -> Result<Vec<(f64, f64)>> {
    if let Some(x) = xis.iter().find(|x| !(**x > 0.0)) {
        return Err(invalid(format!("profile abscissa ξ = {x} must be positive")));
    }
    check_spectrum(spec)?;
    let moduli = sym.moduli(spec);
    Ok(xis
        .iter()
        .map(|&xi| {
            let v = spec.modes().iter().zip(&moduli).map(|(z, m)| m / (xi - z.re)).fold(0.0, f64::max);
            (xi, v)
        })
        .collect())
}

/// `sup_{t>0} t^s ‖T(t)D‖ = sup_n |d(λ_n)| (s / (e |Re λ_n|))^s`.
pub fn weighted_decay_sup(spec: &Spectrum, sym: &OperatorSymbol, s: f64) -> Result<ModeSup> {
    if !(s >= 0.0) {
        return Err(invalid("decay weight exponent must be nonnegative"));
    }
    check_spectrum(spec)?;
    let values: Vec<f64> = spec
        .modes()
        .iter()
        .map(|&z| {
            let m = sym.modulus(z);
            if s == 0.0 {
                m
            } else {
                m * (s / (std::f64::consts::E * -z.re)).powf(s)
            }
        })
        .collect();
    Ok(ModeSup::from_values(&values))
}

/// `s_p(c) = sup_{ξ>0} ξ^{1−1/p}/(ξ + c)`; `1/c` for `p = 1`.
pub fn weiss_mode_factor(p: f64, c: f64) -> f64 {
    if p == 1.0 {
        1.0 / c
    } else {
        (p - 1.0).powf(1.0 - 1.0 / p) / (p * c.powf(1.0 / p))
    }
}

/// Sample points `λ = ξ + iη` of the open right half-plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneGrid {
    xi: Vec<f64>,
    eta: Vec<f64>,
}

impl HalfPlaneGrid {
    pub fn new(xi: Vec<f64>, mut eta: Vec<f64>) -> Result<Self> {
        if xi.is_empty() || eta.is_empty() {
            return Err(invalid("half-plane grid needs at least one ξ and one η"));
        }
        if xi.iter().any(|x| !(*x > 0.0)) || xi.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("ξ grid must be positive and strictly increasing"));
        }
        eta.sort_by(f64::total_cmp);
        eta.dedup();
        if eta.iter().any(|e| !e.is_finite()) {
            return Err(invalid("η grid must be finite"));
        }
        Ok(HalfPlaneGrid { xi, eta })
    }

    /// ξ log-spaced on `[1e−6, 1e2]` (60 points); η uniform on
    /// `±2 max|Im λ_n|` (201 points) plus every `Im λ_n`.
    pub fn default_for(spec: &Spectrum) -> Self {
        let xi = logspace(1e-6, 1e2, 60);
        let m = spec.max_abs_imag();
        let half = if m > 0.0 { 2.0 * m } else { 1.0 };
        let mut eta = linspace(-half, half, 201);
        eta.extend(spec.modes().iter().map(|z| z.im));
        HalfPlaneGrid::new(xi, eta).expect("default grid is valid")
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    fn nearest_eta(&self, target: f64) -> f64 {
        let i = self.eta.partition_point(|&e| e < target);
        let mut best = self.eta[i.min(self.eta.len() - 1)];
        if i > 0 && (target - self.eta[i - 1]).abs() <= (best - target).abs() {
            best = self.eta[i - 1];
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeissReport {
    pub p: f64,
    #[serde(rename = "K_exact")]
    pub k_exact: f64,
    #[serde(rename = "K_exact_coarse")]
    pub k_exact_coarse: f64,
    #[serde(rename = "K_grid")]
    pub k_grid: f64,
    pub n_max: usize,
    pub n_coarse: usize,
    pub argmax_mode: usize,
    pub family_tag: String,
    /// Grid point of `K_grid`, `[ξ, η]`.
    pub grid_argmax: [f64; 2],
    /// `λ = (p−1)|Re λ_n| + i Im λ_n` attains the per-mode supremum; absent for `p = 1`.
    pub per_mode_attained: bool,
    pub divergent: bool,
    /// `K_grid ≤ K_exact + WEISS_GRID_TOL`.
    pub consistent: bool,
    #[serde(skip)]
    pub exact: Option<ModeSup>,
}

impl WeissReport {
    pub fn exact_sup(&self) -> ModeSup {
        self.exact.expect("report built by weiss_constant")
    }

    /// Value ratio between the full and coarse truncation.
    pub fn growth(&self) -> f64 {
        self.k_exact / self.k_exact_coarse
    }
}

pub fn weiss_constant(spec: &Spectrum, sym: &OperatorSymbol, p: f64) -> Result<WeissReport> {
    weiss_constant_on_grid(spec, sym, p, &HalfPlaneGrid::default_for(spec))
}

pub fn weiss_exact(spec: &Spectrum, sym: &OperatorSymbol, p: f64) -> Result<ModeSup> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("Weiss exponent p = {p} must lie in [1, ∞)")));
    }
    check_spectrum(spec)?;
    let factor = weiss_mode_factor(p, 1.0);
    let values: Vec<f64> = spec.modes().iter().map(|&z| factor * sym.modulus_over_decay(z, 1.0 / p)).collect();
    Ok(ModeSup::from_values(&values))
}

pub fn weiss_constant_on_grid(
    spec: &Spectrum,
    sym: &OperatorSymbol,
    p: f64,
    grid: &HalfPlaneGrid,
) -> Result<WeissReport> {
    let exact = weiss_exact(spec, sym, p)?;
    let expo = 1.0 - 1.0 / p;
    let moduli = sym.moduli(spec);

    // Grid maximum, evaluated mode by mode: for fixed ξ and mode n the
    // distance |ξ + iη − λ_n| grows with |η − Im λ_n|, so only the nearest
    // η grid point can carry that mode's maximum.
    let mut best = (f64::NEG_INFINITY, 0usize, 0.0, 0.0);
    for (i, &xi) in grid.xi.iter().enumerate() {
        let w = xi.powf(expo);
        for (z, m) in spec.modes().iter().zip(&moduli) {
            let eta = grid.nearest_eta(z.im);
            let v = w * m / (Complex64::new(xi, eta) - z).norm();
            if v > best.0 {
                best = (v, i, xi, eta);
            }
        }
    }
    let (mut k_grid, i_best, mut xi_best, eta_best) = best;

    // local refinement in ξ on the true norm along the best η line
    let lo = grid.xi[i_best.saturating_sub(1)];
    let hi = grid.xi[(i_best + 1).min(grid.xi.len() - 1)];
    if hi > lo {
        let g = |xi: f64| {
            let lam = Complex64::new(xi, eta_best);
            let r = spec.modes().iter().zip(&moduli).map(|(z, m)| m / (lam - z).norm()).fold(0.0, f64::max);
            xi.powf(expo) * r
        };
        let policy = SearchPolicy { points: 9, scale: GridScale::Log, rel_step: 1e-6 };
        let refined = sup_search(g, lo, hi, &policy)?;
        if refined.value > k_grid {
            k_grid = refined.value;
            xi_best = refined.argmax;
        }
    }

    Ok(WeissReport {
        p,
        k_exact: exact.value,
        k_exact_coarse: exact.coarse_value,
        k_grid,
        n_max: exact.n_max,
        n_coarse: exact.n_coarse,
        argmax_mode: exact.argmax,
        family_tag: spec.family_label(),
        grid_argmax: [xi_best, eta_best],
        per_mode_attained: p > 1.0,
        divergent: exact.is_divergent(),
        consistent: k_grid <= exact.value + WEISS_GRID_TOL,
        exact: Some(exact),
    })
}

/// Grid maximum by direct evaluation of `‖D R(λ, A)‖` at every grid point.
/// Quadratic in the number of modes; meant for cross-checks on small spectra.
pub fn weiss_grid_brute(spec: &Spectrum, sym: &OperatorSymbol, p: f64, grid: &HalfPlaneGrid) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(invalid("Weiss exponent must be at least 1"));
    }
    let mut best = f64::NEG_INFINITY;
    for &xi in grid.xi() {
        for &eta in grid.eta() {
            let r = resolvent_norm(spec, sym, Complex64::new(xi, eta))?.value;
            best = best.max(xi.powf(1.0 - 1.0 / p) * r);
        }
    }
    Ok(best)
}
