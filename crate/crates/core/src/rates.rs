//! Decay-law fitting, the functions `F_γ`/`G_γ`, the integral-bound constants for
//! `∫_{t0}^∞ e^{−ξt} t^{−β} (log t)^{−γ} dt`, resolvent-to-decay shape prediction,
//! and the two-sided log-corrected decay/resolvent check.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harness::numerics::bisect;
use crate::harness::quadrature::{integrate_with_breakpoints, ExpEnvelope, QuadratureSpec};
use crate::spectra::{Family, ModeSup, OperatorSymbol, Spectrum};

const E_INV: f64 = 0.367_879_441_171_442_3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateForm {
    /// `t^{−1/α}`
    Poly,
    /// `t^{−β} (log t)^{−γ}`
    Polylog,
}

impl std::str::FromStr for RateForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(RateForm::Poly),
            "polylog" => Ok(RateForm::Polylog),
            _ => Err(invalid(format!("unknown rate form `{s}` (expected poly or polylog)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateModel {
    pub form: RateForm,
    pub beta: f64,
    pub gamma: f64,
    /// Fitted `1/α` for the pure polynomial law.
    pub alt_inv_alpha: Option<f64>,
    pub fit_window: [f64; 2],
    /// RMS of the residuals of `log norm`.
    pub residual: f64,
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 10;

/// Fits over the default window: the last two decades of the grid, and `t ≥ 10`.
pub fn fit_rate(curve: &[(f64, f64)], form: RateForm) -> Result<RateModel> {
    let t_hi = curve.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    fit_rate_in(curve, form, (t_hi / 100.0).max(10.0), t_hi)
}

/// Least squares of `log norm` against `log t` (and `log log t`) over `t_lo ≤ t ≤ t_hi`.
///
/// For the polylog form `γ` is clamped to `γ ≥ 0` and `β` to `[0, 1]`, refitting the
/// remaining coefficient after each clamp.
pub fn fit_rate_in(curve: &[(f64, f64)], form: RateForm, t_lo: f64, t_hi: f64) -> Result<RateModel> {
    if let Some(p) = curve.iter().find(|p| !(p.1 > 0.0) || !p.1.is_finite()) {
        return Err(invalid(format!("norm {} at t = {} is not positive", p.1, p.0)));
    }
    let lo = t_lo.max(10.0);
    let pts: Vec<(f64, f64)> = curve.iter().copied().filter(|p| p.0 >= lo && p.0 <= t_hi).collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(invalid(format!(
            "rate fit needs at least {MIN_FIT_POINTS} points with t ≥ 10 in the window, got {}",
            pts.len()
        )));
    }
    let y: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let x1: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let x2: Vec<f64> = x1.iter().map(|u| u.ln()).collect();
    let window = [pts[0].0, pts[pts.len() - 1].0];

    let (beta, gamma, alt) = match form {
        RateForm::Poly => {
            let s = -slope(&x1, &y);
            (s.clamp(0.0, 1.0), 0.0, Some(s))
        }
        RateForm::Polylog => {
            let (mut b, mut g) = two_slopes(&x1, &x2, &y);
            (b, g) = (-b, -g);
            if g < 0.0 {
                g = 0.0;
                b = -slope(&x1, &y);
            }
            if !(0.0..=1.0).contains(&b) {
                b = b.clamp(0.0, 1.0);
                let shifted: Vec<f64> = y.iter().zip(&x1).map(|(v, u)| v + b * u).collect();
                g = (-slope(&x2, &shifted)).max(0.0);
            }
            (b, g, None)
        }
    };
    // intercept and RMS residual for the final coefficients
    let r: Vec<f64> = y.iter().zip(x1.iter().zip(&x2)).map(|(v, (u, w))| v + beta * u + gamma * w).collect();
    let mean = r.iter().sum::<f64>() / r.len() as f64;
    let residual = (r.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / r.len() as f64).sqrt();
    Ok(RateModel { form, beta, gamma, alt_inv_alpha: alt, fit_window: window, residual, points: pts.len() })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn two_slopes(x1: &[f64], x2: &[f64], y: &[f64]) -> (f64, f64) {
    let (m1, m2, my) = (mean(x1), mean(x2), mean(y));
    let (mut s11, mut s12, mut s22, mut s1y, mut s2y) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..y.len() {
        let (a, b, c) = (x1[i] - m1, x2[i] - m2, y[i] - my);
        s11 += a * a;
        s12 += a * b;
        s22 += b * b;
        s1y += a * c;
        s2y += b * c;
    }
    let det = s11 * s22 - s12 * s12;
    ((s22 * s1y - s12 * s2y) / det, (s11 * s2y - s12 * s1y) / det)
}

fn check_small_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi < E_INV) {
        return Err(invalid(format!("ξ = {xi} must lie in (0, 1/e)")));
    }
    Ok(())
}

/// `|log ξ|^{1−γ}` for `γ < 1`, `log|log ξ|` for `γ = 1`, `1` for `γ > 1`.
pub fn f_gamma(xi: f64, gamma: f64) -> Result<f64> {
    check_small_xi(xi)?;
    if !(gamma >= 0.0) {
        return Err(invalid(format!("γ = {gamma} must be nonnegative")));
    }
    let l = -xi.ln();
    Ok(if gamma < 1.0 {
        l.powf(1.0 - gamma)
    } else if gamma == 1.0 {
        l.ln()
    } else {
        1.0
    })
}

/// Bound on `∫_{t0}^{1/ξ} dt / (t (log t)^γ)` used for the `β = 1` case.
pub fn g_gamma(xi: f64, gamma: f64, t0: f64) -> Result<f64> {
    check_small_xi(xi)?;
    if !(gamma >= 0.0) || !(t0 > std::f64::consts::E) {
        return Err(invalid("G_γ needs γ ≥ 0 and t0 > e"));
    }
    let l = -xi.ln();
    Ok(if gamma < 1.0 {
        l.powf(1.0 - gamma) / (1.0 - gamma)
    } else if gamma == 1.0 {
        l.ln()
    } else {
        t0.ln().powf(1.0 - gamma) / (gamma - 1.0)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma43Part {
    /// `0 ≤ β < 1`: bound `M / (ξ^{1−β} |log ξ|^γ)`
    A,
    /// `β = 1`: bound `M F_γ(ξ)`
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma43Constant {
    pub part: Lemma43Part,
    pub beta: f64,
    pub gamma: f64,
    pub t0: f64,
    /// `t0` must exceed this.
    pub threshold: f64,
    /// `γ / ((1−β) log t0)`, part A only.
    pub r: Option<f64>,
    /// Coefficient of the bound on `∫_{t0}^{1/ξ}`.
    #[serde(rename = "M0")]
    pub m0: f64,
    /// Coefficient of the bound on `∫_{1/ξ}^∞`.
    pub tail_coefficient: f64,
    #[serde(rename = "M")]
    pub m: f64,
    /// `(1/(1−β))(1 − r)`, the product form that does not follow from `I ≤ A + rI`.
    #[serde(rename = "M0_product_form")]
    pub m0_product_form: Option<f64>,
}

/// Constant `M` of the integral bound.
///
/// Part A (`β < 1`, `t0 > e^{γ/(1−β)}`): `M = M0 + e^{−1}` with
/// `M0 = 1/((1−β)(1−r))`, `r = γ/((1−β) log t0)`. This solves `I ≤ A + rI` for `I`.
///
/// Part B (`β = 1`, `t0 > e`): `M = sup_{ξ<1/t0} (G_γ(ξ) + e^{−1}(log t0)^{−γ}) / F_γ(ξ)`,
/// which is `1/(1−γ) + e^{−1}/log t0` for `γ < 1`, `1 + e^{−1}/(log t0 · log log t0)`
/// for `γ = 1`, and `(log t0)^{1−γ}/(γ−1) + e^{−1}(log t0)^{−γ}` for `γ > 1`.
pub fn lemma43_constant(beta: f64, gamma: f64, t0: f64) -> Result<Lemma43Constant> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(invalid(format!("γ = {gamma} must be nonnegative")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(invalid(format!("β = {beta} must lie in [0, 1]")));
    }
    if beta < 1.0 {
        let threshold = (gamma / (1.0 - beta)).exp();
        if !(t0 > threshold) {
            return Err(Error::Hypothesis(format!("t0 = {t0} must exceed e^{{γ/(1−β)}} = {threshold}")));
        }
        let r = gamma / ((1.0 - beta) * t0.ln());
        let m0 = 1.0 / ((1.0 - beta) * (1.0 - r));
        Ok(Lemma43Constant {
            part: Lemma43Part::A,
            beta,
            gamma,
            t0,
            threshold,
            r: Some(r),
            m0,
            tail_coefficient: E_INV,
            m: m0 + E_INV,
            m0_product_form: Some((1.0 - r) / (1.0 - beta)),
        })
    } else {
        let threshold = std::f64::consts::E;
        if !(t0 > threshold) {
            return Err(Error::Hypothesis(format!("t0 = {t0} must exceed e")));
        }
        let l = t0.ln();
        let (m0, tail) = if gamma < 1.0 {
            (1.0 / (1.0 - gamma), E_INV / l)
        } else if gamma == 1.0 {
            (1.0, E_INV / (l * l.ln()))
        } else {
            (l.powf(1.0 - gamma) / (gamma - 1.0), E_INV * l.powf(-gamma))
        };
        Ok(Lemma43Constant {
            part: Lemma43Part::B,
            beta,
            gamma,
            t0,
            threshold,
            r: None,
            m0,
            tail_coefficient: tail,
            m: m0 + tail,
            m0_product_form: None,
        })
    }
}

impl Lemma43Constant {
    /// Right-hand side of the bound at `ξ`.
    pub fn bound(&self, xi: f64) -> Result<f64> {
        self.bound_with(self.m, xi)
    }

    fn bound_with(&self, m: f64, xi: f64) -> Result<f64> {
        match self.part {
            Lemma43Part::A => Ok(m / (xi.powf(1.0 - self.beta) * (-xi.ln()).powf(self.gamma))),
            Lemma43Part::B => Ok(m * f_gamma(xi, self.gamma)?),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma43Point {
    pub xi: f64,
    pub integral: f64,
    pub integral_error: f64,
    pub bound: f64,
    pub ratio: f64,
    /// Ratio against the bound built from the product form of `M0` (part A only).
    pub ratio_product_form: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma43Check {
    pub constant: Lemma43Constant,
    pub points: Vec<Lemma43Point>,
    pub worst_ratio: f64,
    pub worst_xi: f64,
    pub worst_ratio_product_form: Option<f64>,
}

/// `∫_{t0}^∞ e^{−ξt} t^{−β} (log t)^{−γ} dt` by adaptive quadrature on geometric panels,
/// with the exponential envelope `t0^{−β}(log t0)^{−γ} e^{−ξt}` bounding the cut-off tail.
pub fn lemma43_integral(beta: f64, gamma: f64, t0: f64, xi: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    if !(t0 > 1.0) || !(xi > 0.0) {
        return Err(invalid("integral needs t0 > 1 and ξ > 0"));
    }
    let f = |t: f64| (-xi * t - beta * t.ln() - gamma * t.ln().ln()).exp();
    let env = ExpEnvelope::new(f(t0), xi, t0);
    // horizon where the envelope tail falls below a tiny fraction of the head panel
    let head = f(t0) * t0.min(1.0 / xi);
    let horizon = env.horizon_for(1e-3 * quad.rel_tol * head, t0 + 2.0 / xi);
    let mut pts = vec![t0];
    let mut t = 2.0 * t0;
    while t < horizon {
        pts.push(t);
        t *= 2.0;
    }
    pts.push(horizon);
    let res = integrate_with_breakpoints(f, &pts, quad)?;
    Ok((res.value, res.error + env.tail(horizon)))
}

pub fn verify_lemma43(beta: f64, gamma: f64, t0: f64, xi_grid: &[f64]) -> Result<Lemma43Check> {
    let constant = lemma43_constant(beta, gamma, t0)?;
    if xi_grid.is_empty() {
        return Err(invalid("ξ grid is empty"));
    }
    if let Some(x) = xi_grid.iter().find(|x| !(**x > 0.0 && **x < 1.0 / t0)) {
        return Err(invalid(format!("grid point ξ = {x} lies outside (0, 1/t0)")));
    }
    let quad = QuadratureSpec::with_tolerances(1e-12, 1e-300);
    let mut points = Vec::with_capacity(xi_grid.len());
    for &xi in xi_grid {
        let (integral, err) = lemma43_integral(beta, gamma, t0, xi, &quad)?;
        let bound = constant.bound(xi)?;
        let ratio_product_form = match constant.m0_product_form {
            Some(m0) => Some(integral / constant.bound_with(m0 + E_INV, xi)?),
            None => None,
        };
        points.push(Lemma43Point { xi, integral, integral_error: err, bound, ratio: integral / bound, ratio_product_form });
    }
    let worst = points.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio)).copied().expect("nonempty grid");
    let worst_pf = points.iter().filter_map(|p| p.ratio_product_form).reduce(f64::max);
    Ok(Lemma43Check { constant, points, worst_ratio: worst.ratio, worst_xi: worst.xi, worst_ratio_product_form: worst_pf })
}

/// Shape `g(1/t)/t` of the decay envelope implied by a resolvent profile `g`,
/// interpolated log-log between profile samples. The multiplicative constant is not estimated.
pub fn predict_decay_from_resolvent(profile: &[(f64, f64)], ts: &[f64]) -> Result<Vec<(f64, f64)>> {
    if profile.len() < 2 {
        return Err(invalid("profile needs at least two samples"));
    }
    let mut prof: Vec<(f64, f64)> = profile.to_vec();
    prof.sort_by(|a, b| a.0.total_cmp(&b.0));
    if prof.iter().any(|p| !(p.0 > 0.0) || !(p.1 > 0.0)) {
        return Err(invalid("profile samples must be positive"));
    }
    if prof.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(invalid("profile abscissae must be distinct"));
    }
    let (lo, hi) = (prof[0].0, prof[prof.len() - 1].0);
    ts.iter()
        .map(|&t| {
            let xi = 1.0 / t;
            if !(t > 0.0) || xi < lo * (1.0 - 1e-12) || xi > hi * (1.0 + 1e-12) {
                return Err(invalid(format!("t = {t} maps outside the profile range [{lo}, {hi}]")));
            }
            let xi = xi.clamp(lo, hi);
            let k = prof.partition_point(|p| p.0 < xi).clamp(1, prof.len() - 1);
            let (a, b) = (prof[k - 1], prof[k]);
            let w = (xi.ln() - a.0.ln()) / (b.0.ln() - a.0.ln());
            let g = (a.1.ln() + w * (b.1.ln() - a.1.ln())).exp();
            Ok((t, g / t))
        })
        .collect()
}

/// Per-mode logarithms `ln c_n = ln |Re λ_n|` and `ln |d(λ_n)|`.
///
/// Kept in log form so that families whose decay rates underflow `f64`
/// (such as `c_n = e^{−n}` for large `n`) can still be scanned.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTable {
    pub ln_decay: Vec<f64>,
    pub ln_weight: Vec<f64>,
    pub family_tag: String,
}

impl ModeTable {
    pub fn from_spectrum(spec: &Spectrum, sym: &OperatorSymbol) -> Result<Self> {
        if let Some(i) = spec.modes().iter().position(|z| !(z.re < 0.0)) {
            return Err(Error::NonnegativeRealPart { index: i + 1 });
        }
        Ok(ModeTable {
            ln_decay: spec.modes().iter().map(|z| (-z.re).ln()).collect(),
            ln_weight: spec.modes().iter().map(|&z| sym.modulus(z).ln()).collect(),
            family_tag: spec.family_label(),
        })
    }

    /// `λ_n = −e^{−n} + i n` for `n = 1..=n_max`, without any upper limit on `n_max`.
    pub fn logdecay(n_max: usize, sym: &OperatorSymbol) -> Result<Self> {
        if n_max == 0 {
            return Err(invalid("n_max must be at least 1"));
        }
        let mut ln_decay = Vec::with_capacity(n_max);
        let mut ln_weight = Vec::with_capacity(n_max);
        for k in 1..=n_max {
            let n = k as f64;
            let c = (-n).exp();
            ln_decay.push(-n);
            let abs_l = c.hypot(n);
            let abs_1l = (1.0 + c).hypot(n);
            ln_weight.push(sym.scale.ln() - sym.a * abs_l.ln() - sym.b * abs_1l.ln());
        }
        Ok(ModeTable { ln_decay, ln_weight, family_tag: Family::LogDecay.name().to_string() })
    }

    pub fn len(&self) -> usize {
        self.ln_decay.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_decay.is_empty()
    }
}

/// `ln sup_{t ≥ e} e^{−ct} t^β (log t)^γ` with `ln c` given; concave in `u = ln t`.
pub(crate) fn decay_weight_log_sup(ln_c: f64, beta: f64, gamma: f64) -> f64 {
    let h = |u: f64| -(u + ln_c).exp() + beta * u + gamma * u.ln();
    let dh = |u: f64| -(u + ln_c).exp() + beta + gamma / u;
    if dh(1.0) <= 0.0 {
        return h(1.0);
    }
    let mut hi = (-ln_c + (beta + gamma + 1.0).ln()).max(1.0) + 1.0;
    while dh(hi) > 0.0 {
        hi *= 2.0;
    }
    let u = bisect(dh, 1.0, hi, 1e-13 * hi).unwrap_or(hi);
    h(u)
}

/// `ln sup_{0<ξ<1} ξ^{1−β} |log ξ|^γ / (ξ + c)` with `ln c` given; concave in `v = ln ξ`.
pub(crate) fn resolvent_weight_log_sup(ln_c: f64, beta: f64, gamma: f64) -> f64 {
    let logaddexp = |a: f64, b: f64| {
        let m = a.max(b);
        m + ((a - m).exp() + (b - m).exp()).ln()
    };
    let logistic = |x: f64| 1.0 / (1.0 + (-x).exp());
    let k = |v: f64| (1.0 - beta) * v + if gamma > 0.0 { gamma * (-v).ln() } else { 0.0 } - logaddexp(v, ln_c);
    let dk = |v: f64| (1.0 - beta) + gamma / v - logistic(v - ln_c);
    let hi = if gamma > 0.0 { -gamma / (2.0 * (2.0 - beta)) } else { 0.0 };
    if gamma == 0.0 && dk(0.0) >= 0.0 {
        return k(0.0);
    }
    let lo = (ln_c - 50.0).min(-4.0 * gamma / (1.0 - beta)).min(-1.0);
    let v = bisect(dk, lo, hi, 1e-13 * lo.abs()).unwrap_or(hi);
    k(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm44Side {
    pub value: f64,
    pub coarse_value: f64,
    pub argmax_mode: usize,
    pub growth: f64,
    pub divergent: bool,
}

impl From<ModeSup> for Thm44Side {
    fn from(s: ModeSup) -> Self {
        Thm44Side {
            value: s.value,
            coarse_value: s.coarse_value,
            argmax_mode: s.argmax,
            growth: s.growth(),
            divergent: s.is_divergent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm44Report {
    pub beta: f64,
    pub gamma: f64,
    pub n_max: usize,
    pub n_coarse: usize,
    pub family_tag: String,
    /// `sup_{t ≥ e} ‖T(t)D‖ t^β (log t)^γ`
    pub decay: Thm44Side,
    /// `sup_{0<ξ<1} g(ξ) ξ^{1−β} |log ξ|^γ` with `g` the resolvent profile.
    pub resolvent: Thm44Side,
    /// Both sides bounded or both divergent.
    pub consistent: bool,
}

/// Compares the weighted decay and resolvent suprema at both truncations.
///
/// Each supremum over `t` or `ξ` is taken mode by mode in closed form (both weighted
/// mode functions are log-concave), so the result is exact for the truncation.
pub fn check_thm44(spec: &Spectrum, sym: &OperatorSymbol, beta: f64, gamma: f64) -> Result<Thm44Report> {
    check_thm44_table(&ModeTable::from_spectrum(spec, sym)?, beta, gamma)
}

pub fn check_thm44_table(table: &ModeTable, beta: f64, gamma: f64) -> Result<Thm44Report> {
    if !(0.0..1.0).contains(&beta) {
        return Err(invalid(format!("β = {beta} must lie in [0, 1)")));
    }
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(invalid(format!("γ = {gamma} must be nonnegative")));
    }
    if table.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let decay: Vec<f64> = table
        .ln_decay
        .iter()
        .zip(&table.ln_weight)
        .map(|(&lc, &ld)| (ld + decay_weight_log_sup(lc, beta, gamma)).exp())
        .collect();
    let resolvent: Vec<f64> = table
        .ln_decay
        .iter()
        .zip(&table.ln_weight)
        .map(|(&lc, &ld)| (ld + resolvent_weight_log_sup(lc, beta, gamma)).exp())
        .collect();
    let (d, r) = (ModeSup::from_values(&decay), ModeSup::from_values(&resolvent));
    let (decay, resolvent) = (Thm44Side::from(d), Thm44Side::from(r));
    Ok(Thm44Report {
        beta,
        gamma,
        n_max: d.n_max,
        n_coarse: d.n_coarse,
        family_tag: table.family_tag.clone(),
        consistent: decay.divergent == resolvent.divergent,
        decay,
        resolvent,
    })
}
