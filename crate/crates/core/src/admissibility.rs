//! Admissibility constants of diagonal observation operators.
//!
//! For `D` diagonal with symbol `d` and `c_n = |Re λ_n|`,
//!
//! ```text
//! ∫_0^{t1} ‖D T(t) x‖^p dt = Σ_n |d(λ_n)|^p |x_n|^p (1 − e^{−p c_n t1}) / (p c_n)
//! ```
//!
//! on the `p`-summable sequence space, so the best constant is the supremum of
//! the mode factors. The quadrature oracle integrates the same quantity in time
//! for arbitrary vectors and any `q`-space, which is what the closed form is
//! checked against.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harness::quadrature::{geometric_breakpoints, integrate, integrate_with_breakpoints, QuadratureSpec};
use crate::spectra::{pairwise_sum, ModeSup, OperatorSymbol, Spectrum, WeightedIndexSpace};

/// Modes decaying slower than this are treated as non-decaying by the oracle.
pub const MIN_DECAY: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Horizon {
    Infinite,
    Finite(f64),
}

impl Horizon {
    pub fn as_f64(self) -> f64 {
        match self {
            Horizon::Infinite => f64::INFINITY,
            Horizon::Finite(t) => t,
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            Horizon::Finite(t) if !(t > 0.0) => Err(invalid(format!("horizon t1 = {t} must be positive"))),
            h => Ok(h),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub p: f64,
    pub horizon: Horizon,
    #[serde(rename = "M_exact")]
    pub m_exact: f64,
    #[serde(rename = "M_exact_coarse")]
    pub m_exact_coarse: f64,
    /// Quadrature value on the worst unit vector, when computed.
    #[serde(rename = "M_oracle")]
    pub m_oracle: Option<f64>,
    pub n_max: usize,
    pub n_coarse: usize,
    pub argmax_mode: usize,
    pub family_tag: String,
    pub divergent: bool,
    /// False when `M_exact` is only an upper bound (Jensen chain with `p > q`).
    pub best_constant: bool,
    #[serde(skip)]
    pub sup: Option<ModeSup>,
}

impl AdmissibilityReport {
    fn from_sup(spec: &Spectrum, p: f64, horizon: Horizon, sup: ModeSup, best_constant: bool) -> Self {
        AdmissibilityReport {
            p,
            horizon,
            m_exact: sup.value,
            m_exact_coarse: sup.coarse_value,
            m_oracle: None,
            n_max: sup.n_max,
            n_coarse: sup.n_coarse,
            argmax_mode: sup.argmax,
            family_tag: spec.family_label(),
            divergent: sup.is_divergent(),
            best_constant,
            sup: Some(sup),
        }
    }

    pub fn growth(&self) -> f64 {
        self.m_exact / self.m_exact_coarse
    }
}

/// `(1 − e^{−p c t1}) / (p c)`, the time integral of `e^{−p c t}` over `[0, t1)`.
pub fn mode_energy(p: f64, c: f64, t1: f64) -> f64 {
    if t1.is_infinite() {
        1.0 / (p * c)
    } else {
        -(-p * c * t1).exp_m1() / (p * c)
    }
}

fn check_spectrum(spec: &Spectrum) -> Result<()> {
    match spec.modes().iter().position(|z| !(z.re < 0.0)) {
        Some(i) => Err(Error::NonnegativeRealPart { index: i + 1 }),
        None => Ok(()),
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(invalid(format!("exponent p = {p} must lie in [1, ∞)")));
    }
    Ok(())
}

fn exact_sup(spec: &Spectrum, sym: &OperatorSymbol, p: f64, t1: f64) -> ModeSup {
    let values: Vec<f64> =
        spec.modes().iter().map(|&z| sym.modulus_over_decay(z, 1.0 / p).powf(p) * mode_energy(p, 1.0, z.re * -t1)).collect();
    ModeSup::from_values(&values)
}

/// Best constant `M` in `∫_0^∞ ‖D T(t) x‖² dt ≤ M ‖x‖²`, with a quadrature check on the
/// attaining basis vector.
pub fn l2_admissibility_constant(spec: &Spectrum, sym: &OperatorSymbol) -> Result<AdmissibilityReport> {
    check_spectrum(spec)?;
    let sup = exact_sup(spec, sym, 2.0, f64::INFINITY);
    let k = sup.argmax - 1;
    let mut x = vec![Complex64::new(0.0, 0.0); spec.n_max()];
    x[k] = Complex64::new(1.0, 0.0);
    let horizon = 10.0 / -spec.modes()[k].re;
    let oracle = admissibility_oracle(spec, sym, 2.0, &x, horizon, None)?;
    let mut report = AdmissibilityReport::from_sup(spec, 2.0, Horizon::Infinite, sup, true);
    report.m_oracle = Some(oracle.value);
    Ok(report)
}

/// Constant of the finite-horizon estimate `∫_0^{t1} ‖D T(t) x‖^p dt ≤ M ‖x‖^p` on `ℓ^p`.
///
/// `t1 = ∞` is accepted and gives the infinite-time constant.
pub fn finite_time_constant(spec: &Spectrum, sym: &OperatorSymbol, p: f64, t1: f64) -> Result<AdmissibilityReport> {
    check_p(p)?;
    if !(t1 > 0.0) {
        return Err(invalid(format!("horizon t1 = {t1} must be positive")));
    }
    check_spectrum(spec)?;
    let horizon = if t1.is_infinite() { Horizon::Infinite } else { Horizon::Finite(t1) };
    Ok(AdmissibilityReport::from_sup(spec, p, horizon, exact_sup(spec, sym, p, t1), true))
}

/// Jensen-chain bound for the multiplication semigroup on a weighted `ℓ^q` space with
/// observation symbol `(−λ)^{−α/p}`.
///
/// The bound is `sup_n (1 − e^{−p c_n t1}) / (p c_n |λ_n|^α)`, which is `M/p` with
/// `M = sup_n 1/(c_n |λ_n|^α)` for `t1 = ∞`. It is the best constant when `p = q`.
pub fn lp_admissibility(
    spec: &Spectrum,
    space: &WeightedIndexSpace,
    alpha: f64,
    p: f64,
    horizon: Horizon,
) -> Result<AdmissibilityReport> {
    check_p(p)?;
    if p < space.q() {
        return Err(invalid(format!("exponent p = {p} must be at least q = {}", space.q())));
    }
    if !(alpha > 0.0) {
        return Err(invalid(format!("α = {alpha} must be positive")));
    }
    if space.len() != spec.n_max() {
        return Err(invalid(format!("space has {} weights for {} modes", space.len(), spec.n_max())));
    }
    let horizon = horizon.validate()?;
    check_spectrum(spec)?;
    let t1 = horizon.as_f64();
    let sup = exact_sup(spec, &OperatorSymbol::power(alpha / p), p, t1);
    Ok(AdmissibilityReport::from_sup(spec, p, horizon, sup, p == space.q()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    /// `∫_0^∞ ‖D T(t) x‖^p dt / ‖x‖^p`.
    pub value: f64,
    /// Closed form of the same ratio when `p = q`.
    pub closed_form: Option<f64>,
    /// Integral beyond the final horizon: exact when `p = q`, an upper bound otherwise.
    pub tail: f64,
    pub tail_exact: bool,
    pub error: f64,
    pub horizon: f64,
    pub converged: bool,
}

/// Ratio `Σ μ_n |d_n x_n|^p (1 − e^{−p c_n t1})/(p c_n) / ‖x‖^p` on the `p`-space.
pub fn energy_closed_form(
    spec: &Spectrum,
    sym: &OperatorSymbol,
    p: f64,
    x: &[Complex64],
    t1: f64,
    space: Option<&WeightedIndexSpace>,
) -> Result<f64> {
    check_p(p)?;
    let space = resolve_space(spec, x, p, space)?;
    if space.q() != p {
        return Err(invalid("closed form needs p = q"));
    }
    let norm = space.norm_pow_q(x);
    if !(norm > 0.0) {
        return Err(invalid("coefficient vector is zero"));
    }
    let terms: Vec<f64> = spec
        .modes()
        .iter()
        .zip(x)
        .zip(space.weights())
        .map(|((&z, xn), mu)| mu * (sym.modulus(z) * xn.norm()).powf(p) * mode_energy(p, -z.re, t1))
        .collect();
    Ok(pairwise_sum(&terms) / norm)
}

fn resolve_space(
    spec: &Spectrum,
    x: &[Complex64],
    p: f64,
    space: Option<&WeightedIndexSpace>,
) -> Result<WeightedIndexSpace> {
    if x.len() != spec.n_max() {
        return Err(invalid(format!("vector has {} entries for {} modes", x.len(), spec.n_max())));
    }
    let space = match space {
        Some(s) => s.clone(),
        None => WeightedIndexSpace::counting(spec.n_max(), p)?,
    };
    if space.len() != spec.n_max() {
        return Err(invalid(format!("space has {} weights for {} modes", space.len(), spec.n_max())));
    }
    Ok(space)
}

/// Quadrature estimate of `∫_0^∞ ‖D T(t) x‖^p dt / ‖x‖^p` in the norm of `space`
/// (counting measure with `q = p` by default).
///
/// The integral is computed on `[0, T]`; the remainder is added exactly when `p = q`
/// and otherwise bounded by `‖D T(T) x‖^p / (p c_min)`, doubling `T` until that bound
/// is within tolerance.
pub fn admissibility_oracle(
    spec: &Spectrum,
    sym: &OperatorSymbol,
    p: f64,
    x: &[Complex64],
    horizon: f64,
    space: Option<&WeightedIndexSpace>,
) -> Result<OracleEstimate> {
    admissibility_oracle_with(spec, sym, p, x, horizon, space, &QuadratureSpec::default())
}

pub fn admissibility_oracle_with(
    spec: &Spectrum,
    sym: &OperatorSymbol,
    p: f64,
    x: &[Complex64],
    horizon: f64,
    space: Option<&WeightedIndexSpace>,
    quad: &QuadratureSpec,
) -> Result<OracleEstimate> {
    check_p(p)?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(invalid(format!("horizon T = {horizon} must be positive and finite")));
    }
    check_spectrum(spec)?;
    let space = resolve_space(spec, x, p, space)?;
    let q = space.q();
    let norm = space.norm_pow_q(x);
    if !(norm > 0.0) {
        return Err(invalid("coefficient vector is zero"));
    }
    let norm_p = norm.powf(p / q);

    // active modes: (decay rate, μ |d x|^q)
    let active: Vec<(f64, f64)> = spec
        .modes()
        .iter()
        .zip(x)
        .zip(space.weights())
        .filter(|((_, xn), _)| xn.norm() > 0.0)
        .map(|((&z, xn), mu)| (-z.re, mu * (sym.modulus(z) * xn.norm()).powf(q)))
        .filter(|(_, w)| *w > 0.0)
        .collect();
    if active.is_empty() {
        return Ok(OracleEstimate {
            value: 0.0,
            closed_form: (p == q).then_some(0.0),
            tail: 0.0,
            tail_exact: true,
            error: 0.0,
            horizon,
            converged: true,
        });
    }
    let c_min = active.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
    let c_max = active.iter().map(|a| a.0).fold(0.0, f64::max);
    if c_max < MIN_DECAY || c_min < MIN_DECAY {
        return Err(Error::NonconvergentTail(format!("a mode in the support decays at rate below {MIN_DECAY}")));
    }
    let inner = |t: f64| -> f64 {
        let terms: Vec<f64> = active.iter().map(|(c, w)| w * (-q * c * t).exp()).collect();
        pairwise_sum(&terms)
    };
    let f = |t: f64| inner(t).powf(p / q);

    let pts = geometric_breakpoints(0.0, horizon, (0.05 / c_max).min(horizon));
    let mut res = integrate_with_breakpoints(f, &pts, quad)?;
    let mut t_end = horizon;
    let tail_exact = p == q;
    let tail = if tail_exact {
        let terms: Vec<f64> = active.iter().map(|(c, w)| w * (-p * c * t_end).exp() / (p * c)).collect();
        pairwise_sum(&terms)
    } else {
        let mut bound = f(t_end) / (p * c_min);
        let mut rounds = 0;
        while bound > quad.rel_tol * res.value.abs() && rounds < 60 {
            let next = 2.0 * t_end;
            let more = integrate(f, t_end, next, quad)?;
            res.value += more.value;
            res.error += more.error;
            res.converged &= more.converged;
            t_end = next;
            bound = f(t_end) / (p * c_min);
            rounds += 1;
        }
        bound
    };
    let value = if tail_exact { res.value + tail } else { res.value };
    let error = if tail_exact { res.error } else { res.error + tail };
    let closed_form = if tail_exact { Some(energy_closed_form(spec, sym, p, x, f64::INFINITY, Some(&space))?) } else { None };
    Ok(OracleEstimate {
        value: value / norm_p,
        closed_form,
        tail: tail / norm_p,
        tail_exact,
        error: error / norm_p,
        horizon: t_end,
        converged: res.converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    pub xi: f64,
    /// `∫_0^∞ ‖e^{−ξt} T(t) x‖² dt` by time quadrature.
    pub lhs: f64,
    /// `(1/2π) ∫ ‖R(ξ + iη, A) x‖² dη` by frequency quadrature.
    pub rhs: f64,
    /// `Σ_n |x_n|² / (2(ξ + c_n))`.
    pub closed_form: f64,
    pub gap: f64,
    pub rel_gap: f64,
}

/// Both sides of the Plancherel identity for the shifted semigroup, evaluated independently.
pub fn plancherel_check(spec: &Spectrum, x: &[Complex64], xi: f64) -> Result<PlancherelReport> {
    plancherel_check_with(spec, x, xi, &QuadratureSpec::with_tolerances(1e-12, 1e-300))
}

pub fn plancherel_check_with(spec: &Spectrum, x: &[Complex64], xi: f64, quad: &QuadratureSpec) -> Result<PlancherelReport> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(invalid(format!("shift ξ = {xi} must be positive")));
    }
    check_spectrum(spec)?;
    if x.len() != spec.n_max() {
        return Err(invalid(format!("vector has {} entries for {} modes", x.len(), spec.n_max())));
    }
    // active modes: (Im λ, ξ + c, |x|²)
    let active: Vec<(f64, f64, f64)> = spec
        .modes()
        .iter()
        .zip(x)
        .filter(|(_, xn)| xn.norm_sqr() > 0.0)
        .map(|(z, xn)| (z.im, xi - z.re, xn.norm_sqr()))
        .collect();
    if active.is_empty() {
        return Err(invalid("coefficient vector is zero"));
    }
    let closed: Vec<f64> = active.iter().map(|(_, w, m)| m / (2.0 * w)).collect();
    let closed_form = pairwise_sum(&closed);

    // time side: Σ |x|² e^{−2 w t}, exact exponential tail past the last breakpoint
    let w_min = active.iter().map(|a| a.1).fold(f64::INFINITY, f64::min);
    let w_max = active.iter().map(|a| a.1).fold(0.0, f64::max);
    let time_f = |t: f64| {
        let terms: Vec<f64> = active.iter().map(|(_, w, m)| m * (-2.0 * w * t).exp()).collect();
        pairwise_sum(&terms)
    };
    let t_end = 30.0 / w_min;
    let pts = geometric_breakpoints(0.0, t_end, 0.05 / w_max);
    let time = integrate_with_breakpoints(time_f, &pts, quad)?;
    let time_tail: Vec<f64> = active.iter().map(|(_, w, m)| m * (-2.0 * w * t_end).exp() / (2.0 * w)).collect();
    let lhs = time.value + pairwise_sum(&time_tail);

    // frequency side: Lorentzians of width w centred at Im λ_n, atan tails beyond ±L
    let freq_f = |eta: f64| {
        let terms: Vec<f64> = active.iter().map(|(m0, w, m)| m / (w * w + (eta - m0) * (eta - m0))).collect();
        pairwise_sum(&terms)
    };
    let lo = active.iter().map(|(m0, w, _)| m0 - 1e3 * w).fold(f64::INFINITY, f64::min);
    let hi = active.iter().map(|(m0, w, _)| m0 + 1e3 * w).fold(f64::NEG_INFINITY, f64::max);
    let mut pts = vec![lo, hi];
    for (m0, w, _) in &active {
        let mut k = 0.25;
        pts.push(*m0);
        while k <= 1e3 {
            pts.push(m0 - k * w);
            pts.push(m0 + k * w);
            k *= 2.0;
        }
    }
    pts.retain(|p| *p >= lo && *p <= hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let freq = integrate_with_breakpoints(freq_f, &pts, quad)?;
    // ∫_hi^∞ w/(w² + (η−m)²) dη = atan(w/(hi−m)) for hi > m, and likewise below lo
    let tails: Vec<f64> =
        active.iter().map(|(m0, w, m)| m / w * ((w / (hi - m0)).atan() + (w / (m0 - lo)).atan())).collect();
    let rhs = (freq.value + pairwise_sum(&tails)) / (2.0 * std::f64::consts::PI);

    let gap = (lhs - rhs).abs();
    Ok(PlancherelReport { xi, lhs, rhs, closed_form, gap, rel_gap: gap / lhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single() -> Spectrum {
        Spectrum::builtin_family("single", &[1.0], 1).unwrap()
    }

    fn ex33(n: usize) -> Spectrum {
        Spectrum::builtin_family("example33", &[], n).unwrap()
    }

    fn basis(n: usize, k: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); n];
        v[k - 1] = c(1.0, 0.0);
        v
    }

    #[test]
    fn l2_single_mode() {
        let r = l2_admissibility_constant(&single(), &OperatorSymbol::identity()).unwrap();
        assert_relative_eq!(r.m_exact, 0.5, max_relative = 1e-15);
        assert!((r.m_oracle.unwrap() - 0.5).abs() < 1e-10);
        assert!(!r.divergent);
    }

    #[test]
    fn l2_example33_thresholds() {
        let spec = ex33(10_000);
        let half = l2_admissibility_constant(&spec, &OperatorSymbol::power(0.5)).unwrap();
        let n = 10_000f64;
        assert_relative_eq!(half.m_exact, 0.5 * n * n / (1.0 + n.powi(4)).sqrt(), max_relative = 1e-13);
        assert!(!half.divergent);
        assert!((half.m_oracle.unwrap() - half.m_exact).abs() < 1e-8);
        let low = l2_admissibility_constant(&spec, &OperatorSymbol::power(0.4)).unwrap();
        assert!(low.divergent);
        assert_relative_eq!(low.growth(), 10f64.powf(0.2), max_relative = 1e-3);
    }

    #[test]
    fn finite_time_examples() {
        let one = finite_time_constant(&single(), &OperatorSymbol::identity(), 2.0, 2f64.ln()).unwrap();
        assert_relative_eq!(one.m_exact, 3.0 / 8.0, max_relative = 1e-14);
        let inf = finite_time_constant(&single(), &OperatorSymbol::identity(), 2.0, f64::INFINITY).unwrap();
        assert_relative_eq!(inf.m_exact, 0.5, max_relative = 1e-15);
        let ex = finite_time_constant(&ex33(10_000), &OperatorSymbol::identity(), 2.0, 1.0).unwrap();
        // (1 − e^{−2/n})/(2/n) at n = 10⁴
        assert_relative_eq!(ex.m_exact, -(-2e-4f64).exp_m1() / 2e-4, max_relative = 1e-14);
        assert_eq!(ex.argmax_mode, 10_000);
        assert!(finite_time_constant(&single(), &OperatorSymbol::identity(), 2.0, 0.0).is_err());
        assert!(finite_time_constant(&single(), &OperatorSymbol::identity(), 0.5, 1.0).is_err());
    }

    #[test]
    fn finite_time_monotone_in_horizon() {
        let spec = ex33(500);
        let sym = OperatorSymbol::power(0.3);
        let mut last = 0.0;
        for t1 in [0.1, 1.0, 10.0, 100.0, 1e4, f64::INFINITY] {
            let v = finite_time_constant(&spec, &sym, 2.0, t1).unwrap().m_exact;
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn lp_bound_examples() {
        let s1 = WeightedIndexSpace::counting(1, 2.0).unwrap();
        let r = lp_admissibility(&single(), &s1, 1.0, 2.0, Horizon::Infinite).unwrap();
        assert_relative_eq!(r.m_exact, 0.5, max_relative = 1e-15);
        assert!(r.best_constant);

        let spec = ex33(10_000);
        let q1 = WeightedIndexSpace::counting(10_000, 1.0).unwrap();
        let r = lp_admissibility(&spec, &q1, 1.0, 2.0, Horizon::Infinite).unwrap();
        let n = 10_000f64;
        assert_relative_eq!(r.m_exact, 0.5 * n * n / (1.0 + n.powi(4)).sqrt(), max_relative = 1e-13);
        assert!(!r.best_constant);

        let q2 = WeightedIndexSpace::counting(10_000, 2.0).unwrap();
        let r = lp_admissibility(&spec, &q2, 1.0, 2.0, Horizon::Infinite).unwrap();
        let l2 = l2_admissibility_constant(&spec, &OperatorSymbol::power(0.5)).unwrap();
        assert_relative_eq!(r.m_exact, l2.m_exact, max_relative = 1e-13);
        assert!(lp_admissibility(&spec, &q2, 1.0, 1.5, Horizon::Infinite).is_err());
    }

    #[test]
    fn oracle_examples() {
        let sym = OperatorSymbol::identity();
        let o = admissibility_oracle(&single(), &sym, 2.0, &[c(1.0, 0.0)], 5.0, None).unwrap();
        assert!((o.value - 0.5).abs() < 1e-8);

        let spec = ex33(10);
        let half = OperatorSymbol::power(0.5);
        let mode = |n: f64| 0.5 * n * n / (1.0 + n.powi(4)).sqrt();
        for k in 1..=10 {
            let o = admissibility_oracle(&spec, &half, 2.0, &basis(10, k), 3.0, None).unwrap();
            assert!((o.value - mode(k as f64)).abs() < 1e-8, "{k}: {o:?}");
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut x = vec![c(0.0, 0.0); 10];
        x[0] = c(s, 0.0);
        x[1] = c(0.0, s);
        let o = admissibility_oracle(&spec, &half, 2.0, &x, 3.0, None).unwrap();
        assert!((o.value - 0.5 * (mode(1.0) + mode(2.0))).abs() < 1e-8);
        assert!((o.value - o.closed_form.unwrap()).abs() < 1e-10);
    }

    #[test]
    fn oracle_general_q_matches_p_equal_q_closed_form() {
        let spec = ex33(6);
        let sym = OperatorSymbol::power(0.25);
        let space = WeightedIndexSpace::new(vec![1.0, 2.0, 0.5, 1.0, 3.0, 1.0], 3.0).unwrap();
        let x: Vec<Complex64> = (1..=6).map(|k| c(1.0 / k as f64, 0.3)).collect();
        let o = admissibility_oracle(&spec, &sym, 3.0, &x, 4.0, Some(&space)).unwrap();
        assert_relative_eq!(o.value, o.closed_form.unwrap(), max_relative = 1e-9);

        // p > q: the oracle respects the Jensen bound of the q-space
        let q1 = WeightedIndexSpace::counting(6, 1.0).unwrap();
        let bound = lp_admissibility(&spec, &q1, 1.0, 2.0, Horizon::Infinite).unwrap().m_exact;
        let sym = OperatorSymbol::power(0.5);
        let o = admissibility_oracle(&spec, &sym, 2.0, &x, 4.0, Some(&q1)).unwrap();
        assert!(!o.tail_exact);
        assert!(o.value <= bound * (1.0 + 1e-9), "{} > {bound}", o.value);
    }

    #[test]
    fn oracle_errors() {
        let sym = OperatorSymbol::identity();
        assert!(admissibility_oracle(&single(), &sym, 2.0, &[c(0.0, 0.0)], 1.0, None).is_err());
        assert!(admissibility_oracle(&single(), &sym, 2.0, &[c(1.0, 0.0)], 0.0, None).is_err());
        let slow = Spectrum::new(vec![c(-1e-13, 1.0)]).unwrap();
        let err = admissibility_oracle(&slow, &sym, 2.0, &[c(1.0, 0.0)], 1.0, None).unwrap_err();
        assert!(matches!(err, Error::NonconvergentTail(_)));
    }

    #[test]
    fn plancherel_examples() {
        let r = plancherel_check(&single(), &[c(1.0, 0.0)], 1.0).unwrap();
        assert!((r.lhs - 0.25).abs() < 1e-10 && (r.rhs - 0.25).abs() < 1e-10);
        let spec = ex33(5);
        let r = plancherel_check(&spec, &basis(5, 2), 0.5).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-10 && (r.rhs - 0.5).abs() < 1e-10);
        let x = vec![c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let r = plancherel_check(&spec, &x, 0.1).unwrap();
        assert!(r.gap < 1e-6, "{r:?}");
        assert!((r.lhs - r.closed_form).abs() < 1e-9);
        assert!(plancherel_check(&spec, &x, 0.0).is_err());
    }
}
