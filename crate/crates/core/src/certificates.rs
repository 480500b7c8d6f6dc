//! Explicit constant chains for the log-decay admissibility criterion, the
//! decay of `C T(t)` under a Weiss condition, and the strong Weiss constants
//! obtained from decay.

use std::f64::consts::{E, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::harness::numerics::{bisect, hurwitz_zeta};
use crate::rates::lemma43_constant;
use crate::spectra::{ModeSup, OperatorSymbol, Spectrum};

/// Common value `τ e^{−τ}` of the two split points.
pub const TAU_LEVEL: f64 = 0.5 / E;

/// Roots `τ₁ < 1 < τ₂` of `τ e^{−τ} = 1/(2e)`.
pub fn solve_tau_pair() -> (f64, f64) {
    let f = |t: f64| t * (-t).exp() - TAU_LEVEL;
    // f(0) < 0 < f(1) and f(1) > 0 > f(10): the brackets always hold
    let t1 = bisect(f, 0.0, 1.0, 1e-15).expect("bracket (0, 1)");
    let t2 = bisect(f, 1.0, 10.0, 1e-14).expect("bracket (1, 10)");
    (t1, t2)
}

/// Measured inputs of the admissibility certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateInputs {
    pub alpha: f64,
    pub beta: f64,
    /// `‖T(t)(−A)^{−α}‖ ≤ M0 (log t)^{−β}` for `t > t0`.
    #[serde(rename = "M0")]
    pub m0: f64,
    pub t0: f64,
    /// `sup_{t≥0} ‖T(t)(−A)^{−α}‖`
    pub c: f64,
    /// Weiss constant of `C(−A)^α`: `‖C(−A)^α R(λ, A)‖ ≤ K / √Re λ`.
    #[serde(rename = "K")]
    pub k: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub inputs: CertificateInputs,
    /// Integral-bound constant for `∫_{t0}^∞ e^{−ξt} (log t)^{−2β} dt`.
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    pub tau1: f64,
    pub tau2: f64,
    /// `log τ₂ − log τ₁`
    pub log_ratio: f64,
    /// First index with `μ_m < 1/(2 t0)`.
    pub m: usize,
    /// `μ_1, …, μ_m`
    pub mu: Vec<f64>,
    /// `τ_m = τ₁ / μ_m`
    pub tau_m: f64,
    /// `Σ_{n≥m} |log 2μ_n|^{−2β}`
    pub series: f64,
    #[serde(rename = "M3")]
    pub m3: f64,
    /// Finite-time constant on `[0, τ_m]`.
    #[serde(rename = "M_ft")]
    pub m_ft: f64,
    #[serde(rename = "M_adm")]
    pub m_adm: f64,
}

impl Certificate {
    /// `μ_n = (τ₁/τ₂)^{n−1}` (1-based).
    pub fn mu_n(&self, n: usize) -> f64 {
        (-(n as f64 - 1.0) * self.log_ratio).exp()
    }

    /// `τ_n = τ₁ / μ_n`
    pub fn tau_n(&self, n: usize) -> f64 {
        self.tau1 / self.mu_n(n)
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} = {v} must be positive and finite")))
    }
}

/// Constant `M_adm` with `∫_0^∞ ‖C T(t) x‖² dt ≤ M_adm ‖x‖²`.
///
/// `m_ft(τ)` must return a finite-time constant on the horizon `[0, τ]`.
pub fn theorem54_certificate<F>(inputs: &CertificateInputs, m_ft: F) -> Result<Certificate>
where
    F: Fn(f64) -> Result<f64>,
{
    let CertificateInputs { alpha, beta, m0, t0, c, k } = *inputs;
    if !(beta > 0.5) {
        return Err(Error::Hypothesis(format!("β must exceed 1/2 (got β = {beta})")));
    }
    positive("α", alpha)?;
    positive("M0", m0)?;
    positive("c", c)?;
    positive("K", k)?;
    let threshold = (2.0 * beta).exp();
    if !(t0 > threshold) || !t0.is_finite() {
        return Err(Error::Hypothesis(format!("t0 = {t0} must exceed e^{{2β}} = {threshold}")));
    }
    let m1 = lemma43_constant(0.0, 2.0 * beta, t0)?.m;
    let lt0 = t0.ln();
    let m2 = k * k * (c * c * lt0.powf(2.0 * beta) / 2.0 + m0 * m0 * m1 / 2.0);

    let (tau1, tau2) = solve_tau_pair();
    let log_ratio = tau2.ln() - tau1.ln();
    // μ_m < 1/(2 t0)  ⟺  (m−1) L > ln(2 t0)
    let bound = (2.0 * t0).ln();
    let mut m = (bound / log_ratio).floor() as usize + 1;
    while (m as f64 - 1.0) * log_ratio <= bound {
        m += 1;
    }
    while m > 1 && (m as f64 - 2.0) * log_ratio > bound {
        m -= 1;
    }
    let mu: Vec<f64> = (1..=m).map(|n| (-(n as f64 - 1.0) * log_ratio).exp()).collect();
    let tau_m = tau1 / mu[m - 1];
    // |log 2μ_n| = (n−1) L − ln 2, so the series is L^{−2β} ζ(2β, (m−1) − ln2/L)
    let shift = (m as f64 - 1.0) - LN_2 / log_ratio;
    let series = log_ratio.powf(-2.0 * beta) * hurwitz_zeta(2.0 * beta, shift)?;
    let m3 = (2.0 * E).powi(2) * m2 * series;
    let ft = m_ft(tau_m)?;
    if !(ft >= 0.0) || !ft.is_finite() {
        return Err(invalid(format!("finite-time constant {ft} at horizon {tau_m} must be finite")));
    }
    Ok(Certificate {
        inputs: *inputs,
        m1,
        m2,
        tau1,
        tau2,
        log_ratio,
        m,
        mu,
        tau_m,
        series,
        m3,
        m_ft: ft,
        m_adm: ft + m3,
    })
}

/// `M = √(2^{1+β}) M₁ M₂` in `‖C T(t)‖ ≤ M / √(t^{1+β})`, from
/// `‖C(−A)^α T(t)‖ ≤ M₁/√t` and `‖T(t)(−A)^{−α}‖ ≤ M₂/√(t^β)`.
pub fn prop56_constant(m1: f64, m2: f64, beta: f64) -> Result<f64> {
    positive("M1", m1)?;
    positive("M2", m2)?;
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(invalid(format!("β = {beta} must be nonnegative")));
    }
    Ok(2f64.powf(1.0 + beta).sqrt() * m1 * m2)
}

/// `M / √(t^{1+β})`
pub fn prop56_envelope(m: f64, beta: f64, t: f64) -> f64 {
    m / t.powf(0.5 * (1.0 + beta))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongWeissConstants {
    pub alpha: f64,
    pub beta: f64,
    /// `αβ/(1+β)`
    pub gamma: f64,
    /// `c_moment M₁^{γ/α} M₂^{1−γ/α}`
    #[serde(rename = "M3")]
    pub m3: f64,
    /// `M₃ Γ(1/2)`
    pub k_weiss: f64,
    /// `(1+β)/2 · (1 − γ/α) − 1/2`
    pub exponent_residual: f64,
}

/// Strong Weiss constants from `‖C(−A)^α T(t)‖ ≤ M₁` and `‖C T(t)‖ ≤ M₂/√(t^{1+β})`.
pub fn prop57_constants(m1: f64, m2: f64, alpha: f64, beta: f64, c_moment: f64) -> Result<StrongWeissConstants> {
    positive("M1", m1)?;
    positive("M2", m2)?;
    positive("α", alpha)?;
    positive("β", beta)?;
    positive("c_moment", c_moment)?;
    let gamma = alpha * beta / (1.0 + beta);
    let theta = gamma / alpha;
    let m3 = c_moment * m1.powf(theta) * m2.powf(1.0 - theta);
    Ok(StrongWeissConstants {
        alpha,
        beta,
        gamma,
        m3,
        k_weiss: m3 * PI.sqrt(),
        exponent_residual: 0.5 * (1.0 + beta) * (1.0 - theta) - 0.5,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentOracle {
    /// Largest observed `‖(−A)^γ y‖ / (‖(−A)^α y‖^{γ/α} ‖y‖^{1−γ/α})`.
    pub ratio: f64,
    pub t: f64,
    /// `None` for a basis vector, otherwise the index of the supplied vector.
    pub vector: Option<usize>,
    /// Basis index (1-based) when `vector` is `None`.
    pub mode: Option<usize>,
    pub evaluations: usize,
}

/// Direct maximization of the moment-inequality ratio over `y = D T(t) x`, with
/// `x` ranging over the basis vectors and the supplied vectors and `t` over `ts`.
pub fn moment_constant_oracle(
    spec: &Spectrum,
    sym: &OperatorSymbol,
    alpha: f64,
    gamma: f64,
    ts: &[f64],
    vectors: &[Vec<Complex64>],
) -> Result<MomentOracle> {
    positive("α", alpha)?;
    if !(gamma > 0.0 && gamma < alpha) {
        return Err(invalid(format!("γ = {gamma} must lie in (0, α)")));
    }
    if ts.is_empty() || ts.iter().any(|t| !(*t >= 0.0)) {
        return Err(invalid("time grid must be nonempty and nonnegative"));
    }
    if let Some(v) = vectors.iter().position(|v| v.len() != spec.n_max()) {
        return Err(invalid(format!("vector {v} has the wrong length")));
    }
    if let Some(i) = spec.modes().iter().position(|z| !(z.re < 0.0)) {
        return Err(Error::NonnegativeRealPart { index: i + 1 });
    }
    let theta = gamma / alpha;
    let abs_l: Vec<f64> = spec.modes().iter().map(|z| z.norm()).collect();
    let moduli = sym.moduli(spec);
    let mut best = MomentOracle { ratio: 0.0, t: ts[0], vector: None, mode: None, evaluations: 0 };
    let consider = |ratio: f64, t: f64, vector: Option<usize>, mode: Option<usize>, best: &mut MomentOracle| {
        best.evaluations += 1;
        if ratio.is_finite() && ratio > best.ratio {
            *best = MomentOracle { ratio, t, vector, mode, evaluations: best.evaluations };
        }
    };
    for &t in ts {
        for (n, z) in spec.modes().iter().enumerate() {
            let y = moduli[n] * (t * z.re).exp();
            if y > 0.0 {
                let r = abs_l[n].powf(gamma) / abs_l[n].powf(alpha * theta);
                consider(r, t, None, Some(n + 1), &mut best);
            }
        }
        for (v, x) in vectors.iter().enumerate() {
            let (mut s0, mut sg, mut sa) = (0.0, 0.0, 0.0);
            for (n, z) in spec.modes().iter().enumerate() {
                let y2 = (moduli[n] * (t * z.re).exp() * x[n].norm()).powi(2);
                s0 += y2;
                sg += abs_l[n].powf(2.0 * gamma) * y2;
                sa += abs_l[n].powf(2.0 * alpha) * y2;
            }
            if s0 > 0.0 {
                let r = sg.sqrt() / (sa.sqrt().powf(theta) * s0.sqrt().powf(1.0 - theta));
                consider(r, t, Some(v), None, &mut best);
            }
        }
    }
    if best.ratio == 0.0 {
        return Err(invalid("every sampled vector vanished"));
    }
    Ok(best)
}

/// `sup_{t ≥ t0} ‖T(t) D‖ (log t)^β`, mode by mode.
///
/// On each mode `−c t + β log log t` is concave, so the maximizer is `t0` or the root
/// of `t log t = β / c`.
pub fn measure_log_decay_constant(spec: &Spectrum, sym: &OperatorSymbol, beta: f64, t0: f64) -> Result<ModeSup> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(invalid(format!("β = {beta} must be nonnegative")));
    }
    if !(t0 > 1.0) || !t0.is_finite() {
        return Err(invalid(format!("t0 = {t0} must exceed 1")));
    }
    if let Some(i) = spec.modes().iter().position(|z| !(z.re < 0.0)) {
        return Err(Error::NonnegativeRealPart { index: i + 1 });
    }
    let u0 = t0.ln();
    let values: Vec<f64> = spec
        .modes()
        .iter()
        .map(|&z| {
            let (d, c) = (sym.modulus(z), -z.re);
            let log_value = |u: f64| -c * u.exp() + beta * u.ln();
            if beta == 0.0 || c * t0 * u0 >= beta {
                return d * log_value(u0).exp();
            }
            // u + ln u = ln(β/c)
            let target = (beta / c).ln();
            let g = |u: f64| u + u.ln() - target;
            let mut hi = target.max(u0) + 1.0;
            while g(hi) < 0.0 {
                hi *= 2.0;
            }
            let u = bisect(g, u0, hi, 1e-14 * hi).unwrap_or(u0);
            d * log_value(u).exp()
        })
        .collect();
    Ok(ModeSup::from_values(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::{finite_time_constant, l2_admissibility_constant};
    use crate::calculus::{semigroup_norm, weiss_exact, weighted_decay_sup};
    use crate::harness::logspace;

    fn unit_inputs() -> CertificateInputs {
        CertificateInputs { alpha: 1.0, beta: 0.75, m0: 1.0, t0: E * E, c: 1.0, k: 1.0 }
    }

    #[test]
    fn tau_pair() {
        let (t1, t2) = solve_tau_pair();
        assert!(t1 < 1.0 && 1.0 < t2);
        assert!((t1 * (-t1).exp() - TAU_LEVEL).abs() < 1e-10);
        assert!((t2 * (-t2).exp() - TAU_LEVEL).abs() < 1e-10);
        assert!((t1 - 0.2320).abs() < 5e-5, "{t1}");
        assert!((t2 - 2.678).abs() < 5e-4, "{t2}");
        assert!((t1 / t2 - 0.0866).abs() < 5e-5);
    }

    #[test]
    fn hypothesis_gates() {
        let mut i = unit_inputs();
        i.beta = 0.4;
        let err = theorem54_certificate(&i, |_| Ok(1.0)).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
        assert!(err.to_string().contains("β must exceed 1/2"));
        i.beta = 0.5;
        assert!(theorem54_certificate(&i, |_| Ok(1.0)).is_err());
        let mut i = unit_inputs();
        i.t0 = (1.5f64).exp();
        assert!(matches!(theorem54_certificate(&i, |_| Ok(1.0)), Err(Error::Hypothesis(_))));
        let mut i = unit_inputs();
        i.k = 0.0;
        assert!(theorem54_certificate(&i, |_| Ok(1.0)).is_err());
    }

    #[test]
    fn unit_certificate_chain() {
        let cert = theorem54_certificate(&unit_inputs(), |_| Ok(1.0)).unwrap();
        assert!(cert.m_adm.is_finite());
        assert!(cert.m_adm >= cert.m_ft && cert.m_adm >= cert.m3);
        // M1 = 1/(1 − 1.5/2) + 1/e
        assert!((cert.m1 - (4.0 + 1.0 / E)).abs() < 1e-13);
        assert!((cert.m2 - (2f64.powf(1.5) / 2.0 + cert.m1 / 2.0)).abs() < 1e-12);
        let mu_m = cert.mu[cert.m - 1];
        assert!(mu_m < 0.5 / cert.inputs.t0);
        assert!(cert.m == 1 || cert.mu[cert.m - 2] >= 0.5 / cert.inputs.t0);
        assert!(cert.mu.windows(2).all(|w| w[1] < w[0]));
        assert!((cert.tau_m - cert.tau_n(cert.m)).abs() < 1e-9 * cert.tau_m);
    }

    #[test]
    fn series_against_direct_sum() {
        let cert = theorem54_certificate(&unit_inputs(), |_| Ok(1.0)).unwrap();
        let direct: f64 = (cert.m..cert.m + 200_000)
            .map(|n| ((n as f64 - 1.0) * cert.log_ratio - LN_2).powf(-1.5))
            .sum();
        for n in cert.m..cert.m + 20 {
            let lhs = (2.0 * cert.mu_n(n)).ln().abs();
            assert!((lhs - ((n as f64 - 1.0) * cert.log_ratio - LN_2)).abs() < 1e-12 * lhs);
        }
        // midpoint estimate of the remaining terms
        let n_end = (cert.m + 200_000) as f64 - 1.0 - LN_2 / cert.log_ratio;
        let tail = 2.0 / (cert.log_ratio.powf(1.5) * (n_end - 0.5).sqrt());
        assert!(((direct + tail) - cert.series).abs() < 1e-6 * cert.series);
    }

    #[test]
    fn doubling_k_quadruples_m3() {
        let a = theorem54_certificate(&unit_inputs(), |_| Ok(1.0)).unwrap();
        let mut i = unit_inputs();
        i.k = 2.0;
        let b = theorem54_certificate(&i, |_| Ok(1.0)).unwrap();
        assert!((b.m2 - 4.0 * a.m2).abs() < 1e-12 * b.m2);
        assert!((b.m3 - 4.0 * a.m3).abs() < 1e-12 * b.m3);
    }

    #[test]
    fn mu_lower_bound_on_consecutive_intervals() {
        let cert = theorem54_certificate(&unit_inputs(), |_| Ok(1.0)).unwrap();
        for n in 1..=3 {
            let (a, b) = (cert.tau_n(n), cert.tau_n(n + 1));
            let mu = cert.mu_n(n);
            for k in 1..2000 {
                let t = a + (b - a) * k as f64 / 2000.0;
                assert!(mu * t * (-mu * t).exp() > TAU_LEVEL, "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn monotone_in_inputs() {
        let base = unit_inputs();
        let m = |i: &CertificateInputs, ft: f64| theorem54_certificate(i, move |_| Ok(ft)).unwrap().m_adm;
        let m_base = m(&base, 1.0);
        for (name, bump) in [("M0", 0usize), ("K", 1), ("c", 2)] {
            let mut i = base;
            match bump {
                0 => i.m0 *= 1.01,
                1 => i.k *= 1.01,
                _ => i.c *= 1.01,
            }
            assert!(m(&i, 1.0) > m_base, "{name}");
        }
        assert!(m(&base, 1.01) > m_base);
    }

    #[test]
    fn beta_dependence() {
        let m = |beta: f64| {
            let i = CertificateInputs { beta, t0: E.powi(3), ..unit_inputs() };
            theorem54_certificate(&i, |_| Ok(1.0)).unwrap().m_adm
        };
        // decreasing while β stays clear of (log t0)/2
        let betas: Vec<f64> = (0..=26).map(|k| 0.55 + 0.025 * k as f64).collect();
        assert!(betas.windows(2).all(|w| m(w[1]) < m(w[0])));
        // the integral-bound constant blows up as β tends to (log t0)/2
        assert!(m(1.49) > m(1.3));
    }

    #[test]
    fn prop56_examples() {
        assert!((prop56_constant(1.0, 1.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((prop56_constant(2.0, 3.0, 0.0).unwrap() - 6.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(prop56_constant(0.0, 1.0, 1.0).is_err());
        assert!(prop56_constant(1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn prop57_examples() {
        let s = prop57_constants(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((s.gamma - 0.5).abs() < 1e-15);
        assert!((s.m3 - 1.0).abs() < 1e-15);
        assert!((s.k_weiss - PI.sqrt()).abs() < 1e-15);
        for (a, b) in [(0.3, 0.2), (1.0, 3.0), (2.5, 0.7)] {
            let s = prop57_constants(1.3, 0.7, a, b, 1.0).unwrap();
            assert!(s.gamma > 0.0 && s.gamma < a);
            assert!(s.exponent_residual.abs() < 1e-12);
        }
        assert!(prop57_constants(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn prop56_envelope_on_example33() {
        let spec = Spectrum::builtin_family("example33", &[], 2000).unwrap();
        let half = OperatorSymbol::power(0.5);
        let m1 = weighted_decay_sup(&spec, &half, 0.5).unwrap().value;
        let m2 = weighted_decay_sup(&spec, &half, 0.5).unwrap().value;
        let m = prop56_constant(m1, m2, 1.0).unwrap();
        for t in logspace(1.0, 1e3, 60) {
            let measured = semigroup_norm(&spec, &OperatorSymbol::power(1.0), t).unwrap().value;
            assert!(prop56_envelope(m, 1.0, t) >= measured, "t = {t}");
        }
    }

    #[test]
    fn moment_oracle_is_one_on_diagonal() {
        let spec = Spectrum::builtin_family("example33", &[], 50).unwrap();
        let vs: Vec<Vec<Complex64>> = (0..5)
            .map(|k| (0..50).map(|n| Complex64::new(((n * 7 + k * 3) % 11) as f64 - 5.0, 1.0)).collect())
            .collect();
        let o = moment_constant_oracle(&spec, &OperatorSymbol::power(1.0), 1.0, 0.5, &[0.0, 1.0, 10.0], &vs).unwrap();
        assert!((o.ratio - 1.0).abs() < 1e-12, "{}", o.ratio);
    }

    #[test]
    fn prop57_bounds_weiss_on_example33() {
        let spec = Spectrum::builtin_family("example33", &[], 2000).unwrap();
        // C = (−A)^{−1}, α = 1: M₁ = sup ‖T(t)‖ = 1, M₂ = sup t ‖T(t) A^{−1}‖, β = 1
        let m1 = weighted_decay_sup(&spec, &OperatorSymbol::identity(), 0.0).unwrap().value;
        let m2 = weighted_decay_sup(&spec, &OperatorSymbol::power(1.0), 1.0).unwrap().value;
        let s = prop57_constants(m1, m2, 1.0, 1.0, 1.0).unwrap();
        let k = weiss_exact(&spec, &OperatorSymbol::power(1.0 - s.gamma), 2.0).unwrap().value;
        assert!(s.k_weiss >= k, "{} < {k}", s.k_weiss);
    }

    #[test]
    fn log_decay_constant_against_grid() {
        let spec = Spectrum::builtin_family("logdecay", &[], 12).unwrap();
        let sym = OperatorSymbol::power(1.0);
        let t0 = 10.0;
        let exact = measure_log_decay_constant(&spec, &sym, 0.75, t0).unwrap();
        let grid = logspace(t0, 1e9, 20_000)
            .into_iter()
            .map(|t| semigroup_norm(&spec, &sym, t).unwrap().value * t.ln().powf(0.75))
            .fold(0.0, f64::max);
        assert!(grid <= exact.value * (1.0 + 1e-12));
        assert!(grid >= exact.value * (1.0 - 1e-3));
    }

    #[test]
    fn certificate_dominates_exact_on_logdecay() {
        let alpha = 1.0;
        let c_sym = OperatorSymbol::power(0.75);
        let spec = Spectrum::builtin_family("logdecay", &[], 20).unwrap();
        let decay_sym = OperatorSymbol::power(alpha);
        let weiss_sym = OperatorSymbol::power(0.75 - alpha);
        for beta in [0.6f64, 0.75, 1.0] {
            let t0 = (2.0 * beta).exp() * 1.5;
            let inputs = CertificateInputs {
                alpha,
                beta,
                m0: measure_log_decay_constant(&spec, &decay_sym, beta, t0).unwrap().value,
                t0,
                c: weighted_decay_sup(&spec, &decay_sym, 0.0).unwrap().value,
                k: weiss_exact(&spec, &weiss_sym, 2.0).unwrap().value,
            };
            let cert =
                theorem54_certificate(&inputs, |tau| Ok(finite_time_constant(&spec, &c_sym, 2.0, tau)?.m_exact)).unwrap();
            let exact = l2_admissibility_constant(&spec, &c_sym).unwrap().m_exact;
            assert!(cert.m_adm.is_finite() && cert.m_adm >= exact, "β = {beta}: {} < {exact}", cert.m_adm);
        }
    }
}
