//! Adaptive Gauss–Kronrod (7/15) quadrature with exponential-tail handling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TailPolicy {
    /// Stop where the supplied envelope certifies the remainder is below tolerance.
    AnalyticBound,
    /// Double the horizon until the last increment is below tolerance.
    ExtendedHorizon,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail: TailPolicy,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-11, abs_tol: 1e-13, max_subdivisions: 4000, tail: TailPolicy::AnalyticBound }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureSpec { rel_tol, abs_tol, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(invalid("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(invalid("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

/// `|f(t)| ≤ amplitude · e^{−rate (t − origin)}` for `t ≥ origin`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpEnvelope {
    pub amplitude: f64,
    pub rate: f64,
    pub origin: f64,
}

impl ExpEnvelope {
    pub fn new(amplitude: f64, rate: f64, origin: f64) -> Self {
        ExpEnvelope { amplitude, rate, origin }
    }

    /// `∫_T^∞` of the envelope.
    pub fn tail(&self, horizon: f64) -> f64 {
        self.amplitude * (-self.rate * (horizon - self.origin)).exp() / self.rate
    }

    /// Smallest horizon `≥ from` with `tail ≤ target`.
    pub fn horizon_for(&self, target: f64, from: f64) -> f64 {
        let t = self.origin + (self.amplitude / (self.rate * target)).ln() / self.rate;
        t.max(from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    /// Kronrod error estimate plus any tail bound.
    pub error: f64,
    pub tail_bound: f64,
    pub horizon: f64,
    pub evaluations: usize,
    /// False when the subdivision budget ran out; `value` is then partial.
    pub converged: bool,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        resk += WGK[j] * s;
        if j % 2 == 1 {
            resg += WG[j / 2] * s;
        }
    }
    let value = resk * half;
    let err = ((resk - resg) * half).abs();
    (value, err)
}

/// Adaptive integration over `[a, b]` seeded with the given interior breakpoints.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    if points.len() < 2 || points.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(invalid("integration breakpoints must be strictly increasing"));
    }
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (v, e) = kronrod(&f, w[0], w[1]);
        evaluations += 15;
        total += v;
        total_err += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }
    let mut segments = heap.len();
    let target = |total: f64| spec.abs_tol.max(spec.rel_tol * total.abs());
    while total_err > target(total) {
        if segments >= spec.max_subdivisions {
            return Ok(QuadResult {
                value: total,
                error: total_err,
                tail_bound: 0.0,
                horizon: points[points.len() - 1],
                evaluations,
                converged: false,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval at machine resolution; keep its estimate
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        segments += 1;
    }
    // re-sum to shed drift from incremental updates
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segs.iter().map(|s| s.value).sum();
    let error = segs.iter().map(|s| s.error).sum();
    Ok(QuadResult { value, error, tail_bound: 0.0, horizon: points[points.len() - 1], evaluations, converged: true })
}

pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Breakpoints `a, a + s, a + 2s, a + 4s, …, b` (geometric in the offset from `a`).
pub fn geometric_breakpoints(a: f64, b: f64, first_width: f64) -> Vec<f64> {
    let mut pts = vec![a];
    let mut w = first_width.max((b - a) * 1e-12);
    while a + w < b {
        pts.push(a + w);
        w *= 2.0;
    }
    pts.push(b);
    pts
}

/// `∫_a^∞ f` for integrands dominated by an exponential envelope.
///
/// With [`TailPolicy::AnalyticBound`] the horizon is chosen so the envelope
/// tail is below a tenth of the tolerance; the tail bound is added to the
/// reported error, not to the value.
pub fn integrate_decaying<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    envelope: Option<ExpEnvelope>,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    match spec.tail {
        TailPolicy::AnalyticBound => {
            let env = envelope.ok_or(Error::EnvelopeMissing)?;
            if !(env.rate > 0.0) || !(env.amplitude >= 0.0) || env.origin < a {
                return Err(invalid("envelope must have positive rate and start inside the domain"));
            }
            if env.amplitude == 0.0 {
                return Ok(QuadResult {
                    value: 0.0,
                    error: 0.0,
                    tail_bound: 0.0,
                    horizon: a,
                    evaluations: 0,
                    converged: true,
                });
            }
            // size the horizon against the mass of the integral itself
            let scale_guess = env.tail(env.origin);
            let target = 0.1 * spec.abs_tol.max(spec.rel_tol * scale_guess * 1e-3);
            let horizon = env.horizon_for(target, env.origin.max(a) + 1.0 / env.rate);
            let pts = geometric_breakpoints(a, horizon, (0.05 / env.rate).min(horizon - a));
            let mut res = integrate_with_breakpoints(&f, &pts, spec)?;
            res.tail_bound = env.tail(horizon);
            res.error += res.tail_bound;
            res.horizon = horizon;
            Ok(res)
        }
        TailPolicy::ExtendedHorizon => {
            let scale = envelope.map_or(1.0, |e| 1.0 / e.rate);
            let mut horizon = a + scale;
            let mut res = integrate(&f, a, horizon, spec)?;
            let mut evaluations = res.evaluations;
            for _ in 0..200 {
                let next = a + 2.0 * (horizon - a);
                let pts = geometric_breakpoints(horizon, next, (next - horizon) / 8.0);
                let inc = integrate_with_breakpoints(&f, &pts, spec)?;
                evaluations += inc.evaluations;
                res.value += inc.value;
                res.error += inc.error;
                res.converged &= inc.converged;
                horizon = next;
                if inc.value.abs() <= 0.1 * spec.abs_tol.max(spec.rel_tol * res.value.abs()) {
                    res.horizon = horizon;
                    res.tail_bound = inc.value.abs();
                    res.evaluations = evaluations;
                    return Ok(res);
                }
            }
            res.converged = false;
            res.horizon = horizon;
            res.evaluations = evaluations;
            Ok(res)
        }
    }
}
