//! Eigenvalue sequences, mode-wise operator symbols and truncation-aware suprema.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Relative growth between the coarse and full truncation above which a
/// supremum is reported as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 0.01;

/// Built-in spectrum families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `λ_n = −1/n + i n`
    Example33,
    /// `λ_n = −e^{−n} + i n`
    LogDecay,
    /// One eigenvalue `−c + i ω` (params `[c]` or `[c, ω]`).
    Single,
    /// `λ_n = −n^{−a} + i n^{b}` (params `[a, b]`).
    PowerLaw,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Example33 => "example33",
            Family::LogDecay => "logdecay",
            Family::Single => "single",
            Family::PowerLaw => "powerlaw",
        }
    }

    fn generate(self, params: &[f64], n_max: usize) -> Result<Vec<Complex64>> {
        let bad = |reason: &str| Error::InvalidParams {
            family: self.name().to_string(),
            reason: reason.to_string(),
        };
        if params.iter().any(|p| !p.is_finite()) {
            return Err(bad("parameters must be finite"));
        }
        match self {
            Family::Example33 | Family::LogDecay => {
                if !params.is_empty() {
                    return Err(bad("takes no parameters"));
                }
                Ok((1..=n_max)
                    .map(|n| {
                        let n = n as f64;
                        let re = if self == Family::Example33 { -1.0 / n } else { -(-n).exp() };
                        Complex64::new(re, n)
                    })
                    .collect())
            }
            Family::Single => {
                let (c, omega) = match params {
                    [c] => (*c, 0.0),
                    [c, omega] => (*c, *omega),
                    _ => return Err(bad("expects [c] or [c, omega]")),
                };
                if c <= 0.0 {
                    return Err(bad("c must be positive"));
                }
                if n_max != 1 {
                    return Err(bad("a single-mode spectrum has n_max = 1"));
                }
                Ok(vec![Complex64::new(-c, omega)])
            }
            Family::PowerLaw => {
                let [a, b] = params else {
                    return Err(bad("expects [a, b]"));
                };
                if *a <= 0.0 {
                    return Err(bad("a must be positive"));
                }
                Ok((1..=n_max)
                    .map(|n| {
                        let n = n as f64;
                        Complex64::new(-n.powf(-a), n.powf(*b))
                    })
                    .collect())
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example33" => Ok(Family::Example33),
            "logdecay" => Ok(Family::LogDecay),
            "single" => Ok(Family::Single),
            "powerlaw" => Ok(Family::PowerLaw),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    pub params: Vec<f64>,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}", self.name)
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "{}[{}]", self.name, ps.join(","))
        }
    }
}

/// Eigenvalues `λ_1, …, λ_{n_max}` of a diagonal generator, all with `Re λ_n < 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    modes: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilyTag>,
    #[serde(default)]
    invertible: bool,
}

impl Spectrum {
    pub fn new(modes: Vec<Complex64>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for (i, z) in modes.iter().enumerate() {
            if !(z.re < 0.0) || !z.im.is_finite() || !z.re.is_finite() {
                return Err(Error::NonnegativeRealPart { index: i + 1 });
            }
        }
        Ok(Spectrum { modes, family: None, invertible: false })
    }

    pub fn builtin(family: Family, params: &[f64], n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(invalid("n_max must be at least 1"));
        }
        let modes = family.generate(params, n_max)?;
        let mut spec = Spectrum::new(modes).map_err(|e| match e {
            Error::NonnegativeRealPart { index } => Error::InvalidParams {
                family: family.name().to_string(),
                reason: format!("mode {index} has nonnegative real part"),
            },
            other => other,
        })?;
        spec.family = Some(FamilyTag { name: family.name().to_string(), params: params.to_vec() });
        Ok(spec)
    }

    /// Looks the family up by name; see [`Family`].
    pub fn builtin_family(name: &str, params: &[f64], n_max: usize) -> Result<Self> {
        Spectrum::builtin(name.parse()?, params, n_max)
    }

    pub fn with_tag(mut self, tag: FamilyTag) -> Self {
        self.family = Some(tag);
        self
    }

    /// Marks `0 ∈ ρ(A)`; checks `min |λ_n| > 0` over the truncation.
    pub fn with_invertible(mut self, invertible: bool) -> Result<Self> {
        if invertible && !(self.min_modulus() > 0.0) {
            return Err(invalid("spectrum is not boundedly invertible over the truncation"));
        }
        self.invertible = invertible;
        Ok(self)
    }

    pub fn modes(&self) -> &[Complex64] {
        &self.modes
    }

    pub fn n_max(&self) -> usize {
        self.modes.len()
    }

    /// Coarse truncation level used for divergence detection: `max(1, n_max / 10)`.
    pub fn n_coarse(&self) -> usize {
        (self.modes.len() / 10).max(1)
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    pub fn family_label(&self) -> String {
        self.family.as_ref().map_or_else(|| "custom".to_string(), |t| t.to_string())
    }

    /// First `n` modes (clamped to `1..=n_max`), keeping the tag.
    pub fn truncate(&self, n: usize) -> Spectrum {
        let n = n.clamp(1, self.modes.len());
        Spectrum { modes: self.modes[..n].to_vec(), family: self.family.clone(), invertible: self.invertible }
    }

    pub fn min_decay(&self) -> f64 {
        self.modes.iter().map(|z| -z.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.modes.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    fn min_modulus(&self) -> f64 {
        self.modes.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Mode-wise weight `d(λ) = s · (−λ)^{−a} (1−λ)^{−b}` on the principal branch.
///
/// `a = 1` is `(−A)^{−1}`, `a = −α` is `(−A)^{α}`, `b = δ` is `(I−A)^{−δ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSymbol {
    pub a: f64,
    pub b: f64,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for OperatorSymbol {
    fn default() -> Self {
        OperatorSymbol::identity()
    }
}

impl OperatorSymbol {
    pub fn new(a: f64, b: f64) -> Self {
        OperatorSymbol { a, b, scale: 1.0 }
    }

    pub fn identity() -> Self {
        OperatorSymbol::new(0.0, 0.0)
    }

    /// `(−A)^{−a}`
    pub fn power(a: f64) -> Self {
        OperatorSymbol::new(a, 0.0)
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// Pointwise product of two symbols.
    pub fn compose(self, other: OperatorSymbol) -> Self {
        OperatorSymbol { a: self.a + other.a, b: self.b + other.b, scale: self.scale * other.scale }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.scale == 1.0
    }

    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        if !(lambda.re < 0.0) {
            return Err(invalid(format!("symbol evaluated at Re λ = {} ≥ 0", lambda.re)));
        }
        let log_d = -self.a * (-lambda).ln() - self.b * (Complex64::new(1.0, 0.0) - lambda).ln();
        Ok(log_d.exp() * self.scale)
    }

    /// `|d(λ)|`, assuming `Re λ < 0`.
    pub fn modulus(&self, lambda: Complex64) -> f64 {
        let mut log_m = 0.0;
        if self.a != 0.0 {
            log_m -= self.a * lambda.norm().ln();
        }
        if self.b != 0.0 {
            log_m -= self.b * (Complex64::new(1.0, 0.0) - lambda).norm().ln();
        }
        self.scale * log_m.exp()
    }

    /// `|d(λ)| |Re λ|^{−k}`, assuming `Re λ < 0`.
    ///
    /// Evaluated as `−a log(|λ| c) + (a − k) log c` so that the two logarithms do not
    /// cancel when `a = k`.
    pub fn modulus_over_decay(&self, lambda: Complex64, k: f64) -> f64 {
        let c = -lambda.re;
        let mut log_m = 0.0;
        if self.a != 0.0 {
            log_m -= self.a * (lambda.norm() * c).ln();
        }
        if self.a != k {
            log_m += (self.a - k) * c.ln();
        }
        if self.b != 0.0 {
            log_m -= self.b * (Complex64::new(1.0, 0.0) - lambda).norm().ln();
        }
        self.scale * log_m.exp()
    }

    pub fn moduli(&self, spec: &Spectrum) -> Vec<f64> {
        spec.modes().iter().map(|&z| self.modulus(z)).collect()
    }
}

/// Evaluates `(−λ)^{−a}(1−λ)^{−b}` (times the symbol scale) for `Re λ < 0`.
pub fn eval_weight(sym: &OperatorSymbol, lambda: Complex64) -> Result<Complex64> {
    sym.eval(lambda)
}

impl FromStr for OperatorSymbol {
    type Err = Error;

    /// Parses `a=0.5`, `a=1,b=0.5`, `a=-1,b=1.5,scale=2`; `id` for the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut sym = OperatorSymbol::identity();
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "identity" {
            return Ok(sym);
        }
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("symbol component `{part}` is not key=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("symbol component `{part}` has a non-numeric value")))?;
            match key.trim() {
                "a" => sym.a = value,
                "b" => sym.b = value,
                "scale" | "s" => sym.scale = value,
                other => return Err(Error::Parse(format!("unknown symbol key `{other}`"))),
            }
        }
        if !(sym.scale > 0.0) {
            return Err(invalid("symbol scale must be positive"));
        }
        Ok(sym)
    }
}

impl fmt::Display for OperatorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={},b={}", self.a, self.b)?;
        if self.scale != 1.0 {
            write!(f, ",scale={}", self.scale)?;
        }
        Ok(())
    }
}

/// Discrete measure `μ_n` on the index set together with the exponent `q`
/// of the underlying sequence space `ℓ^q(μ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedIndexSpace {
    weights: Vec<f64>,
    q: f64,
}

impl WeightedIndexSpace {
    pub fn new(weights: Vec<f64>, q: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(invalid(format!("exponent q = {q} must lie in [1, ∞)")));
        }
        if let Some(i) = weights.iter().position(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(invalid(format!("weight {} must be positive", i + 1)));
        }
        Ok(WeightedIndexSpace { weights, q })
    }

    /// Counting measure on `n` indices.
    pub fn counting(n: usize, q: f64) -> Result<Self> {
        WeightedIndexSpace::new(vec![1.0; n], q)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `(Σ μ_n |x_n|^q)^{1/q}`
    pub fn norm(&self, x: &[Complex64]) -> f64 {
        self.norm_pow_q(x).powf(1.0 / self.q)
    }

    pub fn norm_pow_q(&self, x: &[Complex64]) -> f64 {
        pairwise_sum(&x.iter().zip(&self.weights).map(|(v, w)| w * v.norm().powf(self.q)).collect::<Vec<_>>())
    }
}

/// Supremum of a per-mode sequence at two truncation levels.
///
/// Mode indices are 1-based. Ties resolve to the smallest index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSup {
    pub value: f64,
    pub argmax: usize,
    pub coarse_value: f64,
    pub coarse_argmax: usize,
    pub n_max: usize,
    pub n_coarse: usize,
}

impl ModeSup {
    /// `values[k]` belongs to mode `k + 1`. Panics on an empty slice.
    pub fn from_values(values: &[f64]) -> ModeSup {
        assert!(!values.is_empty(), "supremum over no modes");
        let n_max = values.len();
        let n_coarse = (n_max / 10).max(1);
        let (coarse_argmax, coarse_value) = argmax(&values[..n_coarse]);
        let (tail_arg, tail_value) = if n_coarse < n_max {
            let (i, v) = argmax(&values[n_coarse..]);
            (i + n_coarse, v)
        } else {
            (coarse_argmax, coarse_value)
        };
        let (argmax, value) =
            if tail_value > coarse_value { (tail_arg, tail_value) } else { (coarse_argmax, coarse_value) };
        ModeSup { value, argmax: argmax + 1, coarse_value, coarse_argmax: coarse_argmax + 1, n_max, n_coarse }
    }

    /// `value / coarse_value`
    pub fn growth(&self) -> f64 {
        self.value / self.coarse_value
    }

    pub fn is_divergent(&self) -> bool {
        is_growing(self.value, self.coarse_value, DIVERGENCE_THRESHOLD)
    }

    pub fn scaled(mut self, factor: f64) -> ModeSup {
        self.value *= factor;
        self.coarse_value *= factor;
        self
    }
}

pub(crate) fn is_growing(value: f64, coarse: f64, threshold: f64) -> bool {
    if value.is_infinite() && coarse.is_finite() {
        return true;
    }
    value > coarse * (1.0 + threshold)
}

fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 || (best.1.is_nan() && !v.is_nan()) {
            best = (i, v);
        }
    }
    best
}

/// Pairwise summation; order-fixed so repeated runs agree bit for bit.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 16 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// On-disk spectrum document.
///
/// ```json
/// { "modes": [[-1.0, 1.0], [-0.5, 2.0]], "weights": [1, 1], "q": 2,
///   "family": "example33", "params": [], "columns": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] }
/// ```
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDocument {
    pub modes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invertible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<[f64; 2]>>>,
}

impl SpectrumDocument {
    pub fn from_spectrum(spec: &Spectrum) -> Self {
        SpectrumDocument {
            modes: spec.modes().iter().map(|z| [z.re, z.im]).collect(),
            family: spec.family().map(|t| t.name.clone()),
            params: spec.family().map(|t| t.params.clone()),
            invertible: spec.is_invertible().then_some(true),
            ..Default::default()
        }
    }
}

/// A validated document: the spectrum plus optional measure and column data.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedSpectrum {
    pub spectrum: Spectrum,
    pub space: Option<WeightedIndexSpace>,
    /// Dense columns `c_n = C e_n`, one per mode.
    pub columns: Option<Vec<Vec<Complex64>>>,
}

pub fn load_spectrum(doc: &SpectrumDocument) -> Result<LoadedSpectrum> {
    let modes = doc.modes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    let mut spectrum = Spectrum::new(modes)?;
    if let Some(name) = &doc.family {
        spectrum = spectrum.with_tag(FamilyTag { name: name.clone(), params: doc.params.clone().unwrap_or_default() });
    }
    if let Some(inv) = doc.invertible {
        spectrum = spectrum.with_invertible(inv)?;
    }
    let space = match (&doc.weights, doc.q) {
        (None, None) => None,
        (weights, q) => {
            let weights = weights.clone().unwrap_or_else(|| vec![1.0; spectrum.n_max()]);
            if weights.len() != spectrum.n_max() {
                return Err(Error::Parse(format!(
                    "{} weights given for {} modes",
                    weights.len(),
                    spectrum.n_max()
                )));
            }
            Some(WeightedIndexSpace::new(weights, q.unwrap_or(2.0))?)
        }
    };
    let columns = match &doc.columns {
        None => None,
        Some(cols) => {
            if cols.len() != spectrum.n_max() {
                return Err(Error::Parse(format!("{} columns given for {} modes", cols.len(), spectrum.n_max())));
            }
            Some(cols.iter().map(|c| c.iter().map(|&[re, im]| Complex64::new(re, im)).collect()).collect())
        }
    };
    Ok(LoadedSpectrum { spectrum, space, columns })
}

pub fn parse_spectrum_document(text: &str) -> Result<LoadedSpectrum> {
    let doc: SpectrumDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    load_spectrum(&doc)
}

pub fn read_spectrum_file(path: impl AsRef<Path>) -> Result<LoadedSpectrum> {
    parse_spectrum_document(&std::fs::read_to_string(path)?)
}
