//! Command-line front end. Each command builds one [`RunReport`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::admissibility::{finite_time_constant, l2_admissibility_constant, plancherel_check_with};
use crate::calculus::{decay_curve, resolvent_profile, semigroup_norm, weighted_decay_sup, weiss_constant, weiss_exact};
use crate::carleson::{carleson_constant, CarlesonSampler, ColumnFamily};
use crate::certificates::{
    measure_log_decay_constant, prop56_constant, prop56_envelope, prop57_constants, theorem54_certificate,
    CertificateInputs,
};
use crate::error::{invalid, Error, Result};
use crate::harness::quadrature::QuadratureSpec;
use crate::harness::random::unit_vectors;
use crate::harness::report::{Method, RunReport, TruncationDiagnostic};
use crate::harness::search::logspace;
use crate::rates::{check_thm44, check_thm44_table, fit_rate, lemma43_constant, verify_lemma43, ModeTable, RateForm, Thm44Side};
use crate::spectra::{parse_spectrum_document, Family, LoadedSpectrum, OperatorSymbol, Spectrum};

const DEFAULT_NMAX: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "decaylab", version, about = "Decay, resolvent and admissibility constants for diagonal semigroups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Number of modes (family spectra only).
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Relative quadrature tolerance for oracle integrals.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub out: OutFormat,
    /// Seed for random test vectors.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Built-in family: example33, logdecay, single, powerlaw.
    #[arg(long, global = true, default_value = "example33")]
    pub family: String,
    /// Comma-separated family parameters.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Vec<f64>,
    /// Spectrum document (JSON); overrides --family.
    #[arg(long, global = true)]
    pub spectrum: Option<PathBuf>,
    /// Operator symbol as `a=..,b=..,scale=..`; identity when empty.
    #[arg(long, global = true, default_value = "", allow_hyphen_values = true)]
    pub symbol: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Check or print a spectrum.
    Spectrum {
        #[command(subcommand)]
        action: SpectrumAction,
    },
    /// Decay curve of ‖T(t)D‖ with an optional rate fit.
    Decay(DecayArgs),
    /// sup over η of ‖D R(ξ + iη, A)‖ as a function of ξ.
    ResolventProfile(ProfileArgs),
    /// p-Weiss constant of the symbol.
    Weiss(WeissArgs),
    /// Infinite-time admissibility constant.
    Admissibility(PArgs),
    /// Finite-time admissibility constant on [0, t1].
    FiniteAdmissibility(FiniteArgs),
    /// Time/frequency energy identity on random vectors.
    Plancherel(PlancherelArgs),
    /// Constant of the log-corrected integral bound, checked by quadrature.
    Lemma43(Lemma43Args),
    /// Two-sided log-corrected decay/resolvent consistency.
    Thm44Check(Thm44Args),
    /// Carleson box scan for diagonal columns given by the symbol.
    Carleson(CarlesonArgs),
    /// Admissibility certificate from measured log-decay and Weiss inputs.
    Certificate(CertificateArgs),
    /// Decay constant of C T(t) from a Weiss bound and polynomial decay.
    Prop56(Prop56Args),
    /// Strong Weiss constants from decay bounds.
    Prop57(Prop57Args),
    /// Decay optimality, Weiss and admissibility thresholds for λ_n = −1/n + i n.
    Example33,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumAction {
    Validate,
    Show,
}

#[derive(Debug, Args, Serialize)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 200.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Fit a rate law: poly or polylog.
    #[arg(long)]
    pub fit: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct ProfileArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub ximin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub ximax: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct WeissArgs {
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PArgs {
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct FiniteArgs {
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long)]
    pub t1: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PlancherelArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub ximin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub ximax: f64,
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    #[arg(long, default_value_t = 3)]
    pub vectors: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct Lemma43Args {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Defaults to twice the threshold.
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct Thm44Args {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct CarlesonArgs {
    /// Exponent of |λ_n| in the box sums.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 20)]
    pub jmax: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct CertificateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Defaults to 1.5 e^{2β}.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Override the measured log-decay constant.
    #[arg(long)]
    pub m0: Option<f64>,
    /// Override the measured sup of ‖T(t)(−A)^{−α}‖.
    #[arg(long)]
    pub c: Option<f64>,
    /// Override the measured Weiss constant of C(−A)^α.
    #[arg(long)]
    pub k: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct Prop56Args {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// Split exponent; M₁ and M₂ are measured on the spectrum unless both are given.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long)]
    pub m1: Option<f64>,
    #[arg(long)]
    pub m2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 1e3)]
    pub tmax: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct Prop57Args {
    #[arg(long)]
    pub m1: f64,
    #[arg(long)]
    pub m2: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_moment: f64,
}

/// Parses `a=..,b=..,scale=..` (any subset, any order).
pub fn parse_symbol(s: &str) -> Result<OperatorSymbol> {
    let mut sym = OperatorSymbol::identity();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| invalid(format!("symbol entry `{part}` is not key=value")))?;
        let v: f64 = value.trim().parse().map_err(|_| invalid(format!("symbol value `{value}` is not a number")))?;
        if !v.is_finite() {
            return Err(invalid(format!("symbol value `{value}` must be finite")));
        }
        match key.trim() {
            "a" => sym.a = v,
            "b" => sym.b = v,
            "scale" => sym.scale = v,
            other => return Err(invalid(format!("unknown symbol key `{other}` (expected a, b or scale)"))),
        }
    }
    Ok(sym)
}

struct Context {
    symbol: OperatorSymbol,
    quad: QuadratureSpec,
    inputs: Value,
}

impl Context {
    fn new(cli: &Cli) -> Result<(Self, Option<String>)> {
        if !(cli.global.tol > 0.0) {
            return Err(invalid("--tol must be positive"));
        }
        let symbol = parse_symbol(&cli.global.symbol)?;
        let (text, file_digest) = match &cli.global.spectrum {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                let d = hex::encode(Sha256::digest(text.as_bytes()));
                (Some(text), Some(d))
            }
            None => (None, None),
        };
        let mut global = serde_json::to_value(&cli.global).expect("arguments serialize");
        // the file is identified by its content, not its location
        global["spectrum"] = json!(file_digest);
        global.as_object_mut().expect("object").remove("out");
        let inputs = json!({ "global": global, "command": serde_json::to_value(&cli.command).expect("arguments serialize") });
        let quad = QuadratureSpec::with_tolerances(cli.global.tol, 1e-13);
        Ok((Context { symbol, quad, inputs }, text))
    }
}

fn load(cli: &Cli, text: &Option<String>, default_nmax: usize) -> Result<LoadedSpectrum> {
    if let Some(text) = text {
        if cli.global.nmax.is_some() {
            return Err(invalid("--nmax applies to family spectra only"));
        }
        return parse_spectrum_document(text);
    }
    let n = cli.global.nmax.unwrap_or(default_nmax);
    let spectrum = Spectrum::builtin_family(&cli.global.family, &cli.global.params, n)?;
    Ok(LoadedSpectrum { spectrum, space: None, columns: None })
}

fn spectrum(cli: &Cli, text: &Option<String>) -> Result<Spectrum> {
    let default = if cli.global.family == Family::LogDecay.name() { 40 } else { DEFAULT_NMAX };
    Ok(load(cli, text, default)?.spectrum)
}

fn side_diag(name: &str, side: &Thm44Side, n_max: usize, n_coarse: usize) -> TruncationDiagnostic {
    TruncationDiagnostic {
        quantity: name.to_string(),
        value: side.value,
        coarse_value: side.coarse_value,
        n_max,
        n_coarse,
        argmax_mode: side.argmax_mode,
        growth: side.growth,
        divergent: side.divergent,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Spectrum { action: SpectrumAction::Validate } => "spectrum validate",
        Command::Spectrum { action: SpectrumAction::Show } => "spectrum show",
        Command::Decay(_) => "decay",
        Command::ResolventProfile(_) => "resolvent-profile",
        Command::Weiss(_) => "weiss",
        Command::Admissibility(_) => "admissibility",
        Command::FiniteAdmissibility(_) => "finite-admissibility",
        Command::Plancherel(_) => "plancherel",
        Command::Lemma43(_) => "lemma43",
        Command::Thm44Check(_) => "thm44-check",
        Command::Carleson(_) => "carleson",
        Command::Certificate(_) => "certificate",
        Command::Prop56(_) => "prop56",
        Command::Prop57(_) => "prop57",
        Command::Example33 => "example33",
    }
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let (ctx, text) = Context::new(cli)?;
    let mut r = RunReport::new(command_name(&cli.command), ctx.inputs.clone());
    let sym = ctx.symbol;
    match &cli.command {
        Command::Spectrum { action } => {
            let loaded = load(cli, &text, DEFAULT_NMAX)?;
            let s = &loaded.spectrum;
            r.fact("valid", true).fact("family", s.family_label()).fact("invertible", s.is_invertible());
            r.push("n_max", s.n_max() as f64, Method::ClosedForm)
                .push("min_decay", s.min_decay(), Method::ClosedForm)
                .push("max_abs_imag", s.max_abs_imag(), Method::ClosedForm);
            r.fact("has_weights", loaded.space.is_some()).fact("has_columns", loaded.columns.is_some());
            if matches!(action, SpectrumAction::Show) {
                let rows = s.modes().iter().enumerate().map(|(i, z)| vec![(i + 1) as f64, z.re, z.im]).collect();
                r.table("modes", &["n", "re", "im"], rows, Method::ClosedForm);
            }
        }
        Command::Decay(a) => {
            let s = spectrum(cli, &text)?;
            if !(a.tmin >= 0.0 && a.tmax > a.tmin) || a.points < 2 {
                return Err(invalid("decay grid needs 0 ≤ tmin < tmax and at least 2 points"));
            }
            let ts = if a.tmin > 0.0 { logspace(a.tmin, a.tmax, a.points) } else { crate::harness::search::linspace(0.0, a.tmax, a.points) };
            let curve = decay_curve(&s, &sym, &ts)?;
            let (t_star, v_star) = curve.iter().map(|&(t, v)| (t, t * v)).fold((0.0, f64::NEG_INFINITY), |b, p| if p.1 > b.1 { p } else { b });
            r.push("sup_t_t_norm", v_star, Method::ClosedForm).push("sup_t_t_norm_at", t_star, Method::ClosedForm);
            r.table("decay", &["t", "norm"], curve.iter().map(|&(t, v)| vec![t, v]).collect(), Method::ClosedForm);
            if let Some(form) = &a.fit {
                let form: RateForm = form.parse()?;
                let m = fit_rate(&curve, form)?;
                r.push("beta", m.beta, Method::Oracle).push("gamma", m.gamma, Method::Oracle);
                if let Some(inv) = m.alt_inv_alpha {
                    r.push("inv_alpha", inv, Method::Oracle);
                }
                r.push("fit_residual", m.residual, Method::Oracle);
                r.fact("fit_window", json!(m.fit_window)).fact("fit_points", m.points);
            }
        }
        Command::ResolventProfile(a) => {
            let s = spectrum(cli, &text)?;
            if !(a.ximin > 0.0 && a.ximax > a.ximin) || a.points < 2 {
                return Err(invalid("profile grid needs 0 < ximin < ximax and at least 2 points"));
            }
            let prof = resolvent_profile(&s, &sym, &logspace(a.ximin, a.ximax, a.points))?;
            r.table("resolvent_profile", &["xi", "sup_eta_norm"], prof.iter().map(|&(x, v)| vec![x, v]).collect(), Method::ClosedForm);
        }
        Command::Weiss(a) => {
            let s = spectrum(cli, &text)?;
            let w = weiss_constant(&s, &sym, a.p)?;
            r.push("K_exact", w.k_exact, Method::ClosedForm)
                .push("K_exact_coarse", w.k_exact_coarse, Method::ClosedForm)
                .push("K_grid", w.k_grid, Method::Oracle);
            r.fact("divergent", w.divergent)
                .fact("consistent", w.consistent)
                .fact("per_mode_attained", w.per_mode_attained)
                .fact("argmax_mode", w.argmax_mode)
                .fact("grid_argmax", json!(w.grid_argmax));
            r.truncation("K_exact", &w.exact_sup());
            if !w.per_mode_attained {
                r.warn("for p = 1 the per-mode supremum is approached only as Re λ → ∞");
            }
        }
        Command::Admissibility(a) => {
            let s = spectrum(cli, &text)?;
            let rep = if a.p == 2.0 { l2_admissibility_constant(&s, &sym)? } else { finite_time_constant(&s, &sym, a.p, f64::INFINITY)? };
            r.push("M_exact", rep.m_exact, Method::ClosedForm).push("M_exact_coarse", rep.m_exact_coarse, Method::ClosedForm);
            if let Some(o) = rep.m_oracle {
                r.push("M_oracle", o, Method::Oracle);
            }
            r.fact("divergent", rep.divergent).fact("argmax_mode", rep.argmax_mode).fact("best_constant", rep.best_constant);
            if let Some(sup) = &rep.sup {
                r.truncation("M_exact", sup);
            }
        }
        Command::FiniteAdmissibility(a) => {
            let s = spectrum(cli, &text)?;
            let rep = finite_time_constant(&s, &sym, a.p, a.t1)?;
            r.push("M_exact", rep.m_exact, Method::ClosedForm).push("M_exact_coarse", rep.m_exact_coarse, Method::ClosedForm);
            r.fact("argmax_mode", rep.argmax_mode).fact("divergent", rep.divergent);
            if let Some(sup) = &rep.sup {
                r.truncation("M_exact", sup);
            }
        }
        Command::Plancherel(a) => {
            let s = spectrum(cli, &text)?;
            if !(a.ximin > 0.0 && a.ximax >= a.ximin) || a.points == 0 || a.vectors == 0 {
                return Err(invalid("plancherel needs 0 < ximin ≤ ximax, points ≥ 1 and vectors ≥ 1"));
            }
            let xis = if a.points == 1 { vec![a.ximin] } else { logspace(a.ximin, a.ximax, a.points) };
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            for (k, x) in unit_vectors(s.n_max(), a.vectors, cli.global.seed).iter().enumerate() {
                for &xi in &xis {
                    let p = plancherel_check_with(&s, x, xi, &ctx.quad)?;
                    worst = worst.max(p.rel_gap);
                    rows.push(vec![k as f64, xi, p.lhs, p.rhs, p.closed_form, p.rel_gap]);
                }
            }
            r.table("plancherel", &["vector", "xi", "time_side", "frequency_side", "closed_form", "rel_gap"], rows, Method::Oracle);
            r.push("worst_rel_gap", worst, Method::Oracle);
        }
        Command::Lemma43(a) => {
            let threshold = lemma43_constant(a.beta, a.gamma, f64::MAX)?.threshold;
            let t0 = a.t0.unwrap_or(2.0 * threshold);
            let hi = 1.0 / t0;
            let grid = logspace(hi * 1e-6, hi * (1.0 - 1e-9), a.points.max(2));
            let check = verify_lemma43(a.beta, a.gamma, t0, &grid)?;
            let c = &check.constant;
            r.push("M", c.m, Method::ClosedForm)
                .push("M0", c.m0, Method::ClosedForm)
                .push("tail_coefficient", c.tail_coefficient, Method::ClosedForm)
                .push("threshold", c.threshold, Method::ClosedForm)
                .push("t0", t0, Method::ClosedForm)
                .push("worst_ratio", check.worst_ratio, Method::Oracle)
                .push("worst_xi", check.worst_xi, Method::Oracle);
            r.fact("part", json!(c.part));
            if let Some(w) = check.worst_ratio_product_form {
                r.push("worst_ratio_product_form", w, Method::Oracle);
                r.warn("the product form (1/(1−β))(1−r) of M0 does not follow from I ≤ A + rI; the solved form 1/((1−β)(1−r)) is used");
            }
            let rows = check.points.iter().map(|p| vec![p.xi, p.integral, p.integral_error, p.bound, p.ratio]).collect();
            r.table("lemma43", &["xi", "integral", "integral_error", "bound", "ratio"], rows, Method::Oracle);
        }
        Command::Thm44Check(a) => {
            let logdecay_family = text.is_none() && cli.global.family == Family::LogDecay.name();
            let rep = if logdecay_family {
                let table = ModeTable::logdecay(cli.global.nmax.unwrap_or(10_000), &sym)?;
                check_thm44_table(&table, a.beta, a.gamma)?
            } else {
                check_thm44(&spectrum(cli, &text)?, &sym, a.beta, a.gamma)?
            };
            r.push("decay_sup", rep.decay.value, Method::ClosedForm)
                .push("resolvent_sup", rep.resolvent.value, Method::ClosedForm);
            r.fact("consistent", rep.consistent)
                .fact("decay_divergent", rep.decay.divergent)
                .fact("resolvent_divergent", rep.resolvent.divergent);
            r.truncation.push(side_diag("decay_sup", &rep.decay, rep.n_max, rep.n_coarse));
            r.truncation.push(side_diag("resolvent_sup", &rep.resolvent, rep.n_max, rep.n_coarse));
            if !rep.consistent {
                r.warn("decay and resolvent sides disagree on finiteness");
            }
        }
        Command::Carleson(a) => {
            let loaded = load(cli, &text, DEFAULT_NMAX)?;
            let s = &loaded.spectrum;
            let cols = match &loaded.columns {
                Some(c) => ColumnFamily::from_dense(c.clone())?,
                None => ColumnFamily::diagonal(&sym.moduli(s))?,
            };
            let rep = carleson_constant(s, &cols, a.alpha, &CarlesonSampler { j_max: a.jmax })?;
            r.push("M_hat", rep.m_hat, Method::Oracle).push("M_hat_coarse", rep.m_hat_coarse, Method::Oracle);
            r.fact("divergent", rep.divergent)
                .fact("boxes", rep.boxes)
                .fact("worst_box", json!({"h": rep.worst_box.h, "omega": rep.worst_box.omega}))
                .fact("worst_members", rep.worst_members);
            if rep.divergent {
                r.warn(format!("M_hat grows by a factor {} between n = {} and n = {}", rep.growth(), rep.n_coarse, rep.n_max));
            }
        }
        Command::Certificate(a) => {
            let s = spectrum(cli, &text)?;
            let t0 = a.t0.unwrap_or(1.5 * (2.0 * a.beta).exp());
            if !(a.beta > 0.5) {
                return Err(Error::Hypothesis(format!("β must exceed 1/2 (got β = {})", a.beta)));
            }
            let decay_sym = OperatorSymbol::power(a.alpha);
            let m0 = match a.m0 {
                Some(v) => v,
                None => measure_log_decay_constant(&s, &decay_sym, a.beta, t0)?.value,
            };
            let c = match a.c {
                Some(v) => v,
                None => weighted_decay_sup(&s, &decay_sym, 0.0)?.value,
            };
            let k = match a.k {
                Some(v) => v,
                None => weiss_exact(&s, &sym.compose(OperatorSymbol::power(-a.alpha)), 2.0)?.value,
            };
            let inputs = CertificateInputs { alpha: a.alpha, beta: a.beta, m0, t0, c, k };
            let cert = theorem54_certificate(&inputs, |tau| Ok(finite_time_constant(&s, &sym, 2.0, tau)?.m_exact))?;
            let exact = l2_admissibility_constant(&s, &sym)?;
            for (name, v) in [("M0", m0), ("t0", t0), ("c", c), ("K", k)] {
                r.push(name, v, Method::ClosedForm);
            }
            for (name, v) in [
                ("M1", cert.m1),
                ("M2", cert.m2),
                ("tau1", cert.tau1),
                ("tau2", cert.tau2),
                ("tau_m", cert.tau_m),
                ("series", cert.series),
                ("M3", cert.m3),
                ("M_ft", cert.m_ft),
                ("M_adm", cert.m_adm),
                ("M_exact", exact.m_exact),
            ] {
                r.push(name, v, Method::ClosedForm);
            }
            r.fact("m", cert.m).fact("sound", cert.m_adm >= exact.m_exact);
            let rows = (1..=cert.m).map(|n| vec![n as f64, cert.mu_n(n), cert.tau_n(n)]).collect();
            r.table("constant_chain", &["n", "mu_n", "tau_n"], rows, Method::ClosedForm);
        }
        Command::Prop56(a) => {
            let (m1, m2, measured) = match (a.m1, a.m2) {
                (Some(m1), Some(m2)) => (m1, m2, None),
                _ => {
                    let s = spectrum(cli, &text)?;
                    let m1 = weighted_decay_sup(&s, &sym.compose(OperatorSymbol::power(-a.alpha)), 0.5)?.value;
                    let m2 = weighted_decay_sup(&s, &OperatorSymbol::power(a.alpha), a.beta / 2.0)?.value;
                    (m1, m2, Some(s))
                }
            };
            let m = prop56_constant(m1, m2, a.beta)?;
            r.push("M1", m1, Method::ClosedForm).push("M2", m2, Method::ClosedForm).push("M", m, Method::ClosedForm);
            if let Some(s) = measured {
                if !(a.tmin > 0.0 && a.tmax > a.tmin) || a.points < 2 {
                    return Err(invalid("envelope grid needs 0 < tmin < tmax and at least 2 points"));
                }
                let mut dominates = true;
                let mut rows = Vec::new();
                for t in logspace(a.tmin, a.tmax, a.points) {
                    let env = prop56_envelope(m, a.beta, t);
                    let measured = semigroup_norm(&s, &sym, t)?.value;
                    dominates &= env >= measured;
                    rows.push(vec![t, env, measured]);
                }
                r.table("envelope", &["t", "envelope", "norm"], rows, Method::ClosedForm);
                r.fact("dominates", dominates);
            }
        }
        Command::Prop57(a) => {
            let s = prop57_constants(a.m1, a.m2, a.alpha, a.beta, a.c_moment)?;
            r.push("gamma", s.gamma, Method::ClosedForm)
                .push("M3", s.m3, Method::ClosedForm)
                .push("K_weiss", s.k_weiss, Method::ClosedForm)
                .push("exponent_residual", s.exponent_residual, Method::ClosedForm);
        }
        Command::Example33 => {
            if text.is_some() {
                return Err(invalid("example33 uses its built-in spectrum"));
            }
            let n = cli.global.nmax.unwrap_or(10_000);
            let s = Spectrum::builtin(Family::Example33, &[], n)?;
            let inv = OperatorSymbol::power(1.0);
            let ts = logspace(1.0, 200.0, 400);
            let curve = decay_curve(&s, &inv, &ts)?;
            let sup = curve.iter().map(|&(t, v)| t * v).fold(0.0, f64::max);
            let ints: Vec<f64> = (1..=200).map(|k| k as f64).collect();
            let at_ints = decay_curve(&s, &inv, &ints)?.iter().map(|&(t, v)| t * v).fold(0.0, f64::max);
            r.push("sup_t_t_norm_inverse", sup, Method::ClosedForm).push("max_integer_t_t_norm_inverse", at_ints, Method::ClosedForm);
            for a in [0.4, 0.5, 0.6] {
                let sym_a = OperatorSymbol::power(a);
                let w = weiss_constant(&s, &sym_a, 2.0)?;
                r.push(&format!("K_exact[a={a}]"), w.k_exact, Method::ClosedForm)
                    .push(&format!("K_grid[a={a}]"), w.k_grid, Method::Oracle);
                r.truncation(&format!("K_exact[a={a}]"), &w.exact_sup());
                let adm = l2_admissibility_constant(&s, &sym_a)?;
                r.push(&format!("M_exact[a={a}]"), adm.m_exact, Method::ClosedForm);
                if let Some(o) = adm.m_oracle {
                    r.push(&format!("M_oracle[a={a}]"), o, Method::Oracle);
                }
                if let Some(sup) = &adm.sup {
                    r.truncation(&format!("M_exact[a={a}]"), sup);
                }
                r.fact(&format!("admissible[a={a}]"), !adm.divergent);
            }
        }
    }
    Ok(r)
}

/// Captured result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_record(kind: &str, message: &str) -> String {
    serde_json::to_string(&json!({ "error": { "kind": kind, "message": message } })).expect("JSON") + "\n"
}

/// Parses, runs and renders. Exit code 0 on success, 1 on a computation error,
/// 2 on a usage error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome { code: 0, stdout: e.to_string(), stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: error_record("usage", e.to_string().trim()) },
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = match cli.global.out {
                OutFormat::Json => report.to_json() + "\n",
                OutFormat::Csv => report.to_csv(),
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: error_record(e.kind(), &e.to_string()) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_parsing() {
        assert_eq!(parse_symbol("").unwrap(), OperatorSymbol::identity());
        assert_eq!(parse_symbol("a=0.5").unwrap(), OperatorSymbol::power(0.5));
        assert_eq!(parse_symbol("b=1, a=-0.25,scale=2").unwrap(), OperatorSymbol::new(-0.25, 1.0).with_scale(2.0));
        assert!(parse_symbol("c=1").is_err());
        assert!(parse_symbol("a").is_err());
        assert!(parse_symbol("a=x").is_err());
    }

    #[test]
    fn hypothesis_gate_exit() {
        let o = run(["decaylab", "certificate", "--beta", "0.4"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("β must exceed 1/2"));
        let v: Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "hypothesis");
    }

    #[test]
    fn usage_error_is_json() {
        let o = run(["decaylab", "no-such-command"]);
        assert_eq!(o.code, 2);
        let v: Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }
}
