use decaylab::admissibility::{admissibility_oracle, energy_closed_form, finite_time_constant, l2_admissibility_constant};
use decaylab::calculus::{resolvent_profile, semigroup_norm, weiss_constant, weiss_exact};
use decaylab::carleson::{carleson_constant, CarlesonSampler, ColumnFamily};
use decaylab::certificates::{prop57_constants, theorem54_certificate, CertificateInputs};
use decaylab::harness::numerics::hurwitz_zeta;
use decaylab::harness::{logspace, unit_vectors};
use decaylab::rates::{fit_rate, verify_lemma43, RateForm};
use decaylab::spectra::{parse_spectrum_document, SpectrumDocument};
use decaylab::{Complex64, ModeSup, OperatorSymbol, Spectrum};
use proptest::prelude::*;

fn powerlaw() -> impl Strategy<Value = Spectrum> {
    (0.2f64..2.0, 0.0f64..1.5, 5usize..120)
        .prop_map(|(a, b, n)| Spectrum::builtin_family("powerlaw", &[a, b], n).unwrap())
}

fn symbol() -> impl Strategy<Value = OperatorSymbol> {
    (-0.5f64..1.5, 0.0f64..1.0, 0.1f64..3.0).prop_map(|(a, b, s)| OperatorSymbol::new(a, b).with_scale(s))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn semigroup_is_contractive_and_monotone(spec in powerlaw(), t in 0.0f64..50.0, dt in 0.0f64..50.0) {
        let id = OperatorSymbol::identity();
        let a = semigroup_norm(&spec, &id, t).unwrap().value;
        let b = semigroup_norm(&spec, &id, t + dt).unwrap().value;
        prop_assert!(a <= 1.0);
        prop_assert!(b <= a);
    }

    #[test]
    fn mode_sup_dominates_coarse(values in prop::collection::vec(0.0f64..10.0, 1..200)) {
        let s = ModeSup::from_values(&values);
        prop_assert!(s.value >= s.coarse_value);
        prop_assert_eq!(s.value, values.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        prop_assert!(values[s.argmax - 1] == s.value);
    }

    #[test]
    fn weiss_grid_never_exceeds_exact(spec in powerlaw(), sym in symbol(), p in 1.2f64..4.0) {
        let w = weiss_constant(&spec, &sym, p).unwrap();
        prop_assert!(w.k_grid <= w.k_exact + 1e-9 * w.k_exact.max(1.0));
        prop_assert!(w.consistent);
    }

    #[test]
    fn resolvent_profile_decreases(spec in powerlaw(), sym in symbol()) {
        let prof = resolvent_profile(&spec, &sym, &logspace(1e-3, 1e2, 30)).unwrap();
        prop_assert!(prof.windows(2).all(|w| w[1].1 <= w[0].1));
    }

    #[test]
    fn finite_time_constant_is_monotone(spec in powerlaw(), sym in symbol(), t1 in 0.01f64..100.0, p in 1.0f64..3.0) {
        let a = finite_time_constant(&spec, &sym, p, t1).unwrap().m_exact;
        let b = finite_time_constant(&spec, &sym, p, 2.0 * t1).unwrap().m_exact;
        let inf = finite_time_constant(&spec, &sym, p, f64::INFINITY).unwrap().m_exact;
        prop_assert!(a <= b && b <= inf * (1.0 + 1e-14));
    }

    #[test]
    fn l2_constant_is_twice_weiss_squared(spec in powerlaw(), sym in symbol()) {
        let m = l2_admissibility_constant(&spec, &sym).unwrap().m_exact;
        let k = weiss_exact(&spec, &sym, 2.0).unwrap().value;
        prop_assert!((m - 2.0 * k * k).abs() <= 1e-12 * m);
    }

    #[test]
    fn hurwitz_shift_recursion(s in 1.1f64..6.0, a in 0.05f64..20.0) {
        let lhs = hurwitz_zeta(s, a).unwrap();
        let rhs = a.powf(-s) + hurwitz_zeta(s, a + 1.0).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
    }

    #[test]
    fn spectrum_document_round_trip(spec in powerlaw()) {
        let doc = SpectrumDocument::from_spectrum(&spec);
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_spectrum_document(&text).unwrap();
        prop_assert_eq!(back.spectrum.modes(), spec.modes());
    }

    #[test]
    fn poly_fit_recovers_synthetic_law(inv_alpha in 0.1f64..3.0, scale in 0.01f64..100.0) {
        let curve: Vec<(f64, f64)> = logspace(1.0, 1e5, 200).into_iter().map(|t| (t, scale * t.powf(-inv_alpha))).collect();
        let m = fit_rate(&curve, RateForm::Poly).unwrap();
        prop_assert!((m.alt_inv_alpha.unwrap() - inv_alpha).abs() < 1e-9);
    }

    #[test]
    fn polylog_fit_recovers_synthetic_law(beta in 0.0f64..1.0, gamma in 0.0f64..3.0) {
        let curve: Vec<(f64, f64)> = logspace(10.0, 1e6, 300).into_iter().map(|t| (t, t.powf(-beta) * t.ln().powf(-gamma))).collect();
        let m = fit_rate(&curve, RateForm::Polylog).unwrap();
        prop_assert!((m.beta - beta).abs() < 1e-6 && (m.gamma - gamma).abs() < 1e-6);
    }

    #[test]
    fn certificate_grows_with_inputs(beta in 0.55f64..1.2, m0 in 0.1f64..5.0, c in 0.1f64..5.0, k in 0.1f64..5.0, bump in 1.01f64..2.0) {
        let base = CertificateInputs { alpha: 1.0, beta, m0, t0: (2.0 * beta).exp() * 2.0, c, k };
        let m = |i: &CertificateInputs, ft: f64| theorem54_certificate(i, move |_| Ok(ft)).unwrap().m_adm;
        let m_base = m(&base, 1.0);
        let bigger_m0 = m(&CertificateInputs { m0: m0 * bump, ..base }, 1.0);
        let bigger_c = m(&CertificateInputs { c: c * bump, ..base }, 1.0);
        let bigger_k = m(&CertificateInputs { k: k * bump, ..base }, 1.0);
        prop_assert!(bigger_m0 > m_base && bigger_c > m_base && bigger_k > m_base);
        prop_assert!(m(&base, bump) > m_base);
    }

    #[test]
    fn certificate_mu_bound_holds(beta in 0.55f64..1.5, n in 1usize..6, s in 0.001f64..0.999) {
        let i = CertificateInputs { alpha: 1.0, beta, m0: 1.0, t0: (2.0 * beta).exp() * 1.1, c: 1.0, k: 1.0 };
        let cert = theorem54_certificate(&i, |_| Ok(1.0)).unwrap();
        let (a, b) = (cert.tau_n(n), cert.tau_n(n + 1));
        let t = a + s * (b - a);
        let mu = cert.mu_n(n);
        prop_assert!(mu * t * (-mu * t).exp() > 0.5 / std::f64::consts::E);
        prop_assert!(cert.mu[cert.m - 1] < 0.5 / i.t0);
    }

    #[test]
    fn strong_weiss_exponent_identity(alpha in 0.01f64..5.0, beta in 0.01f64..5.0) {
        let s = prop57_constants(1.0, 1.0, alpha, beta, 1.0).unwrap();
        prop_assert!(s.gamma > 0.0 && s.gamma < alpha);
        prop_assert!(s.exponent_residual.abs() < 1e-12);
    }

    #[test]
    fn carleson_scales_quadratically(spec in powerlaw(), s in 0.1f64..10.0) {
        let cols = ColumnFamily::diagonal_power(&spec, 0.5).unwrap();
        let w: Vec<f64> = spec.modes().iter().map(|z| s * z.norm().powf(-0.5)).collect();
        let scaled = ColumnFamily::diagonal(&w).unwrap();
        let sampler = CarlesonSampler { j_max: 6 };
        let a = carleson_constant(&spec, &cols, 0.25, &sampler).unwrap().m_hat;
        let b = carleson_constant(&spec, &scaled, 0.25, &sampler).unwrap().m_hat;
        prop_assert!((b - s * s * a).abs() <= 1e-10 * b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn oracle_matches_closed_form(seed in 0u64..1000, n in 5usize..40, a in 0.0f64..1.0) {
        let spec = Spectrum::builtin_family("example33", &[], n).unwrap();
        let sym = OperatorSymbol::power(a);
        let x: Vec<Complex64> = unit_vectors(n, 1, seed).remove(0);
        let o = admissibility_oracle(&spec, &sym, 2.0, &x, 10.0 * n as f64, None).unwrap();
        let c = energy_closed_form(&spec, &sym, 2.0, &x, f64::INFINITY, None).unwrap();
        prop_assert!((o.value - c).abs() <= 1e-8 * c);
    }

    #[test]
    fn integral_bound_holds(beta in 0.0f64..0.9, gamma in 0.0f64..2.5, scale in 1.1f64..4.0, frac in 0.001f64..0.999) {
        let t0 = (gamma / (1.0 - beta)).exp() * scale;
        let check = verify_lemma43(beta, gamma, t0, &[frac / t0]).unwrap();
        prop_assert!(check.worst_ratio <= 1.0, "ratio {}", check.worst_ratio);
    }
}
