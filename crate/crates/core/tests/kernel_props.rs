mod common;

use common::{decay_flat_zero_temperature, phase_flat_closed, rel_err, simpson};
use deco_core::kernels::{
    decay_kernel, gamma0, gamma_saturation, ising_coupling, lambda_weight, phase_kernel, phi, KernelWeight,
};
use deco_core::{ModelParams, QuadratureConfig};
use proptest::prelude::*;

fn q() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn params(beta: f64, s: f64) -> ModelParams {
    ModelParams::new(1.0, beta, 1.0, s).unwrap()
}

fn weight(w: KernelWeight, om: f64, s: f64) -> f64 {
    let sinc = if om * s == 0.0 { 1.0 } else { (om * s).sin() / (om * s) };
    match w {
        KernelWeight::Flat => 1.0,
        KernelWeight::Plus => 1.0 + sinc,
        KernelWeight::Minus => 1.0 - sinc,
    }
}

fn coth_term(om: f64, beta: f64) -> f64 {
    if om == 0.0 {
        2.0 / beta
    } else {
        om / (0.5 * beta * om).tanh()
    }
}

/// Direct Simpson evaluation of D[w](t), α = 1.
fn decay_reference(w: KernelWeight, t: f64, beta: f64, s: f64) -> f64 {
    simpson(
        &|om: f64| coth_term(om, beta) * (-om * om).exp() * weight(w, om, s) * (0.5 * om * t).sin().powi(2),
        0.0,
        10.0,
        1e-13,
    )
}

/// Direct Simpson evaluation of P[w](t), α = 1.
fn phase_reference(w: KernelWeight, t: f64, s: f64) -> f64 {
    0.5 * simpson(
        &|om: f64| om * (-om * om).exp() * weight(w, om, s) * (om * t).sin(),
        0.0,
        10.0,
        1e-14,
    )
}

fn arb_weight() -> impl Strategy<Value = KernelWeight> {
    prop::sample::select(KernelWeight::ALL.to_vec())
}

#[test]
fn zero_time_values_vanish() {
    let p = params(1.0, 1.0);
    for w in KernelWeight::ALL {
        assert_eq!(decay_kernel(w, 0.0, &p, &q()).unwrap(), 0.0);
        assert_eq!(phase_kernel(w, 0.0, &p, &q()).unwrap(), 0.0);
    }
    assert_eq!(gamma0(0.0, &p, &q()).unwrap(), 0.0);
}

#[test]
fn cold_flat_decay_matches_dawson_form() {
    let p = params(1e6, 1.0);
    for t in [0.3, 1.0, 2.5, 6.0] {
        let got = decay_kernel(KernelWeight::Flat, t, &p, &q()).unwrap();
        let want = decay_flat_zero_temperature(1.0, t);
        assert!(rel_err(got, want) < 1e-8, "t={t}: {got} vs {want}");
    }
}

#[test]
fn flat_saturation_at_zero_temperature() {
    let p = params(1e6, 1.0);
    let got = gamma_saturation(KernelWeight::Flat, &p, &q()).unwrap();
    assert!((got - 0.25).abs() < 1e-9);
    let got = gamma_saturation(KernelWeight::Plus, &p.with_s(0.0), &q()).unwrap();
    assert!((got - 0.5).abs() < 1e-9);
}

#[test]
fn saturation_ordered_by_separation() {
    let p = params(10.0, 0.5);
    let near = gamma_saturation(KernelWeight::Plus, &p, &q()).unwrap();
    let far = gamma_saturation(KernelWeight::Plus, &p.with_s(5.0), &q()).unwrap();
    assert!(far < near);
}

#[test]
fn flat_phase_closed_form_on_a_grid() {
    let p = params(2.0, 1.0);
    for k in 0..=60 {
        let t = 0.25 * k as f64;
        let got = phase_kernel(KernelWeight::Flat, t, &p, &q()).unwrap();
        let want = phase_flat_closed(1.0, t);
        assert!((got - want).abs() <= 1e-9 * want.abs() + 1e-300, "t={t}: {got} vs {want}");
    }
}

#[test]
fn ising_rate_matches_direct_integral() {
    for s in [0.0, 0.4, 1.0, 3.0] {
        let p = params(1.0, s);
        let want = 0.5
            * simpson(
                &|om: f64| om * om * (-om * om).exp() * weight(KernelWeight::Plus, om, s) - om * om * (-om * om).exp(),
                0.0,
                10.0,
                1e-14,
            );
        let got = ising_coupling(&p, &q()).unwrap();
        assert!((got - want).abs() < 1e-11, "s={s}: {got} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decay_matches_direct_integral(w in arb_weight(), t in 0.05f64..8.0, beta in 0.1f64..50.0, s in 0.0f64..6.0) {
        let got = decay_kernel(w, t, &params(beta, s), &q()).unwrap();
        let want = decay_reference(w, t, beta, s);
        prop_assert!((got - want).abs() <= 1e-8 * want.abs() + 1e-13, "{got} vs {want}");
    }

    #[test]
    fn phase_matches_direct_integral(w in arb_weight(), t in 0.05f64..8.0, s in 0.0f64..6.0) {
        let got = phase_kernel(w, t, &params(1.0, s), &q()).unwrap();
        let want = phase_reference(w, t, s);
        prop_assert!((got - want).abs() < 1e-11, "{got} vs {want}");
    }

    #[test]
    fn kernels_are_nonnegative(w in arb_weight(), t in 0.0f64..20.0, beta in 0.05f64..100.0, s in 0.0f64..10.0) {
        let p = params(beta, s);
        prop_assert!(decay_kernel(w, t, &p, &q()).unwrap() >= 0.0);
        prop_assert!(gamma0(t, &p, &q()).unwrap() >= 0.0);
        prop_assert!(lambda_weight(w, &p, &q()).unwrap() >= 0.0);
    }

    #[test]
    fn weights_add_linearly(t in 0.0f64..10.0, beta in 0.05f64..100.0, s in 0.0f64..10.0) {
        let p = params(beta, s);
        let tol = 2.0 * q().rel_tol;
        let d = |w| decay_kernel(w, t, &p, &q()).unwrap();
        let (dp, dm, df) = (d(KernelWeight::Plus), d(KernelWeight::Minus), d(KernelWeight::Flat));
        prop_assert!((dp + dm - 2.0 * df).abs() <= tol * (dp.abs() + dm.abs()) + 1e-15);
        let ph = |w| phase_kernel(w, t, &p, &q()).unwrap();
        let (pp, pm, pf) = (ph(KernelWeight::Plus), ph(KernelWeight::Minus), ph(KernelWeight::Flat));
        prop_assert!((pp + pm - 2.0 * pf).abs() <= tol * (pp.abs() + pm.abs()) + 1e-15);
        let l = |w| lambda_weight(w, &p, &q()).unwrap();
        let (lp, lm, lf) = (l(KernelWeight::Plus), l(KernelWeight::Minus), l(KernelWeight::Flat));
        prop_assert!((lp + lm - 2.0 * lf).abs() <= tol * (lp.abs() + lm.abs()) + 1e-15);
    }

    #[test]
    fn decay_decreases_with_inverse_temperature(w in arb_weight(), t in 0.1f64..10.0, s in 0.0f64..10.0) {
        let betas = [0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0];
        let values: Vec<f64> = betas
            .iter()
            .map(|&b| decay_kernel(w, t, &params(b, s), &q()).unwrap())
            .collect();
        for pair in values.windows(2) {
            prop_assert!(pair[0] >= pair[1] * (1.0 - 1e-12), "{values:?}");
        }
    }

    #[test]
    fn phase_is_temperature_independent(w in arb_weight(), t in 0.0f64..10.0, s in 0.0f64..10.0) {
        let hot = phase_kernel(w, t, &params(0.1, s), &q()).unwrap();
        let cold = phase_kernel(w, t, &params(100.0, s), &q()).unwrap();
        prop_assert!((hot - cold).abs() < 1e-12);
    }

    #[test]
    fn finer_panels_agree(w in arb_weight(), t in 0.1f64..10.0, beta in 0.1f64..20.0, s in 0.0f64..10.0) {
        let p = params(beta, s);
        let coarse = q();
        let fine = QuadratureConfig { min_nodes_per_period: 2 * coarse.min_nodes_per_period, ..coarse };
        let d0 = decay_kernel(w, t, &p, &coarse).unwrap();
        let d1 = decay_kernel(w, t, &p, &fine).unwrap();
        prop_assert!((d0 - d1).abs() <= coarse.rel_tol * d1.abs() + 1e-15, "{d0} vs {d1}");
        let p0 = phase_kernel(w, t, &p, &coarse).unwrap();
        let p1 = phase_kernel(w, t, &p, &fine).unwrap();
        prop_assert!((p0 - p1).abs() <= coarse.rel_tol * p1.abs() + 1e-15, "{p0} vs {p1}");
    }

    #[test]
    fn flat_phase_is_closed_form(t in 0.0f64..20.0, alpha in 0.0f64..5.0) {
        let p = ModelParams::new(alpha, 1.0, 1.0, 1.0).unwrap();
        let got = phase_kernel(KernelWeight::Flat, t, &p, &q()).unwrap();
        let bound = phase_flat_closed(alpha, t);
        prop_assert!(got.abs() <= bound + q().rel_tol);
        prop_assert!((got - bound).abs() <= 1e-9 * bound + 1e-300);
    }

    #[test]
    fn phi_doubles_plus_phase(t in 0.0f64..10.0, s in 0.0f64..10.0) {
        let p = params(1.0, s);
        let a = phi(t, &p, &q()).unwrap();
        let b = phase_kernel(KernelWeight::Plus, t, &p, &q()).unwrap();
        prop_assert_eq!(a, 2.0 * b);
    }
}
