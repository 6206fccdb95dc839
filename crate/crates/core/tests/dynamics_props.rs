use deco_core::dynamics::{
    dressings, plateau_concurrence, uniform_grid, ContinuumBath, PAIRS,
};
use deco_core::kernels::{decay_kernel, gamma0, KernelWeight};
use deco_core::{
    closed_form_concurrence, closed_form_concurrence_anti, concurrence, correlation_ratio, density_matrix,
    l1_coherence, pure_state_density, series, validate, Amplitudes, DensityMatrix4, EvolutionMode, Execution,
    ModelParams, QuadratureConfig,
};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn q() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn arb_psi() -> impl Strategy<Value = Amplitudes> {
    prop::array::uniform8(-1.0f64..1.0).prop_filter_map("zero vector", |v| {
        Amplitudes::normalized(
            C64::new(v[0], v[1]),
            C64::new(v[2], v[3]),
            C64::new(v[4], v[5]),
            C64::new(v[6], v[7]),
        )
        .ok()
    })
}

fn arb_params() -> impl Strategy<Value = ModelParams> {
    (0.0f64..2.0, 0.05f64..50.0, 0.0f64..2.0, 0.0f64..10.0)
        .prop_map(|(alpha, beta, omega0, s)| ModelParams::new(alpha, beta, omega0, s).unwrap())
}

fn arb_mode() -> impl Strategy<Value = EvolutionMode> {
    prop_oneof![Just(EvolutionMode::CorrelatedThermal), Just(EvolutionMode::UncorrelatedThermal)]
}

fn max_dev(a: &DensityMatrix4, b: &DensityMatrix4) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn bell_starts_maximally_entangled() {
    let p = ModelParams::default();
    let rho = density_matrix(0.0, &Amplitudes::bell(), &p, &q(), EvolutionMode::default()).unwrap();
    assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
    assert!((l1_coherence(&rho).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn unpopulated_family_stays_separable() {
    let p = ModelParams::default().with_beta(0.1);
    let psi = Amplitudes::ghz_family(0.0).unwrap();
    let rows = series(&psi, &p, &q(), EvolutionMode::default(), &uniform_grid(10.0, 21), Execution::Sequential).unwrap();
    assert!(rows.iter().all(|r| r.concurrence == 0.0 && r.coherence == 0.0));
}

#[test]
fn correlated_over_uncorrelated_is_gamma0_factor() {
    let p = ModelParams::default().with_beta(0.1);
    let grid = uniform_grid(8.0, 33);
    let psi = Amplitudes::bell();
    let cor = series(&psi, &p, &q(), EvolutionMode::CorrelatedThermal, &grid, Execution::Sequential).unwrap();
    let unc = series(&psi, &p, &q(), EvolutionMode::UncorrelatedThermal, &grid, Execution::Sequential).unwrap();
    for (a, b) in cor.iter().zip(&unc) {
        let ratio = correlation_ratio(a.t, &p, &q()).unwrap();
        assert!((a.concurrence - ratio * b.concurrence).abs() < 1e-8, "t={}", a.t);
        assert!((ratio - (-a.gamma0).exp()).abs() < 1e-15);
    }
}

#[test]
fn series_saturates_above_zero() {
    for beta in [10.0, 0.1] {
        for s in [0.5, 1.0, 2.0, 5.0] {
            let p = ModelParams::default().with_beta(beta).with_s(s);
            let plateau = plateau_concurrence(&p, &q()).unwrap();
            assert!(plateau > 0.0);
            let rows = series(&Amplitudes::bell(), &p, &q(), EvolutionMode::default(), &[0.0, 40.0, 60.0], Execution::Sequential)
                .unwrap();
            assert!((rows[1].concurrence - plateau).abs() < 1e-8 * plateau.max(1e-300) + 1e-12, "beta={beta} s={s}");
            assert!((rows[2].concurrence - rows[1].concurrence).abs() < 1e-10);
        }
    }
}

#[test]
fn late_correlation_factor_returns_to_one() {
    let p = ModelParams::default().with_beta(0.1);
    assert!((correlation_ratio(30.0, &p, &q()).unwrap() - 1.0).abs() < 1e-6);
    let cold = ModelParams::default().with_beta(20.0);
    for t in [0.5, 1.0, 2.0, 5.0] {
        assert!((correlation_ratio(t, &cold, &q()).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn parallel_and_sequential_series_agree() {
    let p = ModelParams::default().with_beta(0.5);
    let psi = Amplitudes::ghz_family(0.3).unwrap();
    let grid = uniform_grid(6.0, 25);
    let a = series(&psi, &p, &q(), EvolutionMode::default(), &grid, Execution::Sequential).unwrap();
    let b = series(&psi, &p, &q(), EvolutionMode::default(), &grid, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bad_grids_are_rejected() {
    let p = ModelParams::default();
    let psi = Amplitudes::bell();
    for grid in [vec![], vec![-1.0, 0.0], vec![0.0, 2.0, 1.0], vec![0.0, f64::NAN]] {
        assert!(series(&psi, &p, &q(), EvolutionMode::default(), &grid, Execution::Sequential).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn initial_state_is_the_pure_state(psi in arb_psi(), p in arb_params(), mode in arb_mode()) {
        let rho = density_matrix(0.0, &psi, &p, &q(), mode).unwrap();
        prop_assert!(max_dev(&rho, &pure_state_density(&psi)) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn populations_are_conserved_and_state_stays_valid(
        psi in arb_psi(),
        p in arb_params(),
        mode in arb_mode(),
        times in prop::collection::vec(0.0f64..20.0, 1..6),
    ) {
        let bath = ContinuumBath::new(&p, &q()).unwrap();
        let rho0 = pure_state_density(&psi);
        for t in times {
            let rho = bath.density_matrix(t, &psi, mode).unwrap();
            for (d, d0) in rho.diagonal().iter().zip(rho0.diagonal()) {
                prop_assert!((d - d0).abs() < 1e-12);
            }
            let report = validate(&rho);
            prop_assert!(report.is_valid(), "t={t}: {report:?}");
            for (i, j) in PAIRS {
                prop_assert!(rho.entry(i, j).norm() <= rho0.entry(i, j).norm() + 1e-10);
            }
        }
    }

    #[test]
    fn dressings_are_bounded(psi in arb_psi(), p in arb_params(), mode in arb_mode(), t in 0.0f64..20.0) {
        let cf = dressings(t, &psi, &p, &q(), mode).unwrap();
        for f in cf.as_array() {
            prop_assert!(f.norm() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn ghz_family_concurrence_is_closed_form(
        t in 0.0f64..10.0,
        beta in 0.1f64..20.0,
        s in 0.0f64..10.0,
        pv in 0.01f64..0.99,
    ) {
        let p = ModelParams::default().with_beta(beta).with_s(s);
        let psi = Amplitudes::ghz_family(pv).unwrap();
        let rho = density_matrix(t, &psi, &p, &q(), EvolutionMode::CorrelatedThermal).unwrap();
        let c = concurrence(&rho).unwrap();
        let n = l1_coherence(&rho).unwrap();
        let closed = closed_form_concurrence(t, pv, &p, &q()).unwrap();
        prop_assert!((c - closed).abs() < 1e-8, "{c} vs {closed}");
        prop_assert!((c - n).abs() < 1e-10);
    }

    #[test]
    fn anti_family_concurrence_is_closed_form(
        t in 0.0f64..10.0,
        beta in 0.1f64..20.0,
        s in 0.0f64..10.0,
        pv in 0.01f64..0.99,
    ) {
        let p = ModelParams::default().with_beta(beta).with_s(s);
        let psi = Amplitudes::anti_ghz_family(pv).unwrap();
        let rho = density_matrix(t, &psi, &p, &q(), EvolutionMode::CorrelatedThermal).unwrap();
        let c = concurrence(&rho).unwrap();
        let n = l1_coherence(&rho).unwrap();
        let closed = closed_form_concurrence_anti(t, pv, &p, &q()).unwrap();
        prop_assert!((c - closed).abs() < 1e-8, "{c} vs {closed}");
        prop_assert!((c - n).abs() < 1e-10);
    }

    #[test]
    fn cold_preparation_is_uncorrelated(
        psi in arb_psi(),
        beta in 20.0f64..200.0,
        s in 0.0f64..10.0,
        t in 0.0f64..15.0,
    ) {
        let p = ModelParams::default().with_beta(beta).with_s(s);
        let bath = ContinuumBath::new(&p, &q()).unwrap();
        let a = bath.density_matrix(t, &psi, EvolutionMode::CorrelatedThermal).unwrap();
        let b = bath.density_matrix(t, &psi, EvolutionMode::UncorrelatedThermal).unwrap();
        prop_assert!(max_dev(&a, &b) < 1e-8);
        prop_assert!(gamma0(t, &p, &q()).unwrap() < 1e-12);
    }

    #[test]
    fn uncorrelated_bell_decays_as_plus_kernel(t in 0.0f64..10.0, beta in 0.05f64..50.0, s in 0.0f64..10.0) {
        let p = ModelParams::default().with_beta(beta).with_s(s);
        let rho = density_matrix(t, &Amplitudes::bell(), &p, &q(), EvolutionMode::UncorrelatedThermal).unwrap();
        let d = decay_kernel(KernelWeight::Plus, t, &p, &q()).unwrap();
        let want = (-2.0 * d).exp();
        prop_assert!((concurrence(&rho).unwrap() - want).abs() < 1e-10);
    }
}
