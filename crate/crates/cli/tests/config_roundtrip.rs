use deco_cli::config::{Family, OutputFormat, StateSpec};
use deco_cli::RunConfig;
use deco_core::oracle::DiscreteMode;
use deco_core::EvolutionMode;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn arb_state() -> impl Strategy<Value = StateSpec> {
    prop_oneof![
        (0.0f64..=1.0, any::<bool>()).prop_map(|(p, anti)| StateSpec::Family {
            p,
            family: if anti { Family::Anti } else { Family::Ghz },
        }),
        prop::array::uniform8(-1.0f64..1.0).prop_filter_map("zero vector", |v| {
            let z = [0, 2, 4, 6].map(|i| C64::new(v[i], v[i + 1]));
            let norm = z.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| StateSpec::Amplitudes(z.map(|x| x / norm)))
        }),
    ]
}

fn arb_modes() -> impl Strategy<Value = (Vec<DiscreteMode>, Option<usize>)> {
    prop_oneof![
        Just((Vec::new(), None)),
        (prop::collection::vec((0.5f64..2.0, -0.2f64..0.2, -0.2f64..0.2, 0.0f64..6.0, 0.0f64..6.0), 1..3), 2usize..8)
            .prop_map(|(m, n)| {
                let modes = m
                    .into_iter()
                    .map(|(omega, re, im, phase1, phase2)| DiscreteMode {
                        omega,
                        g: C64::new(re, im),
                        phase1,
                        phase2,
                    })
                    .collect();
                (modes, Some(n))
            }),
    ]
}

prop_compose! {
    fn arb_config()(
        alpha in 0.0f64..5.0,
        beta in 1e-3f64..1e3,
        omega0 in 0.0f64..3.0,
        s in prop::collection::vec(0.0f64..20.0, 1..5),
        state in arb_state(),
        uncorrelated in any::<bool>(),
        t_max in 1e-3f64..100.0,
        n_steps in 2usize..5000,
        omega_max in 6.0f64..20.0,
        rel_tol in 1e-14f64..1e-4,
        min_nodes in 2usize..40,
        json in any::<bool>(),
        path in prop::option::of("[a-z][a-z0-9_]{0,8}\\.(csv|json)"),
        seed in any::<u64>(),
        cases in 1usize..100,
        times in prop::collection::vec(0.0f64..10.0, 1..6),
        (modes, n_max) in arb_modes(),
    ) -> RunConfig {
        let mut c = RunConfig {
            alpha,
            beta,
            omega0,
            s,
            state,
            mode: if uncorrelated { EvolutionMode::UncorrelatedThermal } else { EvolutionMode::CorrelatedThermal },
            t_max,
            n_steps,
            output_format: if json { OutputFormat::Json } else { OutputFormat::Csv },
            output_path: path.map(Into::into),
            ..RunConfig::default()
        };
        c.quad.omega_max = omega_max;
        c.quad.rel_tol = rel_tol;
        c.quad.min_nodes_per_period = min_nodes;
        c.oracle.seed = seed;
        c.oracle.cases = cases;
        c.oracle.times = times;
        c.oracle.modes = modes;
        c.oracle.n_max = n_max;
        c
    }
}

proptest! {
    #[test]
    fn serialization_round_trips(cfg in arb_config()) {
        let text = cfg.to_text();
        let parsed = RunConfig::parse(&text);
        prop_assert!(parsed.is_ok(), "{text}\n{:?}", parsed.err());
        let parsed = parsed.unwrap();
        prop_assert_eq!(&parsed, &cfg);
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn reparsing_is_idempotent(
        beta in 0.01f64..100.0,
        s in prop::collection::vec(0.0f64..10.0, 1..4),
        p in 0.0f64..=1.0,
        comment in "[a-z ]{0,20}",
    ) {
        let s_list: Vec<String> = s.iter().map(|x| format!("{x}")).collect();
        let text = format!("# {comment}\n\n  beta=  {beta}\ns = {}\n p = {p}\n", s_list.join(" ,"));
        let once = RunConfig::parse(&text).unwrap();
        let twice = RunConfig::parse(&once.to_text()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.to_text(), twice.to_text());
        prop_assert_eq!(once.beta, beta);
    }
}

#[test]
fn overrides_switch_state_form() {
    let mut c = RunConfig::parse("p = 0.3\nfamily = anti").unwrap();
    c.set("a", "0.6").unwrap();
    c.set("d", "0.8").unwrap();
    assert_eq!(c.state, StateSpec::Amplitudes([0.6.into(), C64::ZERO, C64::ZERO, 0.8.into()]));
    c.validate().unwrap();
    c.set("p", "0.5").unwrap();
    assert_eq!(
        c.state,
        StateSpec::Family {
            p: 0.5,
            family: Family::Ghz
        }
    );
}
