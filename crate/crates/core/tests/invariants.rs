use ensconc_core::fock::mode_norm_base;
use ensconc_core::oracle::oracle_success_probability;
use ensconc_core::{
    apply_effective_beamsplitter, build_tmss, condition_on_clicks_ideal, condition_on_clicks_lossy,
    heralded_entanglement, success_probability_lossy, DetectorModel,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heralded_state_structure(lambda in 0.0f64..0.95, phi in 0.0f64..0.5, eta in 0.0f64..=1.0, n_max in 2usize..24) {
        let table = apply_effective_beamsplitter(&build_tmss(lambda, n_max).unwrap(), phi).unwrap();
        let state = condition_on_clicks_lossy(&table, DetectorModel::new(eta).unwrap());
        prop_assert_eq!(state.norm(), state.trace());
        for ((a, b, c, d), v) in state.entries() {
            prop_assert_eq!(a as isize - b as isize, c as isize - d as isize);
            prop_assert_eq!(v, state.get(c, d, a, b));
            prop_assert!(v.is_finite());
            if (a, b) == (c, d) {
                prop_assert!(v >= 0.0);
            }
        }
        // the truncated trace never exceeds the closed form
        let closed = success_probability_lossy(lambda, phi, eta).unwrap();
        prop_assert!(state.trace() <= closed + 1e-15);
    }

    #[test]
    fn truncated_trace_is_exact_partial_series(lambda in 0.05f64..0.95, phi in 0.01f64..0.5, eta in 0.0f64..=1.0) {
        // sum_{n <= n_max} (1-l^2) l^{2n} (M^n - L^n)^2
        let n_max = 30;
        let t = 1.0 - phi * phi;
        let m = mode_norm_base(phi);
        let l = phi * phi * (1.0 - eta) + t * t;
        let series: f64 = (0..=n_max as i32)
            .map(|n| (1.0 - lambda * lambda) * lambda.powi(2 * n) * (m.powi(n) - l.powi(n)).powi(2))
            .sum();
        let table = apply_effective_beamsplitter(&build_tmss(lambda, n_max).unwrap(), phi).unwrap();
        let trace = condition_on_clicks_lossy(&table, DetectorModel::new(eta).unwrap()).trace();
        prop_assert!((trace - series).abs() <= 1e-13 * series.max(1e-300) + 1e-18);
    }
}

#[test]
fn ideal_equals_unit_efficiency() {
    let table = apply_effective_beamsplitter(&build_tmss(0.75, 40).unwrap(), 0.2).unwrap();
    let a = condition_on_clicks_ideal(&table);
    let b = condition_on_clicks_lossy(&table, DetectorModel::ideal());
    assert!(a.entries().all(|((i, j, k, l), v)| (v - b.get(i, j, k, l)).abs() <= 1e-12));
}

#[test]
fn oracle_success_examples() {
    assert_eq!(oracle_success_probability(0.4, 0.1, 0.0, 5).unwrap(), 0.0);
    let lossless = oracle_success_probability(0.4, 0.1, 1.0, 5).unwrap();
    let table = apply_effective_beamsplitter(&build_tmss(0.4, 5).unwrap(), 0.1).unwrap();
    assert!((lossless - condition_on_clicks_ideal(&table).trace()).abs() < 1e-15);
}

#[test]
fn output_entanglement_drops_with_efficiency() {
    for lambda in [0.2, 0.5, 0.8] {
        let values: Vec<f64> = [1.0, 0.8, 0.5, 0.2, 0.05]
            .iter()
            .map(|&eta| heralded_entanglement(lambda, 0.1, eta, 60).unwrap().unwrap().log_negativity)
            .collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]), "{values:?}");
    }
}
