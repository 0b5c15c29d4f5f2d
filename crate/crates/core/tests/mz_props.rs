mod common;

use ifm_core::mz::{
    efficiency, optimize_reflectivity, outcome_distribution, run_trials, sequential_strategy,
    simulate_strategy, MzConfig, Outcome, OutcomeDistribution, EDGE,
};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distribution_closes(r in 1e-9..(1.0 - 1e-9), bomb in any::<bool>()) {
        let d = outcome_distribution(&MzConfig::new(r, bomb).unwrap());
        prop_assert!((d.total() - 1.0).abs() < TOL);
        for p in d.as_array() {
            prop_assert!((-TOL..=1.0 + TOL).contains(&p));
        }
    }

    #[test]
    fn element_composition_matches_closed_form(r in 1e-9..(1.0 - 1e-9)) {
        let d = outcome_distribution(&MzConfig::new(r, true).unwrap());
        let closed = OutcomeDistribution::closed_form_with_bomb(r);
        let (b, k, a) = common::mz_by_matrices(r, true);
        for (got, want) in d.as_array().into_iter().zip(closed.as_array()) {
            prop_assert!((got - want).abs() < TOL);
        }
        prop_assert!((d.p_bright - b).abs() < TOL);
        prop_assert!((d.p_dark - k).abs() < TOL);
        prop_assert!((d.p_absorbed - a).abs() < TOL);
    }

    #[test]
    fn clear_interferometer_dark_port_stays_dark(r in 1e-9..(1.0 - 1e-9)) {
        let d = outcome_distribution(&MzConfig::new(r, false).unwrap());
        prop_assert!(d.p_dark < TOL);
        prop_assert!(d.p_absorbed == 0.0);
    }

    #[test]
    fn strategy_probabilities_close(r in 1e-6..(1.0 - 1e-6), n in 1u64..10_000) {
        let s = sequential_strategy(&MzConfig::new(r, true).unwrap(), n).unwrap();
        prop_assert!((s.p_detect + s.p_explode + s.p_give_up - 1.0).abs() < TOL);
        prop_assert!(s.expected_photons_sent <= n as f64);
        prop_assert!(s.expected_photons_sent >= 1.0 - TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn efficiency_decreases_with_reflectivity(a in 1e-6..(1.0 - 1e-6), b in 1e-6..(1.0 - 1e-6)) {
        prop_assume!(a < b);
        prop_assert!(efficiency(a).unwrap() > efficiency(b).unwrap());
    }
}

#[test]
fn monte_carlo_passes_chi_square() {
    for (r, seed) in [(0.5, 1u64), (0.2, 2), (0.8, 3)] {
        let cfg = MzConfig::new(r, true).unwrap();
        let n = 100_000u64;
        let tally = run_trials(&cfg, n, seed).unwrap();
        let d = outcome_distribution(&cfg);
        let chi2: f64 = Outcome::ALL
            .iter()
            .map(|&o| {
                let e = d.get(o) * n as f64;
                (tally.count(o) as f64 - e).powi(2) / e
            })
            .sum();
        let p = common::chi_square_p_value_df2(chi2);
        assert!(p > 1e-6, "R = {r}: chi2 = {chi2}, p = {p}");
    }
}

#[test]
fn monte_carlo_within_four_standard_errors() {
    let cfg = MzConfig::new(0.5, true).unwrap();
    let n = 100_000u64;
    let t = run_trials(&cfg, n, 2024).unwrap();
    for (o, p) in [(Outcome::Bright, 0.25), (Outcome::Dark, 0.25), (Outcome::Absorbed, 0.5)] {
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((t.frequency(o) - p).abs() < 4.0 * se, "{o:?}");
    }
}

#[test]
fn sequential_strategy_agrees_with_simulation() {
    let runs = 100_000u64;
    for (r, max) in [(0.5, u64::MAX), (0.2, 5), (0.05, 40)] {
        let cfg = MzConfig::new(r, true).unwrap();
        let exact = sequential_strategy(&cfg, max).unwrap();
        let mc = simulate_strategy(&cfg, max, runs, 77).unwrap();
        for (got, want) in [
            (mc.p_detect(), exact.p_detect),
            (mc.p_explode(), exact.p_explode),
            (mc.p_give_up(), exact.p_give_up),
        ] {
            let se = (want * (1.0 - want) / runs as f64).sqrt().max(1e-12);
            assert!((got - want).abs() <= 4.0 * se, "R = {r}: {got} vs {want}");
        }
        let rel = (mc.mean_photons() - exact.expected_photons_sent) / exact.expected_photons_sent;
        assert!(rel.abs() < 0.02, "R = {r}: mean photons {}", mc.mean_photons());
    }
}

#[test]
fn optimizer_matches_grid_scan() {
    for lambda in [0.0, 1e-4, 3e-3, 0.01, 0.05, 0.2, 1.0] {
        let opt = optimize_reflectivity(lambda).unwrap();
        let (grid_r, _) = common::grid_scan_optimum(lambda, 1_000_000, EDGE);
        assert!((opt.reflectivity - grid_r).abs() < 1e-6, "lambda = {lambda}");
    }
}
