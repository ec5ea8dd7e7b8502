//! Property tests over randomly drawn doubled-Bernoulli models and ensemble
//! parameters: the structural invariants that must hold for every input,
//! not just the worked examples.

use charge2::exact::{
    exact_cumulants, exact_pmf, kolmogorov_distance_to_normal, mgf_numeric_cumulants,
    tail_probability, TailSide,
};
use charge2::limits::rate::{line_rate_scaled, RateFunction};
use charge2::line::{line_mgf_laguerre, line_mgf_product, line_model, LineEnsemble};
use charge2::model::DoubledBernoulliModel;
use proptest::prelude::*;

fn arb_model() -> impl Strategy<Value = DoubledBernoulliModel> {
    prop::collection::vec(0.01f64..0.99, 1..30)
        .prop_map(|ps| DoubledBernoulliModel::new(ps, "prop").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pmf_is_a_probability_vector(model in arb_model()) {
        let pmf = exact_pmf(&model).unwrap();
        prop_assert_eq!(pmf.factor_count(), model.factor_count());
        prop_assert!(pmf.mass().iter().all(|&p| (0.0..=1.0).contains(&p)));
        prop_assert!((pmf.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pmf_moments_match_closed_form_cumulants(model in arb_model()) {
        let pmf = exact_pmf(&model).unwrap();
        let cum = exact_cumulants(&model);
        let (mean, var) = pmf.mean_variance();
        prop_assert!((mean - cum.kappa1).abs() <= 1e-9 * cum.kappa1.abs().max(1.0));
        prop_assert!((var - cum.kappa2).abs() <= 1e-9 * cum.kappa2.abs().max(1.0));
    }

    #[test]
    fn numeric_cumulants_agree(model in arb_model()) {
        let cum = exact_cumulants(&model);
        let numeric = mgf_numeric_cumulants(|z| model.log_mgf(z), 1e-2).unwrap();
        let scale = 1.0 + cum.kappa1.abs();
        prop_assert!((numeric.kappa1 - cum.kappa1).abs() < 1e-5 * scale);
        prop_assert!((numeric.kappa2 - cum.kappa2).abs() < 1e-5 * scale);
        prop_assert!((numeric.kappa3 - cum.kappa3).abs() < 1e-5 * scale);
    }

    #[test]
    fn tails_are_complementary(model in arb_model(), j in 0usize..30) {
        let pmf = exact_pmf(&model).unwrap();
        let n = pmf.factor_count();
        let threshold = 2.0 * (j.min(n)) as f64;
        let upper = tail_probability(&pmf, threshold, TailSide::Geq);
        let lower = tail_probability(&pmf, threshold - 2.0, TailSide::Leq);
        prop_assert!((upper + lower - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kolmogorov_distance_is_a_distance(model in arb_model()) {
        let pmf = exact_pmf(&model).unwrap();
        let d = kolmogorov_distance_to_normal(&pmf).unwrap();
        prop_assert!((0.0..1.0).contains(&d));
    }

    #[test]
    fn mgf_routes_agree_for_line(n in 1u32..40, gamma in 0.05f64..8.0, z in -2.0f64..2.0) {
        let ens = LineEnsemble::scaled(n, gamma).unwrap();
        let model = line_model(&ens).unwrap();
        let a = line_mgf_laguerre(&ens, z).unwrap();
        let b = line_mgf_product(&model, z);
        prop_assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()), "{} vs {}", a, b);
    }

    #[test]
    fn line_mgf_is_convex_in_z(n in 1u32..30, gamma in 0.05f64..4.0, z in -1.5f64..1.5) {
        // A log-MGF is convex; check the discrete second difference.
        let ens = LineEnsemble::scaled(n, gamma).unwrap();
        let h = 1e-3;
        let f = |w: f64| line_mgf_laguerre(&ens, w).unwrap();
        prop_assert!(f(z + h) + f(z - h) - 2.0 * f(z) >= -1e-10);
    }

    #[test]
    fn scaled_rate_nonnegative_and_anchored(gamma in 0.05f64..8.0, x in 0.001f64..0.999) {
        let v = line_rate_scaled(gamma, x).unwrap();
        prop_assert!(v >= -1e-12, "negative rate {} at x={}, gamma={}", v, x, gamma);
        let rf = RateFunction::line_scaled(gamma).unwrap();
        let at_min = rf.evaluate(rf.minimizer()).unwrap();
        prop_assert!(at_min.abs() < 1e-11);
    }

    #[test]
    fn circle_rate_dominates_every_chord(rho in 0.2f64..4.0, x in 0.05f64..1.95, z in -4.0f64..4.0) {
        // Λ*(x) = sup_z (xz - Λ(z)) dominates each individual chord.
        let dual = RateFunction::circle(rho).unwrap().evaluate(x).unwrap();
        let chord = x * z - charge2::limits::rate::circle_lambda(rho, z);
        prop_assert!(dual >= chord - 1e-9, "dual {} below chord {}", dual, chord);
    }
}
