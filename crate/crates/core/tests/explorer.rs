use curvkit::explorer::{evaluate_candidate, objective_breakdown, FourierCurveSpec};
use curvkit::*;

fn embedding(a1: f64, a2: f64, m1: u64, m2: u64, h: usize) -> FourierCurveSpec {
    FourierCurveSpec::from_ccc(&CccSpec::new(a1, a2, m1, m2, 1.0).unwrap(), h).unwrap()
}

fn quick(budget: usize, seed: u64) -> ExplorerConfig {
    ExplorerConfig {
        budget,
        seed,
        ..ExplorerConfig::default()
    }
}

#[test]
fn embedded_extremal_curve_has_the_sharp_value() {
    let q = QuadratureConfig::default();
    let (value, k1, k2) = evaluate_candidate(&embedding(1.0, 1.0, 1, 2, 2), &q).unwrap();
    assert!((value - sharp_bound()).abs() < 1e-9);
    assert!(k1 > 0.1 && k2 > 0.1);
}

#[test]
fn circle_fails_the_constraints() {
    let mut cos = vec![vec![0.0]; 4];
    let mut sin = vec![vec![0.0]; 4];
    cos[0][0] = 1.0;
    sin[1][0] = 1.0;
    let circle = FourierCurveSpec::new(1, cos, sin).unwrap();
    let curve = make_fourier_curve(&circle).unwrap();
    let eval = mixed_curvature_functional(&curve, 2, &QuadratureConfig::default()).unwrap();
    assert!(matches!(eval, Evaluation::Inapplicable { .. }));
}

#[test]
fn small_perturbation_stays_just_above_the_bound() {
    let q = QuadratureConfig::default();
    for seed in 0..4 {
        let spec = embedding(1.0, 1.0, 1, 2, 4).perturbed(1e-3, seed).unwrap();
        let (value, _, _) = evaluate_candidate(&spec, &q).unwrap();
        assert!(
            value > sharp_bound() && value < sharp_bound() + 1e-2,
            "seed {seed}: {value}"
        );
    }
}

#[test]
fn feasible_objective_equals_functional() {
    let q = QuadratureConfig::default();
    let spec = embedding(1.0, 1.0, 1, 2, 4).perturbed(1e-3, 9).unwrap();
    let b = objective_breakdown(&spec, &PenaltyWeights::default(), &q).unwrap();
    let direct = mixed_curvature_functional(&make_fourier_curve(&spec).unwrap(), 2, &q)
        .unwrap()
        .value()
        .unwrap();
    assert_eq!(b.penalty, 0.0);
    assert!((b.objective - direct).abs() < 1e-10);
    assert_eq!(
        penalized_objective(&spec, &PenaltyWeights::default(), &q),
        b.objective
    );
}

#[test]
fn extremal_start_is_not_improved_below_the_bound() {
    let r = minimize_functional(&embedding(1.0, 1.0, 1, 2, 2), &quick(300, 42)).unwrap();
    assert!(r.best_value >= sharp_bound() - 1e-3, "{}", r.best_value);
    assert!(!r.verdict.conjecture_violation);
}

#[test]
fn one_three_curve_descends_toward_the_bound() {
    let initial = embedding(1.0, 1.0, 1, 3, 3);
    let r = minimize_functional(&initial, &quick(800, 42)).unwrap();
    let start = 2.0 * std::f64::consts::PI * 10f64.sqrt();
    assert!((r.initial_value - start).abs() < 1e-9);
    assert!(r.best_value < start, "{} vs {start}", r.best_value);
    assert!(r.best_value >= sharp_bound() - 1e-6);
    assert!(r.trace.windows(2).all(|w| w[1].objective <= w[0].objective));
}

#[test]
fn runs_are_reproducible_and_revalidate() {
    let initial = embedding(1.0, 1.0, 1, 2, 2).perturbed(0.05, 3).unwrap();
    let a = minimize_functional(&initial, &quick(200, 7)).unwrap();
    let b = minimize_functional(&initial, &quick(200, 7)).unwrap();
    assert_eq!(a, b);
    assert!(a.evaluations <= 200);
    let q = QuadratureConfig::simpson(a.validation_samples);
    let (value, k1, k2) = evaluate_candidate(&a.best_spec, &q).unwrap();
    assert!((value - a.best_value).abs() <= 1e-9);
    assert_eq!((k1, k2), (a.min_k1, a.min_k2));

    let json = serde_json::to_string(&a).unwrap();
    let back: ExplorationResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
}

#[test]
fn winding_is_recorded_for_ccc_starts() {
    let initial = InitialCurve::Ccc {
        a1: 1.0,
        a2: 1.0,
        m1: 2,
        m2: 1,
        perturbation: 0.0,
    };
    let r = explorer::explore(&initial, 2, &quick(20, 1)).unwrap();
    assert_eq!(r.initial_winding, Some((2, 1)));
    assert!((r.initial_value - sharp_bound()).abs() < 1e-9);
}
