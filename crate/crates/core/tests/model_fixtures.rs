mod common;

use common::{load_points, load_xgboost};
use fastpd::model::{from_native_json, to_native_json};
use fastpd::{fixtures, ParseOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn xgboost_dump_reproduces_trainer_predictions() {
    // xgboost accumulates margins in f32; with 60 trees that rounding alone
    // reaches 1e-6 at |margin| ~ 6, so the stub model is compared relatively
    for (stem, relative) in [("dgp2_20x5", false), ("dgp1_stub", true)] {
        let model = load_xgboost(stem);
        let (points, expected) = load_points(stem);
        assert_eq!(points.n(), 100);
        for (x, want) in points.rows().zip(&expected) {
            let got = model.predict(x).unwrap();
            let scale = if relative { want.abs().max(1.0) } else { 1.0 };
            assert!((got - want).abs() < 1e-6 * scale, "{stem}: {got} vs {want}");
        }
    }
}

#[test]
fn dgp2_fixture_shape() {
    let model = load_xgboost("dgp2_20x5");
    assert_eq!(model.trees().len(), 20);
    assert_eq!(model.max_depth(), 5);
    assert_eq!(model.num_features(), 7);
    assert_eq!(model.intercept(), 0.5);
}

#[test]
fn native_round_trip_preserves_predictions() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for model in [
        load_xgboost("dgp2_20x5"),
        fixtures::random_ensemble(&mut rng, 4, 5, 8),
    ] {
        let doc = to_native_json(&model);
        let back = from_native_json(&doc, &ParseOptions::default()).unwrap();
        assert_eq!(back.num_features(), model.num_features());
        for _ in 0..1000 {
            let x: Vec<f64> = (0..model.num_features())
                .map(|_| rng.random_range(-4.0..4.0))
                .collect();
            assert_eq!(
                back.predict(&x).unwrap().to_bits(),
                model.predict(&x).unwrap().to_bits()
            );
        }
    }
}

#[test]
fn twin_trees_agree_on_random_points() {
    let (a, b) = (fixtures::twin_ensemble_a(), fixtures::twin_ensemble_b());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        assert_eq!(a.predict(&x).unwrap(), b.predict(&x).unwrap());
    }
}
