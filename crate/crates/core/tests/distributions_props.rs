use std::f64::consts::PI;

use orlicz_maxima::distributions::{DistributionModel, RngStream};
use orlicz_maxima::numerics::{integrate, integrate_to_infinity, QuadratureSpec, TailDecay};
use proptest::prelude::*;

fn models() -> Vec<DistributionModel> {
    vec![
        DistributionModel::gaussian(),
        DistributionModel::log_gamma(1.5).unwrap(),
        DistributionModel::log_gamma(2.0).unwrap(),
        DistributionModel::stable(1.5).unwrap(),
    ]
}

#[test]
fn tails_are_non_increasing() {
    for model in models() {
        let grid: Vec<f64> = (0..100).map(|k| 0.05 + 0.1 * k as f64).collect();
        for w in grid.windows(2) {
            let (a, b) = (model.tail(w[0]).value, model.tail(w[1]).value);
            assert!(
                a >= b,
                "{model}: tail({}) = {a} < tail({}) = {b}",
                w[0],
                w[1]
            );
        }
    }
}

#[test]
fn loggamma_density_and_tail() {
    for p in [1.5, 2.0, 3.0] {
        let model = DistributionModel::log_gamma(p).unwrap();
        let spec =
            QuadratureSpec::default().with_tail_decay(TailDecay::PowerLaw { exponent: p + 1.0 });
        let mass = integrate_to_infinity(|x| model.density(x).unwrap(), 1.0, &spec).unwrap();
        assert!((mass - 1.0).abs() <= 1e-9, "p={p}: {mass}");
        for y in [1.0, 1.7, 4.0, 100.0] {
            assert_eq!(model.tail(y).value, y.powf(-p));
        }
        assert_eq!(model.tail(0.5).value, 1.0);
    }
}

#[test]
fn gaussian_density_integrates_to_one() {
    let g = DistributionModel::gaussian();
    let mass = integrate(
        |x| g.density(x).unwrap(),
        -12.0,
        12.0,
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert!((mass - 1.0).abs() <= 1e-9);
}

#[test]
fn gaussian_tail_matches_its_asymptotic_shape() {
    let g = DistributionModel::gaussian();
    for k in 0..=40 {
        let y = 2.0 + 0.1 * k as f64;
        let shape = (-y * y / 2.0).exp() / y * (2.0 / PI).sqrt();
        let ratio = g.tail(y).value / shape;
        assert!((0.8..=1.0).contains(&ratio), "y={y}: {ratio}");
    }
}

#[test]
fn stable_tail_times_power_is_bounded() {
    for p in [1.2, 1.5, 1.8] {
        let model = DistributionModel::stable(p).unwrap();
        // Asymptotic constant of P(|X| ≥ y) y^p for this parametrization.
        let c = 2.0 * statrs::function::gamma::gamma(p) * (PI * p / 2.0).sin() / PI;
        let scaled: Vec<f64> = (0..=45)
            .map(|k| 5.0 + k as f64)
            .map(|y| model.tail(y).value * y.powf(p))
            .collect();
        let max = scaled.iter().copied().fold(0.0, f64::max);
        assert!(max <= 1.5 * c, "p={p}: max {max}, constant {c}");
        assert!(model.tail(5.0).approximate);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn samplers_are_deterministic(seed in any::<u64>(), stream in any::<u64>(), which in 0usize..4) {
        let model = models()[which];
        let a = model.sample(&mut RngStream::new(seed, stream), 64);
        let b = model.sample(&mut RngStream::new(seed, stream), 64);
        prop_assert_eq!(a, b);
    }
}
