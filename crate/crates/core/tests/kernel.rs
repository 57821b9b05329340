mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinsgd::data::Dataset;
use twinsgd::kernel::{feature_map, kernel_eval, select_reference, KernelSpec};
use twinsgd::sgtsvm::{half_objective, objective_f1, objective_f2, Half};

#[test]
fn mapped_objectives_equal_direct_kernel_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for trial in 0..50 {
        let pos: Vec<Vec<f64>> = (0..10).map(|_| uniform_vec(&mut rng, 2, -1.0, 1.0)).collect();
        let neg: Vec<Vec<f64>> = (0..10).map(|_| uniform_vec(&mut rng, 2, -1.0, 1.0)).collect();
        let data = Dataset::new(2, pos.clone(), neg.clone()).unwrap();
        let r = rng.random_range(1..=20);
        let reference = select_reference(&data, r, trial).unwrap();
        let mu = rng.random_range(0.05..2.0);
        let spec = KernelSpec::gaussian(mu, &reference).unwrap();
        let mapped = spec.map_dataset(&data).unwrap();
        let u = uniform_vec(&mut rng, r + 1, -1.0, 1.0);
        let want1 = direct_f1(&u, &reference, mu, &pos, &neg, 0.1, 0.3);
        let want2 = direct_f2(&u, &reference, mu, &pos, &neg, 0.2, 0.4);
        let got1 = objective_f1(&u, &mapped, 0.1, 0.3).unwrap();
        let got2 = objective_f2(&u, &mapped, 0.2, 0.4).unwrap();
        assert!((got1 - want1).abs() <= 1e-12 * want1.max(1.0), "{got1} vs {want1}");
        assert!((got2 - want2).abs() <= 1e-12 * want2.max(1.0), "{got2} vs {want2}");
        assert_eq!(got1, half_objective(Half::First, &u, &mapped, 0.1, 0.3).unwrap());
    }
}

#[test]
fn single_reference_map_is_kernel_value() {
    let x = [0.3, -0.7];
    let y = [1.0, 2.0];
    let spec = KernelSpec::gaussian(0.4, &[y.to_vec()]).unwrap();
    assert_eq!(feature_map(&spec, &x).unwrap(), vec![kernel_eval(&spec, &x, &y).unwrap()]);
}

#[test]
fn selection_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pos: Vec<Vec<f64>> = (0..40).map(|_| uniform_vec(&mut rng, 3, -1.0, 1.0)).collect();
    let neg: Vec<Vec<f64>> = (0..40).map(|_| uniform_vec(&mut rng, 3, -1.0, 1.0)).collect();
    let data = Dataset::new(3, pos, neg).unwrap();
    assert_eq!(select_reference(&data, 25, 9).unwrap(), select_reference(&data, 25, 9).unwrap());
    assert_ne!(select_reference(&data, 25, 9).unwrap(), select_reference(&data, 25, 10).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gaussian_is_symmetric_and_bounded(
        (x, y) in (1usize..6).prop_flat_map(|n| (
            prop::collection::vec(-3.0..3.0f64, n),
            prop::collection::vec(-3.0..3.0f64, n),
        )),
        mu in 0.001..5.0f64,
    ) {
        let spec = KernelSpec::gaussian(mu, std::slice::from_ref(&x)).unwrap();
        let kxy = kernel_eval(&spec, &x, &y).unwrap();
        prop_assert_eq!(kxy, kernel_eval(&spec, &y, &x).unwrap());
        prop_assert!(kxy > 0.0 || gauss(mu, &x, &y) == 0.0);
        prop_assert!(kxy <= 1.0);
        prop_assert!((kxy - gauss(mu, &x, &y)).abs() <= 1e-15);
        prop_assert_eq!(kernel_eval(&spec, &x, &x).unwrap(), 1.0);
    }
}
