mod common;

use std::collections::BTreeMap;
use std::io::Cursor;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinsgd::data::io::{read_csv, read_libsvm, write_csv, write_libsvm};
use twinsgd::data::synth::{gen_cross_planes, gen_gaussian_1d, CROSS_PLANES_NOISE};
use twinsgd::data::{kfold_indices, split, Dataset};
use twinsgd::experiments::{KernelChoice, Learner};
use twinsgd::model::{evaluate, Classifier, Hyperplane, ModelMeta};
use twinsgd::pegasos::{pegasos_train, PegasosConfig, PegasosModel};
use twinsgd::sgtsvm::train;
use twinsgd::{TrainConfig, TwinModel};

/// Line-by-line LIBSVM reader: label, then `index:value` pairs.
fn reference_libsvm(text: &str) -> (usize, Vec<(f64, Vec<f64>)>) {
    let mut parsed = Vec::new();
    let mut dim = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut parts = line.split(' ').filter(|p| !p.is_empty());
        let label: f64 = parts.next().unwrap().parse().unwrap();
        let mut entries = BTreeMap::new();
        for p in parts {
            let mut kv = p.split(':');
            let k: usize = kv.next().unwrap().parse().unwrap();
            let v: f64 = kv.next().unwrap().parse().unwrap();
            dim = dim.max(k);
            entries.insert(k, v);
        }
        parsed.push((label, entries));
    }
    let rows = parsed
        .into_iter()
        .map(|(label, e)| (label, (1..=dim).map(|k| *e.get(&k).unwrap_or(&0.0)).collect()))
        .collect();
    (dim, rows)
}

#[test]
fn libsvm_matches_reference_parser() {
    let text = "3 1:0.5 4:-2\n-1 2:1.25\n3 3:7 4:1e-3\n-1 1:-4 2:2 3:0.125\n";
    let (dim, rows) = reference_libsvm(text);
    let d = read_libsvm(Cursor::new(text)).unwrap();
    assert_eq!(d.dim(), dim);
    let pos: Vec<Vec<f64>> = rows.iter().filter(|r| r.0 == 3.0).map(|r| r.1.clone()).collect();
    let neg: Vec<Vec<f64>> = rows.iter().filter(|r| r.0 == -1.0).map(|r| r.1.clone()).collect();
    assert_eq!(d.positives().map(<[f64]>::to_vec).collect::<Vec<_>>(), pos);
    assert_eq!(d.negatives().map(<[f64]>::to_vec).collect::<Vec<_>>(), neg);
}

#[test]
fn csv_matches_independent_emitter() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let rows: Vec<(Vec<f64>, bool)> = (0..100)
        .map(|i| (uniform_vec(&mut rng, 4, -1e3, 1e3), i % 3 == 0))
        .collect();
    let mut text = String::new();
    for (x, positive) in &rows {
        for v in x {
            text.push_str(&format!("{v},"));
        }
        text.push_str(if *positive { "1\n" } else { "0\n" });
    }
    let d = read_csv(Cursor::new(text), None).unwrap();
    let pos: Vec<Vec<f64>> = rows.iter().filter(|r| r.1).map(|r| r.0.clone()).collect();
    let neg: Vec<Vec<f64>> = rows.iter().filter(|r| !r.1).map(|r| r.0.clone()).collect();
    assert_eq!(d, Dataset::new(4, pos, neg).unwrap());
}

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    (1usize..5).prop_flat_map(|n| {
        let row = prop::collection::vec(prop_oneof![Just(0.0), -1e6..1e6f64, -1e-6..1e-6f64], n);
        (
            Just(n),
            prop::collection::vec(row.clone(), 1..20),
            prop::collection::vec(row, 1..20),
        )
            .prop_map(|(n, p, q)| Dataset::new(n, p, q).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn csv_round_trip(d in arb_dataset()) {
        let mut buf = Vec::new();
        write_csv(&d, &mut buf).unwrap();
        prop_assert_eq!(read_csv(Cursor::new(buf), None).unwrap(), d);
    }

    #[test]
    fn libsvm_round_trip(d in arb_dataset()) {
        // Trailing all-zero columns are not representable, so pin the
        // last column of one row.
        let n = d.dim();
        let mut pos: Vec<Vec<f64>> = d.positives().map(<[f64]>::to_vec).collect();
        pos[0][n - 1] = 1.0;
        let d = Dataset::new(n, pos, d.negatives().map(<[f64]>::to_vec).collect()).unwrap();
        let mut buf = Vec::new();
        write_libsvm(&d, &mut buf).unwrap();
        prop_assert_eq!(read_libsvm(Cursor::new(buf)).unwrap(), d);
    }

    #[test]
    fn kfold_is_a_partition(m1 in 2usize..60, m2 in 2usize..60, k in 2usize..10, seed in any::<u64>()) {
        prop_assume!(k <= m1 && k <= m2);
        let d = Dataset::from_flat(1, (0..m1).map(|i| i as f64).collect(), (0..m2).map(|j| j as f64).collect()).unwrap();
        let folds = kfold_indices(&d, k, seed).unwrap();
        let mut seen_p = vec![0; m1];
        let mut seen_n = vec![0; m2];
        for f in &folds {
            for &i in &f.validation_positive { seen_p[i] += 1; }
            for &j in &f.validation_negative { seen_n[j] += 1; }
            prop_assert_eq!(f.train_positive.len() + f.validation_positive.len(), m1);
            prop_assert_eq!(f.train_negative.len() + f.validation_negative.len(), m2);
            prop_assert!(f.validation_positive.iter().all(|i| !f.train_positive.contains(i)));
        }
        prop_assert!(seen_p.iter().chain(&seen_n).all(|&c| c == 1));
        let sizes: Vec<usize> = folds.iter().map(|f| f.validation_positive.len()).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn split_preserves_multiset(m in 10usize..80, frac in 0.2..0.8f64, seed in any::<u64>()) {
        let d = Dataset::from_flat(1, (0..m).map(|i| i as f64).collect(), (0..m).map(|j| -(j as f64)).collect()).unwrap();
        let (tr, te) = split(&d, frac, seed).unwrap();
        let mut got: Vec<f64> = tr.samples().chain(te.samples()).map(|s| s.features[0] * s.label.sign()).collect();
        let mut want: Vec<f64> = d.samples().map(|s| s.features[0] * s.label.sign()).collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn prediction_is_scale_invariant(
        w1 in prop::collection::vec(-3.0..3.0f64, 3), b1 in -3.0..3.0f64,
        w2 in prop::collection::vec(-3.0..3.0f64, 3), b2 in -3.0..3.0f64,
        x in prop::collection::vec(-5.0..5.0f64, 3),
        alpha in 1e-3..1e3f64,
        k in -20i32..20,
    ) {
        let m = TwinModel::new(3, Hyperplane::new(w1, b1), Hyperplane::new(w2, b2), None, ModelMeta::default()).unwrap();
        let (d1, d2) = m.distances(&x).unwrap();
        // Powers of two scale exactly; other factors may move a near tie by an ulp.
        let exact = m.with_scaled_halves(2f64.powi(k), 1.0);
        prop_assert_eq!(exact.predict(&x).unwrap(), m.predict(&x).unwrap());
        prop_assume!((d1 - d2).abs() > 1e-9 * d1.max(d2));
        prop_assert_eq!(m.with_scaled_halves(alpha, 1.0).predict(&x).unwrap(), m.predict(&x).unwrap());
        prop_assert_eq!(m.with_scaled_halves(1.0, alpha).predict(&x).unwrap(), m.predict(&x).unwrap());
    }
}

#[test]
fn flipped_labels_complement_accuracy() {
    let d = gen_cross_planes(200, CROSS_PLANES_NOISE, 8).unwrap();
    let fit = train(&d, &TrainConfig::default(), None).unwrap();
    let a = evaluate(&fit.model, &d).unwrap().accuracy;
    let b = evaluate(&fit.model, &d.flip_labels()).unwrap().accuracy;
    assert!((a + b - 1.0).abs() < 1e-15);
}

fn random_points(n: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    (0..1000).map(|_| (0..n).map(|_| rng.random_range(-scale..scale)).collect()).collect()
}

#[test]
fn twin_models_round_trip_with_identical_predictions() {
    let d = gen_cross_planes(150, CROSS_PLANES_NOISE, 5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for (name, kernel) in [("linear", KernelChoice::Linear), ("gauss", KernelChoice::gaussian(0.1))] {
        let learner = Learner::Sgtsvm {
            config: TrainConfig::default(),
            kernel,
        };
        let fitted = learner.fit(&d, 3).unwrap();
        let twinsgd::experiments::FittedModel::Twin(model) = fitted else { panic!() };
        let path = dir.path().join(format!("{name}.model"));
        model.save(&path).unwrap();
        let back = TwinModel::load(&path).unwrap();
        assert_eq!(back, model);
        if let (Some(a), Some(b)) = (model.kernel(), back.kernel()) {
            assert_eq!(a.reference_count(), b.reference_count());
            for (p, q) in a.reference_points().zip(b.reference_points()) {
                assert_eq!(p.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), q.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
            }
        }
        for x in random_points(2, 3.0) {
            assert_eq!(model.distances(&x).unwrap(), back.distances(&x).unwrap());
            assert_eq!(model.predict(&x).unwrap(), back.predict(&x).unwrap());
        }
    }
}

#[test]
fn pegasos_model_round_trip() {
    let d = gen_gaussian_1d(300, 2.0, 4).unwrap();
    for with_bias in [false, true] {
        let cfg = PegasosConfig {
            with_bias,
            ..Default::default()
        };
        let model = pegasos_train(&d, &cfg).unwrap().model;
        let back = PegasosModel::from_text(&model.to_text()).unwrap();
        assert_eq!(back, model);
        for x in random_points(1, 6.0) {
            assert_eq!(Classifier::predict(&model, &x).unwrap(), Classifier::predict(&back, &x).unwrap());
        }
    }
}

#[test]
fn bumped_version_is_rejected() {
    let d = gen_cross_planes(20, CROSS_PLANES_NOISE, 5).unwrap();
    let text = train(&d, &TrainConfig::default(), None).unwrap().model.to_text();
    let bumped = text.replacen("format_version 1\n", "format_version 2\n", 1);
    assert_ne!(bumped, text);
    let err = TwinModel::from_text(&bumped).unwrap_err();
    assert!(err.to_string().contains("version"), "{err}");
}
