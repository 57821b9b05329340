//! Synthetic experiment datasets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use super::Dataset;
use crate::error::{Error, Result};

/// Default ordinate noise for [`gen_cross_planes`].
pub const CROSS_PLANES_NOISE: f64 = 0.05;

/// One-dimensional two-Gaussian problem: positives from N(+sep, 1), negatives
/// from N(-sep, 1). The Bayes boundary is at zero.
pub fn gen_gaussian_1d(m_per_class: usize, mean_sep: f64, seed: u64) -> Result<Dataset> {
    if m_per_class == 0 {
        return Err(Error::invalid("m_per_class must be at least 1"));
    }
    if !mean_sep.is_finite() {
        return Err(Error::invalid("mean_sep must be finite"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos_dist = Normal::new(mean_sep, 1.0).expect("unit std is valid");
    let neg_dist = Normal::new(-mean_sep, 1.0).expect("unit std is valid");
    let pos: Vec<f64> = (0..m_per_class).map(|_| pos_dist.sample(&mut rng)).collect();
    let neg: Vec<f64> = (0..m_per_class).map(|_| neg_dist.sample(&mut rng)).collect();
    Dataset::from_flat(1, pos, neg)
}

/// Two crossing lines in the plane.
///
/// Positives lie along `x2 = x1`, negatives along `x2 = -x1`, with `x1`
/// uniform on `[0, 1]` and Gaussian noise of standard deviation `noise` added
/// to `x2`. The lines meet at the origin, at the edge of the sampled range, so
/// each class lies entirely on one side of the other class's line.
pub fn gen_cross_planes(m_per_class: usize, noise: f64, seed: u64) -> Result<Dataset> {
    if m_per_class < 2 {
        return Err(Error::invalid("m_per_class must be at least 2"));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::invalid("noise must be a finite non-negative std"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut line = |slope: f64| -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * m_per_class);
        for _ in 0..m_per_class {
            let x1: f64 = rng.random_range(0.0..=1.0);
            let eps: f64 = StandardNormal.sample(&mut rng);
            out.push(x1);
            out.push(slope * x1 + noise * eps);
        }
        out
    };
    let pos = line(1.0);
    let neg = line(-1.0);
    Dataset::from_flat(2, pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mean_std;

    #[test]
    fn cross_planes_noiseless_lines() {
        let d = gen_cross_planes(200, 0.0, 3).unwrap();
        assert!(d.positives().all(|x| x[1] == x[0]));
        assert!(d.negatives().all(|x| x[1] == -x[0]));
        assert!(d.samples().all(|s| (0.0..=1.0).contains(&s.features[0])));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_gaussian_1d(50, 2.0, 9).unwrap(), gen_gaussian_1d(50, 2.0, 9).unwrap());
        assert_ne!(gen_gaussian_1d(50, 2.0, 9).unwrap(), gen_gaussian_1d(50, 2.0, 10).unwrap());
        assert_eq!(gen_cross_planes(50, 0.05, 1).unwrap(), gen_cross_planes(50, 0.05, 1).unwrap());
    }

    #[test]
    fn gaussian_moments() {
        let d = gen_gaussian_1d(100_000, 2.0, 42).unwrap();
        let pos: Vec<f64> = d.positives().map(|x| x[0]).collect();
        let neg: Vec<f64> = d.negatives().map(|x| x[0]).collect();
        let (mp, sp) = mean_std(&pos);
        let (mn, sn) = mean_std(&neg);
        assert!((mp - 2.0).abs() < 0.02, "{mp}");
        assert!((sp - 1.0).abs() < 0.02, "{sp}");
        assert!((mn + 2.0).abs() < 0.02, "{mn}");
        assert!((sn - 1.0).abs() < 0.02, "{sn}");
    }

    #[test]
    fn preconditions() {
        assert!(gen_gaussian_1d(0, 2.0, 0).is_err());
        assert!(gen_cross_planes(1, 0.05, 0).is_err());
        assert!(gen_cross_planes(10, -1.0, 0).is_err());
    }
}
