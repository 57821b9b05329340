//! Class-stratified train/test splits and k-fold partitions.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Dataset, Label};
use crate::error::{Error, Result};

fn shuffled(len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..len).collect();
    idx.shuffle(rng);
    idx
}

/// Stratified random split. Each class contributes `round(fraction * m_i)`
/// samples to the first (training) part and the rest to the second.
pub fn split(data: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::invalid(format!(
            "train fraction must lie strictly between 0 and 1, got {train_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::with_capacity(2);
    for label in [Label::Positive, Label::Negative] {
        let m = data.class_len(label);
        let idx = shuffled(m, &mut rng);
        let n_train = (train_fraction * m as f64).round() as usize;
        if n_train == 0 || n_train == m {
            return Err(Error::invalid(format!(
                "train fraction {train_fraction} leaves an empty part for class {label} ({m} samples)"
            )));
        }
        let (train, test) = idx.split_at(n_train);
        let (mut train, mut test) = (train.to_vec(), test.to_vec());
        train.sort_unstable();
        test.sort_unstable();
        parts.push((train, test));
    }
    let (pos, neg) = (&parts[0], &parts[1]);
    Ok((data.subset(&pos.0, &neg.0)?, data.subset(&pos.1, &neg.1)?))
}

/// Row indices of one cross-validation fold, per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldIndices {
    pub train_positive: Vec<usize>,
    pub train_negative: Vec<usize>,
    pub validation_positive: Vec<usize>,
    pub validation_negative: Vec<usize>,
}

impl FoldIndices {
    /// Copies out `(train, validation)` datasets.
    pub fn materialize(&self, data: &Dataset) -> Result<(Dataset, Dataset)> {
        Ok((
            data.subset(&self.train_positive, &self.train_negative)?,
            data.subset(&self.validation_positive, &self.validation_negative)?,
        ))
    }
}

/// Stratified k-fold partition: each class is shuffled and dealt round-robin
/// into `k` validation folds, so fold sizes differ by at most one per class.
pub fn kfold_indices(data: &Dataset, k: usize, seed: u64) -> Result<Vec<FoldIndices>> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment: Vec<Vec<usize>> = Vec::with_capacity(2);
    for label in [Label::Positive, Label::Negative] {
        let m = data.class_len(label);
        if m < k {
            return Err(Error::FoldTooSmall { label, size: m, k });
        }
        let mut fold_of = vec![0usize; m];
        for (pos, i) in shuffled(m, &mut rng).into_iter().enumerate() {
            fold_of[i] = pos % k;
        }
        assignment.push(fold_of);
    }
    let pick = |fold_of: &[usize], fold: usize, inside: bool| -> Vec<usize> {
        (0..fold_of.len()).filter(|&i| (fold_of[i] == fold) == inside).collect()
    };
    Ok((0..k)
        .map(|fold| FoldIndices {
            train_positive: pick(&assignment[0], fold, false),
            train_negative: pick(&assignment[1], fold, false),
            validation_positive: pick(&assignment[0], fold, true),
            validation_negative: pick(&assignment[1], fold, true),
        })
        .collect())
}
