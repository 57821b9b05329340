//! Labeled binary datasets and everything that produces or slices them.

use std::fmt;

use crate::error::{Error, Result};

pub mod io;
pub mod sampling;
pub mod split;
pub mod synth;

pub use sampling::{PairSampler, SamplingKind, SamplingMask, SamplingPolicy};
pub use split::{kfold_indices, split, FoldIndices};

/// Class label. `Positive` is class +1 (matrix X1), `Negative` is class -1 (X2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }

    pub fn from_sign(value: f64) -> Label {
        if value >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Positive => f.write_str("+1"),
            Label::Negative => f.write_str("-1"),
        }
    }
}

/// A borrowed feature vector together with its label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<'a> {
    pub features: &'a [f64],
    pub label: Label,
}

/// Immutable two-class sample matrix.
///
/// Each class is stored row-major in one contiguous buffer, so `positive(i)`
/// and `negative(j)` are plain slices of length [`Dataset::dim`].
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    positives: Vec<f64>,
    negatives: Vec<f64>,
}

impl Dataset {
    /// Builds a dataset from per-class row lists.
    pub fn new(dim: usize, positives: Vec<Vec<f64>>, negatives: Vec<Vec<f64>>) -> Result<Self> {
        let flatten = |rows: Vec<Vec<f64>>| -> Result<Vec<f64>> {
            let mut out = Vec::with_capacity(rows.len() * dim);
            for row in rows {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: row.len(),
                    });
                }
                out.extend_from_slice(&row);
            }
            Ok(out)
        };
        let positives = flatten(positives)?;
        let negatives = flatten(negatives)?;
        Self::from_flat(dim, positives, negatives)
    }

    /// Builds a dataset from row-major per-class buffers.
    pub fn from_flat(dim: usize, positives: Vec<f64>, negatives: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for buf in [&positives, &negatives] {
            if buf.len() % dim != 0 {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: buf.len() % dim,
                });
            }
        }
        if positives.is_empty() {
            return Err(Error::EmptyClass(Label::Positive));
        }
        if negatives.is_empty() {
            return Err(Error::EmptyClass(Label::Negative));
        }
        Ok(Dataset {
            dim,
            positives,
            negatives,
        })
    }

    /// Builds a dataset from labeled rows in any order.
    pub fn from_samples<I, V>(dim: usize, samples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Label)>,
        V: AsRef<[f64]>,
    {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (x, y) in samples {
            let x = x.as_ref();
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: x.len(),
                });
            }
            match y {
                Label::Positive => pos.extend_from_slice(x),
                Label::Negative => neg.extend_from_slice(x),
            }
        }
        Self::from_flat(dim, pos, neg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_positive(&self) -> usize {
        self.positives.len() / self.dim
    }

    pub fn n_negative(&self) -> usize {
        self.negatives.len() / self.dim
    }

    pub fn len(&self) -> usize {
        self.n_positive() + self.n_negative()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn class_len(&self, label: Label) -> usize {
        match label {
            Label::Positive => self.n_positive(),
            Label::Negative => self.n_negative(),
        }
    }

    #[inline]
    pub fn positive(&self, i: usize) -> &[f64] {
        &self.positives[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn negative(&self, j: usize) -> &[f64] {
        &self.negatives[j * self.dim..(j + 1) * self.dim]
    }

    #[inline]
    pub fn row(&self, label: Label, i: usize) -> &[f64] {
        match label {
            Label::Positive => self.positive(i),
            Label::Negative => self.negative(i),
        }
    }

    pub fn positives(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.positives.chunks_exact(self.dim)
    }

    pub fn negatives(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.negatives.chunks_exact(self.dim)
    }

    pub fn class_rows(&self, label: Label) -> std::slice::ChunksExact<'_, f64> {
        match label {
            Label::Positive => self.positives.chunks_exact(self.dim),
            Label::Negative => self.negatives.chunks_exact(self.dim),
        }
    }

    /// Pooled index `k`: positives occupy `0..m1`, negatives `m1..m1+m2`.
    pub fn pooled(&self, k: usize) -> Sample<'_> {
        let m1 = self.n_positive();
        if k < m1 {
            Sample {
                features: self.positive(k),
                label: Label::Positive,
            }
        } else {
            Sample {
                features: self.negative(k - m1),
                label: Label::Negative,
            }
        }
    }

    /// All samples, positives first, in stored order.
    pub fn samples(&self) -> impl Iterator<Item = Sample<'_>> + '_ {
        self.positives()
            .map(|features| Sample {
                features,
                label: Label::Positive,
            })
            .chain(self.negatives().map(|features| Sample {
                features,
                label: Label::Negative,
            }))
    }

    /// Copies the selected rows of each class into a new dataset.
    pub fn subset(&self, positive_idx: &[usize], negative_idx: &[usize]) -> Result<Dataset> {
        let mut pos = Vec::with_capacity(positive_idx.len() * self.dim);
        for &i in positive_idx {
            pos.extend_from_slice(self.positive(i));
        }
        let mut neg = Vec::with_capacity(negative_idx.len() * self.dim);
        for &j in negative_idx {
            neg.extend_from_slice(self.negative(j));
        }
        Dataset::from_flat(self.dim, pos, neg)
    }

    /// Same features with the class roles exchanged.
    pub fn flip_labels(&self) -> Dataset {
        Dataset {
            dim: self.dim,
            positives: self.negatives.clone(),
            negatives: self.positives.clone(),
        }
    }

    /// Applies `f` to every feature row, producing a dataset of dimension `dim`.
    pub fn map_rows<F>(&self, dim: usize, mut f: F) -> Result<Dataset>
    where
        F: FnMut(&[f64], &mut [f64]),
    {
        let mut map_class = |rows: std::slice::ChunksExact<'_, f64>| {
            let mut out = vec![0.0; rows.len() * dim];
            for (src, dst) in rows.zip(out.chunks_exact_mut(dim)) {
                f(src, dst);
            }
            out
        };
        let pos = map_class(self.positives.chunks_exact(self.dim));
        let neg = map_class(self.negatives.chunks_exact(self.dim));
        Dataset::from_flat(dim, pos, neg)
    }

    /// Largest Euclidean norm over all samples.
    pub fn max_norm(&self) -> f64 {
        self.samples()
            .map(|s| crate::linalg::norm(s.features))
            .fold(0.0, f64::max)
    }
}

/// Per-feature min-max scaling to [0, 1], fitted on one dataset and applied
/// to others. Constant features map to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxScaler {
    min: Vec<f64>,
    max: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(data: &Dataset) -> Self {
        let mut min = vec![f64::INFINITY; data.dim()];
        let mut max = vec![f64::NEG_INFINITY; data.dim()];
        for s in data.samples() {
            for (k, &v) in s.features.iter().enumerate() {
                min[k] = min[k].min(v);
                max[k] = max[k].max(v);
            }
        }
        MinMaxScaler { min, max }
    }

    pub fn transform_row(&self, x: &[f64], out: &mut [f64]) {
        for (k, (&v, o)) in x.iter().zip(out.iter_mut()).enumerate() {
            let span = self.max[k] - self.min[k];
            *o = if span > 0.0 { (v - self.min[k]) / span } else { 0.0 };
        }
    }

    pub fn transform(&self, data: &Dataset) -> Result<Dataset> {
        if data.dim() != self.min.len() {
            return Err(Error::DimensionMismatch {
                expected: self.min.len(),
                found: data.dim(),
            });
        }
        data.map_rows(data.dim(), |x, out| self.transform_row(x, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_class() {
        let err = Dataset::new(1, vec![vec![1.0]], vec![]).unwrap_err();
        assert!(matches!(err, Error::EmptyClass(Label::Negative)));
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = Dataset::new(2, vec![vec![1.0, 2.0]], vec![vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn pooled_indexing_puts_positives_first() {
        let d = Dataset::new(1, vec![vec![1.0], vec![2.0]], vec![vec![-1.0]]).unwrap();
        assert_eq!(d.pooled(1).features, &[2.0]);
        assert_eq!(d.pooled(2).label, Label::Negative);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn scaler_maps_to_unit_interval() {
        let d = Dataset::new(2, vec![vec![0.0, 5.0], vec![10.0, 5.0]], vec![vec![5.0, 5.0]]).unwrap();
        let s = MinMaxScaler::fit(&d).transform(&d).unwrap();
        assert_eq!(s.positive(1), &[1.0, 0.0]);
        assert_eq!(s.negative(0), &[0.5, 0.0]);
    }
}
