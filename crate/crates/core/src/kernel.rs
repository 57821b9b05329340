//! Gaussian kernel and the reduced-kernel feature map.
//!
//! A nonlinear twin model is a linear twin model over the features
//! `phi(x) = (K(x, r_1), ..., K(x, r_R))`, where `r_1..r_R` is a random subset
//! of the training samples. Training and the batch solver both map the
//! dataset through [`KernelSpec::map_dataset`] and then run their linear code
//! unchanged. Setting the reference set to the whole training set gives the
//! full (non-reduced) kernel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{dot, sq_dist};

/// Default number of reference points for the reduced kernel.
pub const DEFAULT_REDUCED_SIZE: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    Linear,
    Gaussian(GaussianKernel),
}

/// `K(x, y) = exp(-mu * ||x - y||^2)` with a fixed reference set.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel {
    mu: f64,
    dim: usize,
    /// Row-major, `r * dim` values.
    reference: Vec<f64>,
}

impl GaussianKernel {
    pub fn new(mu: f64, dim: usize, reference: Vec<f64>) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::invalid(format!("kernel width mu must be positive, got {mu}")));
        }
        if dim == 0 || reference.is_empty() || !reference.len().is_multiple_of(dim) {
            return Err(Error::invalid(
                "reference set must hold at least one point of the input dimension",
            ));
        }
        Ok(GaussianKernel { mu, dim, reference })
    }

    pub fn from_rows(mu: f64, rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(rows.len() * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            flat.extend_from_slice(r);
        }
        Self::new(mu, dim, flat)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn input_dim(&self) -> usize {
        self.dim
    }

    pub fn reference_count(&self) -> usize {
        self.reference.len() / self.dim
    }

    pub fn reference_point(&self, i: usize) -> &[f64] {
        &self.reference[i * self.dim..(i + 1) * self.dim]
    }

    pub fn reference_points(&self) -> std::slice::ChunksExact<'_, f64> {
        self.reference.chunks_exact(self.dim)
    }

    #[inline]
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        (-self.mu * sq_dist(x, y)).exp()
    }

    /// Writes `phi(x)` into `out` (length `reference_count()`).
    pub fn map_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, r) in out.iter_mut().zip(self.reference_points()) {
            *o = self.eval(x, r);
        }
    }
}

impl KernelSpec {
    pub fn gaussian(mu: f64, reference: &[Vec<f64>]) -> Result<Self> {
        GaussianKernel::from_rows(mu, reference).map(KernelSpec::Gaussian)
    }

    /// Gaussian kernel whose reference set is drawn from `data` by
    /// [`select_reference`].
    pub fn reduced_gaussian(data: &Dataset, mu: f64, r: usize, seed: u64) -> Result<Self> {
        let rows = select_reference(data, r, seed)?;
        Self::gaussian(mu, &rows)
    }

    /// Dimension of the space the linear model lives in.
    pub fn feature_dim(&self, input_dim: usize) -> usize {
        match self {
            KernelSpec::Linear => input_dim,
            KernelSpec::Gaussian(g) => g.reference_count(),
        }
    }

    pub fn check_input(&self, input_dim: usize) -> Result<()> {
        match self {
            KernelSpec::Gaussian(g) if g.dim != input_dim => Err(Error::DimensionMismatch {
                expected: g.dim,
                found: input_dim,
            }),
            _ => Ok(()),
        }
    }

    /// Transforms every sample of `data` through the feature map. The linear
    /// kernel returns a copy.
    pub fn map_dataset(&self, data: &Dataset) -> Result<Dataset> {
        self.check_input(data.dim())?;
        match self {
            KernelSpec::Linear => Ok(data.clone()),
            KernelSpec::Gaussian(g) => data.map_rows(g.reference_count(), |x, out| g.map_into(x, out)),
        }
    }
}

/// `K(x, y)`: the dot product for the linear family, `exp(-mu ||x - y||^2)`
/// for the Gaussian.
pub fn kernel_eval(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    match spec {
        KernelSpec::Linear => Ok(dot(x, y)),
        KernelSpec::Gaussian(g) => {
            if x.len() != g.dim {
                return Err(Error::DimensionMismatch {
                    expected: g.dim,
                    found: x.len(),
                });
            }
            Ok(g.eval(x, y))
        }
    }
}

/// `(K(x, r_1), ..., K(x, r_R))`. Only defined for the Gaussian family.
pub fn feature_map(spec: &KernelSpec, x: &[f64]) -> Result<Vec<f64>> {
    match spec {
        KernelSpec::Linear => Err(Error::invalid(
            "the linear kernel has no reduced feature map; use the raw features",
        )),
        KernelSpec::Gaussian(g) => {
            if x.len() != g.dim {
                return Err(Error::DimensionMismatch {
                    expected: g.dim,
                    found: x.len(),
                });
            }
            let mut out = vec![0.0; g.reference_count()];
            g.map_into(x, &mut out);
            Ok(out)
        }
    }
}

/// Draws `r` distinct samples uniformly from the pooled dataset (both
/// classes together), in random order.
pub fn select_reference(data: &Dataset, r: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let total = data.len();
    if r == 0 || r > total {
        return Err(Error::invalid(format!(
            "reference size {r} must lie in 1..={total} (dataset size)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(rand::seq::index::sample(&mut rng, total, r)
        .into_iter()
        .map(|k| data.pooled(k).features.to_vec())
        .collect())
}
