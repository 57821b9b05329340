//! Deterministic full-batch solver for the two twin objectives, used as
//! ground truth on small instances.
//!
//! Each half problem
//!
//! ```text
//! min_u 1/2 u^T H u + C sum_j (1 + s h_j^T u)_+,   H = I + c_prox/m_prox Z^T Z
//! ```
//!
//! is solved through its box-constrained dual
//! `max_{0 <= a <= C} sum_j a_j - 1/2 a^T (Hh H^-1 Hh^T) a` by cyclic
//! coordinate ascent, with `u = -s H^-1 Hh^T a` kept in sync. The duality gap
//! `f(u) - D(a)` bounds the distance of `f(u)` from the optimum, so the
//! reported optimum carries its own certificate.

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::linalg::{dot, norm};
use crate::model::{Hyperplane, ModelMeta, TwinModel};
use crate::sgtsvm::{half_objective, Half};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Stop once `gap <= obj_tol * f(u)`.
    pub obj_tol: f64,
    /// Cap on coordinate-ascent epochs (one pass over the hinge samples).
    pub max_iter: u64,
    /// Refuse datasets with more samples than this.
    pub max_samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            obj_tol: 1e-10,
            max_iter: 100_000,
            max_samples: 50_000,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.obj_tol.is_nan() || self.obj_tol <= 0.0 {
            return Err(Error::invalid(format!("obj_tol must be positive, got {}", self.obj_tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// Minimizer of one half problem.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSolution {
    /// Augmented minimizer `(w, b)`.
    pub u: Vec<f64>,
    pub objective: f64,
    /// Dual objective at the final multipliers; a lower bound on the optimum.
    pub dual: f64,
    pub gap: f64,
    pub converged: bool,
    pub epochs: u64,
    /// Norm of [`batch_subgrad_half`] at `u`. Near zero away from kinks;
    /// reported, not asserted, since the selected subgradient need not be
    /// the minimal one when samples sit on the hinge.
    pub subgrad_norm: f64,
}

#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub model: TwinModel,
    pub f1_star: f64,
    pub f2_star: f64,
    pub halves: [HalfSolution; 2],
}

impl OracleSolution {
    pub fn converged(&self) -> bool {
        self.halves.iter().all(|h| h.converged)
    }
}

fn check_u(u: &[f64], data: &Dataset) -> Result<()> {
    if u.len() != data.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: data.dim() + 1,
            found: u.len(),
        });
    }
    Ok(())
}

/// Full subgradient of one half objective at `u`:
/// `u + c_prox/m_prox sum_i z_i z_i^T u + s c_hinge/m_hinge sum_j zhat_j [1 + s u^T zhat_j > 0]`.
pub fn batch_subgrad_half(half: Half, u: &[f64], data: &Dataset, c_prox: f64, c_hinge: f64) -> Result<Vec<f64>> {
    check_u(u, data)?;
    let n = data.dim();
    let (w, b) = (&u[..n], u[n]);
    let sign = half.hinge_sign();
    let mut g = u.to_vec();
    let prox = data.class_rows(half.proximal_class());
    let a = c_prox / prox.len() as f64;
    for x in prox {
        let p = a * (dot(w, x) + b);
        for (gj, xj) in g.iter_mut().zip(x) {
            *gj += p * xj;
        }
        g[n] += p;
    }
    let hinge = data.class_rows(half.hinge_class());
    let h = sign * c_hinge / hinge.len() as f64;
    for x in hinge {
        if 1.0 + sign * (dot(w, x) + b) > 0.0 {
            for (gj, xj) in g.iter_mut().zip(x) {
                *gj += h * xj;
            }
            g[n] += h;
        }
    }
    Ok(g)
}

/// Full subgradient of `f1`:
/// `u + c1/m1 Z1^T Z1 u + c2/m2 Z2^T [e + Z2 u > 0]`.
pub fn batch_subgrad(u: &[f64], data: &Dataset, c1: f64, c2: f64) -> Result<Vec<f64>> {
    batch_subgrad_half(Half::First, u, data, c1, c2)
}

/// Full subgradient of `f2`:
/// `u + c3/m2 Z2^T Z2 u - c4/m1 Z1^T [e - Z1 u > 0]`.
pub fn batch_subgrad_f2(u: &[f64], data: &Dataset, c3: f64, c4: f64) -> Result<Vec<f64>> {
    batch_subgrad_half(Half::Second, u, data, c3, c4)
}

fn augmented(x: &[f64]) -> DVector<f64> {
    DVector::from_iterator(x.len() + 1, x.iter().copied().chain(std::iter::once(1.0)))
}

/// Solves one half problem over `data` (already feature-mapped).
pub fn solve_half(half: Half, data: &Dataset, c_prox: f64, c_hinge: f64, config: &OracleConfig) -> Result<HalfSolution> {
    config.validate()?;
    for (name, c) in [("c_prox", c_prox), ("c_hinge", c_hinge)] {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("{name} must be positive, got {c}")));
        }
    }
    let d = data.dim() + 1;
    let sign = half.hinge_sign();
    let prox = data.class_rows(half.proximal_class());
    let scale = c_prox / prox.len() as f64;
    let mut h = DMatrix::<f64>::identity(d, d);
    for x in prox {
        let z = augmented(x);
        h.ger(scale, &z, &z, 1.0);
    }
    let chol = h
        .clone()
        .cholesky()
        .ok_or_else(|| Error::invalid("proximal matrix is not positive definite"))?;

    let hinge: Vec<DVector<f64>> = data.class_rows(half.hinge_class()).map(augmented).collect();
    let g: Vec<DVector<f64>> = hinge.iter().map(|z| chol.solve(z)).collect();
    let q: Vec<f64> = hinge.iter().zip(&g).map(|(z, gz)| z.dot(gz)).collect();
    let cap = c_hinge / hinge.len() as f64;

    let mut alpha = vec![0.0; hinge.len()];
    let mut u = DVector::<f64>::zeros(d);
    let mut order: Vec<usize> = (0..hinge.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let objective = |u: &DVector<f64>| half_objective(half, u.as_slice(), data, c_prox, c_hinge);
    let dual = |u: &DVector<f64>, alpha: &[f64]| alpha.iter().sum::<f64>() - 0.5 * u.dot(&(&h * u));

    let mut best = (objective(&u)?, u.clone(), dual(&u, &alpha));
    let mut epochs = 0;
    let mut converged = false;
    while epochs < config.max_iter {
        order.shuffle(&mut rng);
        for &j in &order {
            let grad = 1.0 + sign * hinge[j].dot(&u);
            let next = (alpha[j] + grad / q[j]).clamp(0.0, cap);
            let delta = next - alpha[j];
            if delta != 0.0 {
                alpha[j] = next;
                u.axpy(-sign * delta, &g[j], 1.0);
            }
        }
        epochs += 1;
        // Resynchronize u with the multipliers so the dual value is exact.
        u.fill(0.0);
        for (a, gz) in alpha.iter().zip(&g) {
            if *a != 0.0 {
                u.axpy(-sign * a, gz, 1.0);
            }
        }
        let primal = objective(&u)?;
        let lower = dual(&u, &alpha);
        if !(primal.is_finite() && lower.is_finite()) {
            return Err(Error::NonFinite {
                iteration: epochs,
                what: "oracle iterate",
            });
        }
        if primal < best.0 {
            best.0 = primal;
            best.1.copy_from(&u);
        }
        best.2 = best.2.max(lower);
        if best.0 - best.2 <= config.obj_tol * best.0 {
            converged = true;
            break;
        }
    }
    let (objective, u, lower) = best;
    let u = u.as_slice().to_vec();
    let subgrad_norm = norm(&batch_subgrad_half(half, &u, data, c_prox, c_hinge)?);
    Ok(HalfSolution {
        u,
        objective,
        dual: lower,
        gap: objective - lower,
        converged,
        epochs,
        subgrad_norm,
    })
}

/// Minimizes both twin objectives over `data`, optionally through a
/// Gaussian kernel map. Hitting `max_iter` is not an error; the halves come
/// back flagged as unconverged with the best iterate found.
pub fn solve(
    data: &Dataset,
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
    kernel: Option<&KernelSpec>,
    config: &OracleConfig,
) -> Result<OracleSolution> {
    config.validate()?;
    if data.len() > config.max_samples {
        return Err(Error::OracleTooLarge {
            size: data.len(),
            limit: config.max_samples,
        });
    }
    let kernel = kernel.filter(|k| !matches!(k, KernelSpec::Linear));
    let mapped;
    let features = match kernel {
        Some(k) => {
            mapped = k.map_dataset(data)?;
            &mapped
        }
        None => data,
    };
    let (first, second) = rayon::join(
        || solve_half(Half::First, features, c1, c2, config),
        || solve_half(Half::Second, features, c3, c4, config),
    );
    let (first, second) = (first?, second?);
    let n = features.dim();
    let plane = |s: &HalfSolution| Hyperplane::new(s.u[..n].to_vec(), s.u[n]);
    let meta = ModelMeta {
        config_hash: "oracle".into(),
        seed: 0,
        converged: [first.converged, second.converged],
        iterations: first.epochs.max(second.epochs),
    };
    let model = TwinModel::new(data.dim(), plane(&first), plane(&second), kernel.cloned(), meta)?;
    Ok(OracleSolution {
        model,
        f1_star: first.objective,
        f2_star: second.objective,
        halves: [first, second],
    })
}
