//! PEGASOS baseline: stochastic subgradient descent on
//! `1/2 ||w||^2 + c/m sum_i (1 - y_i w^T x_i)_+` with step `1/t`, one pooled
//! sample per iteration, last iterate as output.
//!
//! The optional bias variant replaces the margin with `y (w^T x + b)` and
//! leaves `b` unregularized.

use std::fmt::Write as _;
use std::path::Path;

use crate::data::sampling::PooledSampler;
use crate::data::{Dataset, Label, SamplingMask, SamplingPolicy};
use crate::error::{Error, Result};
use crate::linalg::{all_finite, dot};
use crate::model::{fmt_real, fmt_reals, read_meta, seal, short_digest, unseal, write_meta, Classifier, ModelMeta};
use crate::sgtsvm::{StepSchedule, TraceRecord};

#[derive(Debug, Clone)]
pub struct PegasosConfig {
    pub c: f64,
    pub tol: f64,
    pub max_iter: u64,
    pub with_bias: bool,
    pub policy: SamplingPolicy,
    pub step: StepSchedule,
    pub trace_objective: bool,
    pub mask: Option<SamplingMask>,
}

impl Default for PegasosConfig {
    fn default() -> Self {
        PegasosConfig {
            c: 0.1,
            tol: 1e-3,
            max_iter: 1_000_000,
            with_bias: false,
            policy: SamplingPolicy::default(),
            step: StepSchedule::default(),
            trace_objective: false,
            mask: None,
        }
    }
}

impl PegasosConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::invalid(format!("c must be positive, got {}", self.c)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PegasosModel {
    w: Vec<f64>,
    b: f64,
    with_bias: bool,
    pub meta: ModelMeta,
}

impl PegasosModel {
    pub fn new(w: Vec<f64>, b: f64, with_bias: bool, meta: ModelMeta) -> Result<Self> {
        if !with_bias && b != 0.0 {
            return Err(Error::invalid("a bias-free PEGASOS model must have b = 0"));
        }
        Ok(PegasosModel { w, b, with_bias, meta })
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn with_bias(&self) -> bool {
        self.with_bias
    }

    pub fn converged(&self) -> bool {
        self.meta.converged[0]
    }

    pub fn decision_value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.w.len(),
                found: x.len(),
            });
        }
        Ok(dot(&self.w, x) + self.b)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }

    pub fn to_text(&self) -> String {
        let mut body = String::new();
        let _ = writeln!(body, "mode pegasos");
        let _ = writeln!(body, "n {}", self.w.len());
        let _ = writeln!(body, "with_bias {}", self.with_bias);
        let _ = writeln!(body, "w {}", fmt_reals(&self.w));
        let _ = writeln!(body, "b {}", fmt_real(self.b));
        write_meta(&mut body, &self.meta);
        seal(&body)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let f = unseal(text)?;
        if f.get("mode")? != "pegasos" {
            return Err(Error::Model("not a PEGASOS model file".into()));
        }
        let n: usize = f.parse("n")?;
        let w = f.reals("w")?;
        if w.len() != n {
            return Err(Error::Model(format!("w has {} values, expected {n}", w.len())));
        }
        Self::new(w, f.real("b")?, f.parse("with_bias")?, read_meta(&f)?)
    }
}

/// `sign(w^T x + b)` with `sign(0) = +1`.
pub fn pegasos_predict(model: &PegasosModel, x: &[f64]) -> Result<Label> {
    Ok(if model.decision_value(x)? >= 0.0 {
        Label::Positive
    } else {
        Label::Negative
    })
}

impl Classifier for PegasosModel {
    fn input_dim(&self) -> usize {
        self.w.len()
    }

    fn predict(&self, x: &[f64]) -> Result<Label> {
        pegasos_predict(self, x)
    }
}

fn check_inputs(w: &[f64], x: &[f64]) -> Result<()> {
    if w.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            found: x.len(),
        });
    }
    if !(all_finite(w) && all_finite(x)) {
        return Err(Error::NonFinite {
            iteration: 0,
            what: "subgradient input",
        });
    }
    Ok(())
}

/// `w - c y x [1 - y w^T x > 0]`.
pub fn pegasos_subgrad(w: &[f64], x: &[f64], y: Label, c: f64) -> Result<Vec<f64>> {
    Ok(pegasos_subgrad_biased(w, 0.0, x, y, c)?.0)
}

/// Subgradient of `1/2 ||w||^2 + c (1 - y (w^T x + b))_+` in `(w, b)`.
pub fn pegasos_subgrad_biased(w: &[f64], b: f64, x: &[f64], y: Label, c: f64) -> Result<(Vec<f64>, f64)> {
    check_inputs(w, x)?;
    let coef = hinge_coefficient(w, b, x, y.sign(), c);
    Ok((w.iter().zip(x).map(|(wj, xj)| wj + coef * xj).collect(), coef))
}

/// `-c y` when the margin is violated, zero otherwise.
#[inline]
fn hinge_coefficient(w: &[f64], b: f64, x: &[f64], y: f64, c: f64) -> f64 {
    if 1.0 - y * (dot(w, x) + b) > 0.0 {
        -c * y
    } else {
        0.0
    }
}

/// Full objective `1/2 ||w||^2 + c/m sum_i (1 - y_i (w^T x_i + b))_+`.
pub fn pegasos_objective(w: &[f64], b: f64, data: &Dataset, c: f64) -> Result<f64> {
    if w.len() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            found: w.len(),
        });
    }
    let hinge: f64 = data
        .samples()
        .map(|s| (1.0 - s.label.sign() * (dot(w, s.features) + b)).max(0.0))
        .sum();
    Ok(0.5 * dot(w, w) + c / data.len() as f64 * hinge)
}

#[derive(Debug, Clone)]
pub struct PegasosTraining {
    pub model: PegasosModel,
    /// `delta1` holds `||w_{t+1} - w_t|| (+ |b_{t+1} - b_t|)`, `f1` the
    /// objective when traced; `delta2` is zero and `f2` empty.
    pub trace: Vec<TraceRecord>,
    pub iterations: u64,
}

/// Stateful PEGASOS iteration, allocation-free per step.
#[derive(Debug, Clone)]
pub struct PegasosTrainer<'a> {
    data: &'a Dataset,
    sampler: PooledSampler,
    config: PegasosConfig,
    w: Vec<f64>,
    b: f64,
    t: u64,
    converged: bool,
}

impl<'a> PegasosTrainer<'a> {
    pub fn new(data: &'a Dataset, config: &PegasosConfig) -> Result<Self> {
        config.validate()?;
        Ok(PegasosTrainer {
            data,
            sampler: PooledSampler::new(config.policy, data, config.mask.as_ref())?,
            config: config.clone(),
            w: vec![0.0; data.dim()],
            b: 0.0,
            t: 1,
            converged: false,
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn is_done(&self) -> bool {
        self.converged || self.t > self.config.max_iter
    }

    pub fn iterate(&mut self) -> Result<f64> {
        let t = self.t;
        let eta = self.config.step.eta(t);
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::invalid(format!("step schedule gave eta = {eta} at t = {t}")));
        }
        let sample = self.data.pooled(self.sampler.next_index());
        let coef = hinge_coefficient(&self.w, self.b, sample.features, sample.label.sign(), self.config.c);
        let mut dw2 = 0.0;
        for (w, &x) in self.w.iter_mut().zip(sample.features) {
            let g = *w + coef * x;
            let next = *w - eta * g;
            let d = next - *w;
            dw2 += d * d;
            *w = next;
        }
        let mut delta = dw2.sqrt();
        if self.config.with_bias {
            let next_b = self.b - eta * coef;
            delta += (next_b - self.b).abs();
            self.b = next_b;
        }
        if !(delta.is_finite() && self.b.is_finite()) {
            return Err(Error::NonFinite {
                iteration: t,
                what: "iterate",
            });
        }
        if delta < self.config.tol {
            self.converged = true;
        }
        self.t += 1;
        Ok(delta)
    }

    pub fn run(&mut self) -> Result<u64> {
        let start = self.t;
        while !self.is_done() {
            self.iterate()?;
        }
        Ok(self.t - start)
    }

    pub fn into_model(self) -> PegasosModel {
        let meta = ModelMeta {
            config_hash: String::new(),
            seed: self.config.policy.seed,
            converged: [self.converged, self.converged],
            iterations: self.t - 1,
        };
        PegasosModel {
            w: self.w,
            b: self.b,
            with_bias: self.config.with_bias,
            meta,
        }
    }
}

pub fn pegasos_train(data: &Dataset, config: &PegasosConfig) -> Result<PegasosTraining> {
    let mut trainer = PegasosTrainer::new(data, config)?;
    let mut trace = Vec::new();
    while !trainer.is_done() {
        let t = trainer.t();
        let delta = trainer.iterate()?;
        let f1 = if config.trace_objective {
            Some(pegasos_objective(trainer.w(), trainer.b(), data, config.c)?)
        } else {
            None
        };
        trace.push(TraceRecord {
            t,
            delta1: delta,
            delta2: 0.0,
            f1,
            f2: None,
        });
    }
    let iterations = trainer.t() - 1;
    let mut model = trainer.into_model();
    model.meta.config_hash = short_digest(&format!(
        "pegasos c={:e} tol={:e} max_iter={} bias={} policy={}:{}",
        config.c,
        config.tol,
        config.max_iter,
        config.with_bias,
        config.policy.kind.name(),
        config.policy.seed
    ));
    Ok(PegasosTraining {
        model,
        trace,
        iterations,
    })
}
