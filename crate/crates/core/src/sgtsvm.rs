//! Stochastic subgradient training of the two twin problems.
//!
//! With augmented iterate `u = (w, b)` and augmented samples `z = (x, 1)`,
//! the first half minimizes
//!
//! ```text
//! f1(u) = 1/2 ||u||^2 + c1/(2 m1) sum_i (u^T z_i)^2 + c2/m2 sum_j (1 + u^T zhat_j)_+
//! ```
//!
//! over positives `z_i` and negatives `zhat_j`; the second half mirrors it
//! with the classes exchanged and the hinge written as `(1 - u^T z_i)_+`.
//! Each iteration draws one positive and one negative sample, takes a
//! subgradient step on the single-pair objective of each half with step
//! `eta_t` (default `1/t`), and freezes a half once
//! `||w_{t+1} - w_t|| + |b_{t+1} - b_t| < tol`.

use std::fmt::Write as _;


use crate::data::{Dataset, Label, PairSampler, SamplingMask, SamplingPolicy};
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::linalg::{all_finite, dot};
use crate::model::{short_digest, Hyperplane, ModelMeta, TwinModel};

/// Which of the two twin problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    /// Plane proximal to the positives, hinge on the negatives.
    First,
    /// Plane proximal to the negatives, hinge on the positives.
    Second,
}

impl Half {
    pub fn proximal_class(self) -> Label {
        match self {
            Half::First => Label::Positive,
            Half::Second => Label::Negative,
        }
    }

    pub fn hinge_class(self) -> Label {
        self.proximal_class().flipped()
    }

    /// `+1` for `(1 + u^T z)_+`, `-1` for `(1 - u^T z)_+`.
    pub fn hinge_sign(self) -> f64 {
        match self {
            Half::First => 1.0,
            Half::Second => -1.0,
        }
    }
}

/// Step size as a function of the iteration counter `t >= 1`.
#[derive(Debug, Clone, Copy, Default)]
pub enum StepSchedule {
    /// `eta_t = 1 / t`.
    #[default]
    InverseT,
    Custom(fn(u64) -> f64),
}

impl StepSchedule {
    #[inline]
    pub fn eta(self, t: u64) -> f64 {
        match self {
            StepSchedule::InverseT => 1.0 / t as f64,
            StepSchedule::Custom(f) => f(t),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            StepSchedule::InverseT => "1/t",
            StepSchedule::Custom(_) => "custom",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub tol: f64,
    pub max_iter: u64,
    pub policy: SamplingPolicy,
    pub step: StepSchedule,
    /// Evaluate both full objectives after every iteration. Costs a pass
    /// over the dataset per iteration; meant for small convergence studies.
    pub trace_objectives: bool,
    pub mask: Option<SamplingMask>,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c1: 0.1,
            c2: 0.1,
            c3: 0.1,
            c4: 0.1,
            tol: 1e-3,
            max_iter: 1_000_000,
            policy: SamplingPolicy::default(),
            step: StepSchedule::default(),
            trace_objectives: false,
            mask: None,
        }
    }
}

impl TrainConfig {
    /// All four penalties set to `c`.
    pub fn with_penalty(c: f64) -> Self {
        TrainConfig {
            c1: c,
            c2: c,
            c3: c,
            c4: c,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, c) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3), ("c4", self.c4)] {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::invalid(format!("{name} must be positive, got {c}")));
            }
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be at least 1"));
        }
        Ok(())
    }

    fn penalties(&self, half: Half) -> (f64, f64) {
        match half {
            Half::First => (self.c1, self.c2),
            Half::Second => (self.c3, self.c4),
        }
    }
}

/// Short stable digest of everything that determines a training run.
pub fn config_hash(config: &TrainConfig, kernel: Option<&KernelSpec>) -> String {
    let mut s = format!(
        "sgtsvm c={:e},{:e},{:e},{:e} tol={:e} max_iter={} policy={}:{} step={}",
        config.c1,
        config.c2,
        config.c3,
        config.c4,
        config.tol,
        config.max_iter,
        config.policy.kind.name(),
        config.policy.seed,
        config.step.describe()
    );
    if let Some(m) = &config.mask {
        let _ = write!(s, " mask={}", m.description());
    }
    if let Some(KernelSpec::Gaussian(g)) = kernel {
        let _ = write!(s, " gaussian mu={:e} r={}", g.mu(), g.reference_count());
        for p in g.reference_points() {
            for v in p {
                let _ = write!(s, ",{v:e}");
            }
        }
    }
    short_digest(&s)
}

/// Iterate of one half.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfState {
    pub w: Vec<f64>,
    pub b: f64,
    pub t: u64,
    pub converged: bool,
}

impl HalfState {
    /// All-zero start at `t = 1`.
    pub fn zeros(dim: usize) -> Self {
        HalfState {
            w: vec![0.0; dim],
            b: 0.0,
            t: 1,
            converged: false,
        }
    }

    pub fn augmented(&self) -> Vec<f64> {
        let mut u = self.w.clone();
        u.push(self.b);
        u
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub w: Vec<f64>,
    pub b: f64,
}

/// Proximal coefficient `a` and hinge coefficient `h` of a single-pair
/// subgradient: `grad_w = w + a * prox + h * hinge`, `grad_b = b + a + h`.
#[inline]
fn pair_coefficients(w: &[f64], b: f64, prox: &[f64], hinge: &[f64], sign: f64, c_prox: f64, c_hinge: f64) -> (f64, f64) {
    let a = c_prox * (dot(w, prox) + b);
    let margin = 1.0 + sign * (dot(w, hinge) + b);
    let h = if margin > 0.0 { sign * c_hinge } else { 0.0 };
    (a, h)
}

#[inline]
fn grad_component(w_j: f64, a: f64, prox_j: f64, h: f64, hinge_j: f64) -> f64 {
    w_j + a * prox_j + h * hinge_j
}

fn pair_subgrad(half: Half, state: &HalfState, x_pos: &[f64], x_neg: &[f64], c_prox: f64, c_hinge: f64) -> Result<Gradient> {
    let n = state.w.len();
    for x in [x_pos, x_neg] {
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
    }
    if !(all_finite(&state.w) && state.b.is_finite() && all_finite(x_pos) && all_finite(x_neg)) {
        return Err(Error::NonFinite {
            iteration: state.t,
            what: "subgradient input",
        });
    }
    let (prox, hinge) = match half {
        Half::First => (x_pos, x_neg),
        Half::Second => (x_neg, x_pos),
    };
    let (a, h) = pair_coefficients(&state.w, state.b, prox, hinge, half.hinge_sign(), c_prox, c_hinge);
    let w = (0..n).map(|j| grad_component(state.w[j], a, prox[j], h, hinge[j])).collect();
    Ok(Gradient { w, b: state.b + a + h })
}

/// Subgradient of the single-pair objective of the first half at `state`:
/// `w + c1 (w^T x + b) x + c2 xhat [1 + w^T xhat + b > 0]`, and the matching
/// bias component.
pub fn subgrad_f1(state: &HalfState, x_pos: &[f64], x_neg: &[f64], c1: f64, c2: f64) -> Result<Gradient> {
    pair_subgrad(Half::First, state, x_pos, x_neg, c1, c2)
}

/// Subgradient for the second half:
/// `w + c3 (w^T xhat + b) xhat - c4 x [1 - w^T x - b > 0]`.
pub fn subgrad_f2(state: &HalfState, x_pos: &[f64], x_neg: &[f64], c3: f64, c4: f64) -> Result<Gradient> {
    pair_subgrad(Half::Second, state, x_pos, x_neg, c3, c4)
}

/// `w <- w - eta grad_w`, `b <- b - eta grad_b`, `t <- t + 1`.
pub fn step(state: &HalfState, grad: &Gradient, eta: f64) -> Result<HalfState> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::invalid(format!("step size must be positive, got {eta}")));
    }
    if state.converged {
        return Err(Error::invalid("cannot step a converged half"));
    }
    if grad.w.len() != state.w.len() {
        return Err(Error::DimensionMismatch {
            expected: state.w.len(),
            found: grad.w.len(),
        });
    }
    if !(all_finite(&grad.w) && grad.b.is_finite()) {
        return Err(Error::NonFinite {
            iteration: state.t,
            what: "gradient",
        });
    }
    Ok(HalfState {
        w: state.w.iter().zip(&grad.w).map(|(w, g)| w - eta * g).collect(),
        b: state.b - eta * grad.b,
        t: state.t + 1,
        converged: false,
    })
}

/// Full objective of one half at the augmented point `u = (w, b)`.
pub fn half_objective(half: Half, u: &[f64], data: &Dataset, c_prox: f64, c_hinge: f64) -> Result<f64> {
    let n = data.dim();
    if u.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: u.len(),
        });
    }
    let (w, b) = u.split_at(n);
    let b = b[0];
    let sign = half.hinge_sign();
    let prox = data.class_rows(half.proximal_class());
    let hinge = data.class_rows(half.hinge_class());
    let (m_prox, m_hinge) = (prox.len() as f64, hinge.len() as f64);
    let prox_sum: f64 = prox.map(|x| (dot(w, x) + b).powi(2)).sum();
    let hinge_sum: f64 = hinge.map(|x| (1.0 + sign * (dot(w, x) + b)).max(0.0)).sum();
    Ok(0.5 * dot(u, u) + c_prox / (2.0 * m_prox) * prox_sum + c_hinge / m_hinge * hinge_sum)
}

/// `f1(u)` over the whole dataset.
pub fn objective_f1(u: &[f64], data: &Dataset, c1: f64, c2: f64) -> Result<f64> {
    half_objective(Half::First, u, data, c1, c2)
}

/// `f2(u) = 1/2 ||u||^2 + c3/(2 m2) ||Z2 u||^2 + c4/m1 sum_i (1 - u^T z_i)_+`.
pub fn objective_f2(u: &[f64], data: &Dataset, c3: f64, c4: f64) -> Result<f64> {
    half_objective(Half::Second, u, data, c3, c4)
}

/// Single-pair objective `f_t(u)` for the pair `(x_pos, x_neg)`.
pub fn pair_objective(half: Half, u: &[f64], x_pos: &[f64], x_neg: &[f64], c_prox: f64, c_hinge: f64) -> f64 {
    let n = u.len() - 1;
    let (w, b) = (&u[..n], u[n]);
    let (prox, hinge) = match half {
        Half::First => (x_pos, x_neg),
        Half::Second => (x_neg, x_pos),
    };
    let p = dot(w, prox) + b;
    let h = (1.0 + half.hinge_sign() * (dot(w, hinge) + b)).max(0.0);
    0.5 * dot(u, u) + 0.5 * c_prox * p * p + c_hinge * h
}

/// One row of the training trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub t: u64,
    /// `||w_{t+1} - w_t|| + |b_{t+1} - b_t|` for each half (zero once frozen).
    pub delta1: f64,
    pub delta2: f64,
    pub f1: Option<f64>,
    pub f2: Option<f64>,
}

pub const TRACE_HEADER: &str = "t,delta1,delta2,f1,f2";

/// Writes trace rows as `t,delta1,delta2,f1,f2`; missing objectives are empty.
pub fn write_trace_csv<W: std::io::Write>(trace: &[TraceRecord], writer: W) -> Result<()> {
    use std::io::Write;
    let mut w = std::io::BufWriter::new(writer);
    let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
    let io = |e| Error::io("<trace>", e);
    writeln!(w, "{TRACE_HEADER}").map_err(io)?;
    for r in trace {
        writeln!(w, "{},{:e},{:e},{},{}", r.t, r.delta1, r.delta2, opt(r.f1), opt(r.f2)).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Parses what [`write_trace_csv`] emits.
pub fn read_trace_csv<R: std::io::Read>(reader: R) -> Result<Vec<TraceRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let field = |k: usize| rec.get(k).ok_or_else(|| Error::Parse { line, message: "missing column".into() });
        let real = |k: usize| -> Result<f64> {
            field(k)?.parse().map_err(|_| Error::Parse { line, message: format!("bad number in column {k}") })
        };
        let opt = |k: usize| -> Result<Option<f64>> {
            let s = field(k)?;
            if s.is_empty() {
                Ok(None)
            } else {
                real(k).map(Some)
            }
        };
        out.push(TraceRecord {
            t: field(0)?.parse().map_err(|_| Error::Parse { line, message: "bad iteration".into() })?,
            delta1: real(1)?,
            delta2: real(2)?,
            f1: opt(3)?,
            f2: opt(4)?,
        });
    }
    Ok(out)
}

/// Empirical counterparts of the bound constants: the largest iterate norm
/// `||u_t||`, the largest subgradient norm, and the largest sample norm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    pub max_iterate_norm: [f64; 2],
    pub max_subgrad_norm: [f64; 2],
    pub max_sample_norm: f64,
}

/// Stateful trainer over an already feature-mapped dataset. One call to
/// [`Trainer::iterate`] performs one iteration without heap allocation.
#[derive(Debug, Clone)]
pub struct Trainer<'a> {
    data: &'a Dataset,
    sampler: PairSampler,
    penalties: [(f64, f64); 2],
    tol: f64,
    max_iter: u64,
    step: StepSchedule,
    halves: [HalfState; 2],
    t: u64,
    diagnostics: Diagnostics,
}

impl<'a> Trainer<'a> {
    pub fn new(data: &'a Dataset, config: &TrainConfig) -> Result<Self> {
        let sampler = PairSampler::new(config.policy, data, config.mask.as_ref())?;
        Self::with_sampler(data, sampler, config)
    }

    /// Uses an externally built sampler, e.g. one whose mask was evaluated
    /// on raw features before a kernel map.
    pub fn with_sampler(data: &'a Dataset, sampler: PairSampler, config: &TrainConfig) -> Result<Self> {
        config.validate()?;
        Ok(Trainer {
            data,
            sampler,
            penalties: [config.penalties(Half::First), config.penalties(Half::Second)],
            tol: config.tol,
            max_iter: config.max_iter,
            step: config.step,
            halves: [HalfState::zeros(data.dim()), HalfState::zeros(data.dim())],
            t: 1,
            diagnostics: Diagnostics {
                max_sample_norm: data.max_norm(),
                ..Default::default()
            },
        })
    }

    /// Iteration counter of the next update.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn half(&self, half: Half) -> &HalfState {
        &self.halves[half as usize]
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn is_done(&self) -> bool {
        (self.halves[0].converged && self.halves[1].converged) || self.t > self.max_iter
    }

    /// Draws a pair and updates every half that has not yet converged.
    pub fn iterate(&mut self) -> Result<(f64, f64)> {
        let t = self.t;
        let eta = self.step.eta(t);
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::invalid(format!("step schedule gave eta = {eta} at t = {t}")));
        }
        let (i, j) = self.sampler.next_pair();
        let x_pos = self.data.positive(i);
        let x_neg = self.data.negative(j);
        let mut deltas = [0.0; 2];
        for (k, half) in [Half::First, Half::Second].into_iter().enumerate() {
            let state = &mut self.halves[k];
            if state.converged {
                continue;
            }
            let (prox, hinge) = match half {
                Half::First => (x_pos, x_neg),
                Half::Second => (x_neg, x_pos),
            };
            let (c_prox, c_hinge) = self.penalties[k];
            let (a, h) = pair_coefficients(&state.w, state.b, prox, hinge, half.hinge_sign(), c_prox, c_hinge);
            let mut dw2 = 0.0;
            let mut g2 = 0.0;
            let mut u2 = 0.0;
            for ((w, &p), &q) in state.w.iter_mut().zip(prox).zip(hinge) {
                let g = grad_component(*w, a, p, h, q);
                let next = *w - eta * g;
                let d = next - *w;
                dw2 += d * d;
                g2 += g * g;
                u2 += next * next;
                *w = next;
            }
            let gb = state.b + a + h;
            let next_b = state.b - eta * gb;
            let delta = dw2.sqrt() + (next_b - state.b).abs();
            if !(delta.is_finite() && next_b.is_finite() && u2.is_finite()) {
                return Err(Error::NonFinite {
                    iteration: t,
                    what: "iterate",
                });
            }
            state.b = next_b;
            state.t = t + 1;
            u2 += next_b * next_b;
            g2 += gb * gb;
            let diag = &mut self.diagnostics;
            diag.max_iterate_norm[k] = diag.max_iterate_norm[k].max(u2.sqrt());
            diag.max_subgrad_norm[k] = diag.max_subgrad_norm[k].max(g2.sqrt());
            if delta < self.tol {
                state.converged = true;
            }
            deltas[k] = delta;
        }
        self.t += 1;
        Ok((deltas[0], deltas[1]))
    }

    /// Iterates until both halves converge or the cap is reached; returns the
    /// number of iterations performed by this call.
    pub fn run(&mut self) -> Result<u64> {
        let start = self.t;
        while !self.is_done() {
            self.iterate()?;
        }
        Ok(self.t - start)
    }

    /// Full objectives of both halves at the current iterates.
    pub fn objectives(&self) -> (f64, f64) {
        let f = |k: usize, half: Half| {
            let (c_prox, c_hinge) = self.penalties[k];
            half_objective(half, &self.halves[k].augmented(), self.data, c_prox, c_hinge)
                .expect("iterate dimension matches data")
        };
        (f(0, Half::First), f(1, Half::Second))
    }

    pub fn into_halves(self) -> [HalfState; 2] {
        self.halves
    }
}

/// Result of [`train`].
#[derive(Debug, Clone)]
pub struct Training {
    pub model: TwinModel,
    /// One record per iteration.
    pub trace: Vec<TraceRecord>,
    pub diagnostics: Diagnostics,
    pub iterations: u64,
}

/// Runs the paired stochastic subgradient method from `u = 0`.
///
/// With a Gaussian `kernel`, samples are mapped through the reduced-kernel
/// feature map first and the linear method runs on the mapped features.
/// Hitting `max_iter` is not an error: the model comes back with its
/// `meta.converged` flags cleared for the unfinished halves.
pub fn train(data: &Dataset, config: &TrainConfig, kernel: Option<&KernelSpec>) -> Result<Training> {
    config.validate()?;
    let kernel = kernel.filter(|k| !matches!(k, KernelSpec::Linear));
    let sampler = PairSampler::new(config.policy, data, config.mask.as_ref())?;
    let mapped;
    let features = match kernel {
        Some(k) => {
            mapped = k.map_dataset(data)?;
            &mapped
        }
        None => data,
    };
    let mut trainer = Trainer::with_sampler(features, sampler, config)?;
    let mut trace = Vec::new();
    while !trainer.is_done() {
        let t = trainer.t();
        let (delta1, delta2) = trainer.iterate()?;
        let (f1, f2) = if config.trace_objectives {
            let (a, b) = trainer.objectives();
            (Some(a), Some(b))
        } else {
            (None, None)
        };
        trace.push(TraceRecord {
            t,
            delta1,
            delta2,
            f1,
            f2,
        });
    }
    let iterations = trainer.t() - 1;
    let diagnostics = *trainer.diagnostics();
    let [h1, h2] = trainer.into_halves();
    let meta = ModelMeta {
        config_hash: config_hash(config, kernel),
        seed: config.policy.seed,
        converged: [h1.converged, h2.converged],
        iterations,
    };
    let model = TwinModel::new(
        data.dim(),
        Hyperplane::new(h1.w, h1.b),
        Hyperplane::new(h2.w, h2.b),
        kernel.cloned(),
        meta,
    )?;
    Ok(Training {
        model,
        trace,
        diagnostics,
        iterations,
    })
}
