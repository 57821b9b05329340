//! Experiment drivers: cross-validation and grid search, objective
//! comparison against the batch solver, decision-boundary stability, and
//! convergence-speed benchmarks.
//!
//! Every trial derives its own seed from `(master seed, trial index)`, so
//! results do not depend on the worker-pool width. `TWINSGD_THREADS` caps the
//! pool; unset, it uses every logical processor.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::data::synth::gen_gaussian_1d;
use crate::data::{kfold_indices, Dataset, Label, SamplingKind, SamplingMask, SamplingPolicy};
use crate::error::{Error, Result};
use crate::kernel::{KernelSpec, DEFAULT_REDUCED_SIZE};
use crate::model::{evaluate, Classifier, TwinModel};
use crate::oracle::{solve, OracleConfig, OracleSolution};
use crate::pegasos::{pegasos_train, PegasosConfig, PegasosModel, PegasosTrainer};
use crate::sgtsvm::{train, Half, TrainConfig, Trainer, Training};

pub use crate::linalg::mean_std;

/// Environment variable capping the worker-pool width.
pub const THREADS_ENV: &str = "TWINSGD_THREADS";

/// splitmix64 of `master` advanced `index + 1` times.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn worker_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` inside a pool of [`worker_threads`] workers.
pub fn in_pool<R: Send>(f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_threads())
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Sgtsvm,
    Pegasos,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sgtsvm => "sgtsvm",
            Algorithm::Pegasos => "pegasos",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sgtsvm" => Ok(Algorithm::Sgtsvm),
            "pegasos" => Ok(Algorithm::Pegasos),
            other => Err(Error::invalid(format!("unknown algorithm '{other}' (expected sgtsvm or pegasos)"))),
        }
    }
}

/// How a learner builds its kernel from a training set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelChoice {
    Linear,
    /// Gaussian kernel over `reduced_size` reference points drawn from the
    /// training set (all of it when smaller).
    ReducedGaussian { mu: f64, reduced_size: usize },
}

impl KernelChoice {
    pub fn gaussian(mu: f64) -> Self {
        KernelChoice::ReducedGaussian {
            mu,
            reduced_size: DEFAULT_REDUCED_SIZE,
        }
    }

    pub fn build(&self, train: &Dataset, seed: u64) -> Result<KernelSpec> {
        match *self {
            KernelChoice::Linear => Ok(KernelSpec::Linear),
            KernelChoice::ReducedGaussian { mu, reduced_size } => {
                KernelSpec::reduced_gaussian(train, mu, reduced_size.min(train.len()), seed)
            }
        }
    }
}

/// A training recipe that can be refit on any split.
#[derive(Debug, Clone)]
pub enum Learner {
    Sgtsvm { config: TrainConfig, kernel: KernelChoice },
    Pegasos(PegasosConfig),
}

/// Output of [`Learner::fit`].
#[derive(Debug, Clone, PartialEq)]
pub enum FittedModel {
    Twin(TwinModel),
    Pegasos(PegasosModel),
}

impl Classifier for FittedModel {
    fn input_dim(&self) -> usize {
        match self {
            FittedModel::Twin(m) => m.input_dim(),
            FittedModel::Pegasos(m) => m.input_dim(),
        }
    }

    fn predict(&self, x: &[f64]) -> Result<Label> {
        match self {
            FittedModel::Twin(m) => m.predict(x),
            FittedModel::Pegasos(m) => m.predict(x),
        }
    }
}

impl FittedModel {
    pub fn iterations(&self) -> u64 {
        match self {
            FittedModel::Twin(m) => m.meta.iterations,
            FittedModel::Pegasos(m) => m.meta.iterations,
        }
    }
}

impl Learner {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Learner::Sgtsvm { .. } => Algorithm::Sgtsvm,
            Learner::Pegasos(_) => Algorithm::Pegasos,
        }
    }

    /// Trains on `train` with the sampling seed (and kernel reference seed)
    /// replaced by `seed`.
    pub fn fit(&self, train: &Dataset, seed: u64) -> Result<FittedModel> {
        match self {
            Learner::Sgtsvm { config, kernel } => {
                let mut config = config.clone();
                config.policy.seed = seed;
                let spec = kernel.build(train, seed)?;
                Ok(FittedModel::Twin(self::train(train, &config, Some(&spec))?.model))
            }
            Learner::Pegasos(config) => {
                let mut config = config.clone();
                config.policy.seed = seed;
                Ok(FittedModel::Pegasos(pegasos_train(train, &config)?.model))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    /// Validation accuracy per fold, as a fraction.
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

/// Stratified k-fold cross-validation. Fold `i` trains with seed
/// `derive_seed(seed, i)`; folds run in parallel.
pub fn cross_validate(data: &Dataset, folds: usize, seed: u64, learner: &Learner) -> Result<CvReport> {
    let parts = kfold_indices(data, folds, seed)?;
    let accuracies = in_pool(|| {
        parts
            .par_iter()
            .enumerate()
            .map(|(i, fold)| {
                let (train, validation) = fold.materialize(data)?;
                let model = learner.fit(&train, derive_seed(seed, i as u64))?;
                Ok(evaluate(&model, &validation)?.accuracy)
            })
            .collect::<Result<Vec<f64>>>()
    })??;
    let (mean, std) = mean_std(&accuracies);
    Ok(CvReport {
        fold_accuracies: accuracies,
        mean,
        std,
    })
}

/// Parameter grid. SGTSVM ties `c1 = c3` and `c2 = c4`; PEGASOS uses `c`
/// alone; `mu` only matters for the Gaussian kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub c: Vec<f64>,
    pub mu: Vec<f64>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            c: (-8..=1).map(|i| 2f64.powi(i)).collect(),
            mu: (-10..=-1).map(|i| 2f64.powi(i)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// `c1 = c3` for SGTSVM, `c` for PEGASOS.
    pub c_a: f64,
    /// `c2 = c4` for SGTSVM; equal to `c_a` for PEGASOS.
    pub c_b: f64,
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridEntry {
    pub point: GridPoint,
    pub report: CvReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub entries: Vec<GridEntry>,
    /// Index of the highest mean accuracy; the earliest wins ties.
    pub best: usize,
}

impl GridReport {
    pub fn best(&self) -> &GridEntry {
        &self.entries[self.best]
    }
}

fn grid_points(base: &Learner, grid: &Grid) -> Vec<GridPoint> {
    let mut points = Vec::new();
    match base {
        Learner::Pegasos(_) => {
            for &c in &grid.c {
                points.push(GridPoint { c_a: c, c_b: c, mu: None });
            }
        }
        Learner::Sgtsvm { kernel, .. } => {
            let mus: Vec<Option<f64>> = match kernel {
                KernelChoice::Linear => vec![None],
                KernelChoice::ReducedGaussian { .. } => grid.mu.iter().copied().map(Some).collect(),
            };
            for mu in mus {
                for &c_a in &grid.c {
                    for &c_b in &grid.c {
                        points.push(GridPoint { c_a, c_b, mu });
                    }
                }
            }
        }
    }
    points
}

fn learner_at(base: &Learner, p: &GridPoint) -> Learner {
    match base {
        Learner::Pegasos(config) => Learner::Pegasos(PegasosConfig {
            c: p.c_a,
            ..config.clone()
        }),
        Learner::Sgtsvm { config, kernel } => {
            let kernel = match (*kernel, p.mu) {
                (KernelChoice::ReducedGaussian { reduced_size, .. }, Some(mu)) => {
                    KernelChoice::ReducedGaussian { mu, reduced_size }
                }
                (k, _) => k,
            };
            Learner::Sgtsvm {
                config: TrainConfig {
                    c1: p.c_a,
                    c3: p.c_a,
                    c2: p.c_b,
                    c4: p.c_b,
                    ..config.clone()
                },
                kernel,
            }
        }
    }
}

/// Cross-validates every grid point with the same folds and seeds.
pub fn grid_search(data: &Dataset, folds: usize, seed: u64, base: &Learner, grid: &Grid) -> Result<GridReport> {
    if grid.c.is_empty() || (grid.mu.is_empty() && matches!(base, Learner::Sgtsvm { kernel: KernelChoice::ReducedGaussian { .. }, .. })) {
        return Err(Error::invalid("parameter grid is empty"));
    }
    let mut entries = Vec::new();
    for point in grid_points(base, grid) {
        let report = cross_validate(data, folds, seed, &learner_at(base, &point))?;
        entries.push(GridEntry { point, report });
    }
    let mut best = 0;
    for (i, e) in entries.iter().enumerate() {
        if e.report.mean > entries[best].report.mean {
            best = i;
        }
    }
    Ok(GridReport { entries, best })
}

/// One row of the objective comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRow {
    pub iteration: u64,
    pub f1: f64,
    pub f2: f64,
    pub f1_star: f64,
    pub f2_star: f64,
}

pub const COMPARE_HEADER: &str = "iteration,f1,f2,f1_star,f2_star";

#[derive(Debug, Clone)]
pub struct Comparison {
    pub rows: Vec<CompareRow>,
    pub oracle: OracleSolution,
    pub training: Training,
}

/// Solves the batch problems, then trains with objective tracing and pairs
/// each traced iteration with the optima.
pub fn compare(
    data: &Dataset,
    config: &TrainConfig,
    kernel: Option<&KernelSpec>,
    oracle: &OracleConfig,
) -> Result<Comparison> {
    let solution = solve(data, config.c1, config.c2, config.c3, config.c4, kernel, oracle)?;
    let config = TrainConfig {
        trace_objectives: true,
        ..config.clone()
    };
    let training = train(data, &config, kernel)?;
    let rows = training
        .trace
        .iter()
        .map(|r| CompareRow {
            iteration: r.t,
            f1: r.f1.expect("objectives traced"),
            f2: r.f2.expect("objectives traced"),
            f1_star: solution.f1_star,
            f2_star: solution.f2_star,
        })
        .collect();
    Ok(Comparison {
        rows,
        oracle: solution,
        training,
    })
}

pub fn write_compare_csv<W: Write>(rows: &[CompareRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::invalid(format!("writing CSV: {e}"));
    w.write_record(COMPARE_HEADER.split(',')).map_err(io)?;
    for r in rows {
        w.write_record([
            r.iteration.to_string(),
            format!("{:e}", r.f1),
            format!("{:e}", r.f2),
            format!("{:e}", r.f1_star),
            format!("{:e}", r.f2_star),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::invalid(format!("writing CSV: {e}")))
}

fn parse_cell<T: FromStr>(record: &csv::StringRecord, i: usize, line: usize) -> Result<T> {
    let cell = record.get(i).ok_or_else(|| Error::Parse {
        line,
        message: format!("missing column {}", i + 1),
    })?;
    cell.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("cannot parse '{cell}'"),
    })
}

pub fn read_compare_csv<R: Read>(reader: R) -> Result<Vec<CompareRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = r
        .headers()
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != COMPARE_HEADER {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header '{COMPARE_HEADER}', found '{header}'"),
        });
    }
    let mut rows = Vec::new();
    for (k, record) in r.records().enumerate() {
        let line = k + 2;
        let record = record.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        if record.len() != 5 {
            return Err(Error::Parse {
                line,
                message: format!("expected 5 columns, found {}", record.len()),
            });
        }
        rows.push(CompareRow {
            iteration: parse_cell(&record, 0, line)?,
            f1: parse_cell(&record, 1, line)?,
            f2: parse_cell(&record, 2, line)?,
            f1_star: parse_cell(&record, 3, line)?,
            f2_star: parse_cell(&record, 4, line)?,
        });
    }
    Ok(rows)
}

/// Location in `[lo, hi]` where a one-dimensional classifier changes its
/// prediction, found by bisection to within `tol`. `None` when both ends get
/// the same label.
pub fn decision_boundary<C: Classifier + ?Sized>(model: &C, lo: f64, hi: f64, tol: f64) -> Result<Option<f64>> {
    if model.input_dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: model.input_dim(),
        });
    }
    if !(lo < hi && tol > 0.0) {
        return Err(Error::invalid("boundary search needs lo < hi and tol > 0"));
    }
    let (mut a, mut b) = (lo, hi);
    let left = model.predict(&[a])?;
    if model.predict(&[b])? == left {
        return Ok(None);
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if model.predict(&[mid])? == left {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// Interval of one feature hidden from the sampler for one class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskInterval {
    pub class: Label,
    pub lo: f64,
    pub hi: f64,
}

impl Default for MaskInterval {
    fn default() -> Self {
        MaskInterval {
            class: Label::Negative,
            lo: -1.0,
            hi: 0.0,
        }
    }
}

impl MaskInterval {
    pub fn to_mask(self) -> SamplingMask {
        SamplingMask::interval(self.class, 0, self.lo, self.hi)
    }
}

/// Settings for the repeated one-dimensional stability experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    pub runs: usize,
    pub train_per_class: usize,
    pub test_per_class: usize,
    /// Class means at `+mean_sep` and `-mean_sep`, unit variance.
    pub mean_sep: f64,
    /// Iteration budget per run.
    pub iterations: u64,
    /// Stopping threshold; the default is small enough that every run uses
    /// its full budget.
    pub tol: f64,
    /// Every SGTSVM penalty and the PEGASOS `c`.
    pub c: f64,
    pub sampling: SamplingKind,
    pub mask: Option<MaskInterval>,
    pub algorithms: Vec<Algorithm>,
    /// Train PEGASOS with an unregularized bias. Without one its boundary is
    /// pinned at the origin.
    pub pegasos_bias: bool,
    pub seed: u64,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            runs: 100,
            train_per_class: 5000,
            test_per_class: 5000,
            mean_sep: 2.0,
            iterations: 200,
            tol: 1e-12,
            c: 0.1,
            sampling: SamplingKind::IidUniform,
            mask: None,
            algorithms: vec![Algorithm::Sgtsvm, Algorithm::Pegasos],
            pegasos_bias: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRun {
    pub run: usize,
    pub algorithm: Algorithm,
    pub boundary: Option<f64>,
    pub accuracy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilitySummary {
    pub algorithm: Algorithm,
    pub runs: usize,
    /// Runs whose decision did not flip inside the search interval.
    pub missing_boundaries: usize,
    pub boundary_mean: f64,
    pub boundary_std: f64,
    pub accuracy_mean: f64,
    pub accuracy_std: f64,
    pub accuracy_min: f64,
    pub accuracy_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Ordered by run, then by algorithm in configuration order.
    pub runs: Vec<StabilityRun>,
    pub summaries: Vec<StabilitySummary>,
}

impl StabilityReport {
    pub fn summary(&self, algorithm: Algorithm) -> Option<&StabilitySummary> {
        self.summaries.iter().find(|s| s.algorithm == algorithm)
    }
}

/// Search interval and tolerance of the boundary bisection.
pub const BOUNDARY_SEARCH: (f64, f64, f64) = (-6.0, 6.0, 1e-6);

impl StabilityConfig {
    pub fn learner(&self, algorithm: Algorithm) -> Learner {
        let policy = SamplingPolicy::new(self.sampling, 0);
        let mask = self.mask.map(MaskInterval::to_mask);
        match algorithm {
            Algorithm::Sgtsvm => Learner::Sgtsvm {
                config: TrainConfig {
                    tol: self.tol,
                    max_iter: self.iterations,
                    policy,
                    mask,
                    ..TrainConfig::with_penalty(self.c)
                },
                kernel: KernelChoice::Linear,
            },
            Algorithm::Pegasos => Learner::Pegasos(PegasosConfig {
                c: self.c,
                tol: self.tol,
                max_iter: self.iterations,
                with_bias: self.pegasos_bias,
                policy,
                mask,
                ..Default::default()
            }),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 || self.train_per_class == 0 || self.test_per_class == 0 {
            return Err(Error::invalid("runs and per-class sizes must be positive"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::invalid("no algorithm selected"));
        }
        if let Some(m) = self.mask {
            if m.lo.is_nan() || m.hi.is_nan() || m.lo > m.hi {
                return Err(Error::invalid(format!("mask interval {}:{} is empty", m.lo, m.hi)));
            }
        }
        Ok(())
    }
}

/// Trains every configured algorithm on fresh N(+-sep, 1) data per run and
/// records the 1-D decision boundary and the test accuracy. Run `i` draws its
/// training set, test set and sampler seeds from `derive_seed(seed, i)`, and
/// all algorithms in a run share those data.
pub fn stability(config: &StabilityConfig) -> Result<StabilityReport> {
    config.validate()?;
    let learners: Vec<Learner> = config.algorithms.iter().map(|&a| config.learner(a)).collect();
    let (lo, hi, tol) = BOUNDARY_SEARCH;
    let per_run = in_pool(|| {
        (0..config.runs)
            .into_par_iter()
            .map(|run| {
                let run_seed = derive_seed(config.seed, run as u64);
                let train = gen_gaussian_1d(config.train_per_class, config.mean_sep, derive_seed(run_seed, 0))?;
                let test = gen_gaussian_1d(config.test_per_class, config.mean_sep, derive_seed(run_seed, 1))?;
                learners
                    .iter()
                    .map(|learner| {
                        let model = learner.fit(&train, derive_seed(run_seed, 2))?;
                        Ok(StabilityRun {
                            run,
                            algorithm: learner.algorithm(),
                            boundary: decision_boundary(&model, lo, hi, tol)?,
                            accuracy: evaluate(&model, &test)?.accuracy,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let runs: Vec<StabilityRun> = per_run.into_iter().flatten().collect();
    let summaries = config
        .algorithms
        .iter()
        .map(|&algorithm| {
            let mine: Vec<&StabilityRun> = runs.iter().filter(|r| r.algorithm == algorithm).collect();
            let boundaries: Vec<f64> = mine.iter().filter_map(|r| r.boundary).collect();
            let accuracies: Vec<f64> = mine.iter().map(|r| r.accuracy).collect();
            let (boundary_mean, boundary_std) = mean_std(&boundaries);
            let (accuracy_mean, accuracy_std) = mean_std(&accuracies);
            StabilitySummary {
                algorithm,
                runs: mine.len(),
                missing_boundaries: mine.len() - boundaries.len(),
                boundary_mean,
                boundary_std,
                accuracy_mean,
                accuracy_std,
                accuracy_min: accuracies.iter().copied().fold(f64::INFINITY, f64::min),
                accuracy_max: accuracies.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    Ok(StabilityReport { runs, summaries })
}

pub const STABILITY_HEADER: &str = "run,algorithm,boundary,accuracy";

/// Per-run CSV; an empty boundary cell means no flip was found.
pub fn write_stability_csv<W: Write>(runs: &[StabilityRun], mut writer: W) -> Result<()> {
    let io = |e: std::io::Error| Error::invalid(format!("writing CSV: {e}"));
    writeln!(writer, "{STABILITY_HEADER}").map_err(io)?;
    for r in runs {
        let boundary = r.boundary.map(|b| format!("{b:e}")).unwrap_or_default();
        writeln!(writer, "{},{},{},{:e}", r.run, r.algorithm, boundary, r.accuracy).map_err(io)?;
    }
    writer.flush().map_err(io)
}

pub fn read_stability_csv<R: Read>(reader: R) -> Result<Vec<StabilityRun>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut runs = Vec::new();
    for (k, record) in r.records().enumerate() {
        let line = k + 2;
        let record = record.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let algorithm: String = parse_cell(&record, 1, line)?;
        let boundary = match record.get(2).map(str::trim) {
            Some("") | None => None,
            Some(_) => Some(parse_cell(&record, 2, line)?),
        };
        runs.push(StabilityRun {
            run: parse_cell(&record, 0, line)?,
            algorithm: algorithm.parse().map_err(|e: Error| Error::Parse {
                line,
                message: e.to_string(),
            })?,
            boundary,
            accuracy: parse_cell(&record, 3, line)?,
        });
    }
    Ok(runs)
}

/// Where the convergence benchmark gets its data.
#[derive(Debug, Clone, Copy)]
pub enum BenchData<'a> {
    /// The same dataset for every trial.
    Fixed(&'a Dataset),
    /// A fresh N(+-sep, 1) dataset per trial.
    Gaussian { per_class: usize, mean_sep: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub tols: Vec<f64>,
    pub trials: usize,
    pub c: f64,
    pub max_iter: u64,
    pub sampling: SamplingKind,
    pub pegasos_bias: bool,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            tols: (1..=6).map(|i| 10f64.powi(-i)).collect(),
            trials: 1,
            c: 0.1,
            max_iter: 1_000_000,
            sampling: SamplingKind::IidUniform,
            pegasos_bias: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub tol: f64,
    pub algorithm: Algorithm,
    pub trial: usize,
    pub iterations: u64,
    pub converged: bool,
    pub seconds: f64,
}

pub const BENCH_HEADER: &str = "tol,algorithm,trial,iterations,converged,seconds";

/// Iterations and wall time to reach each stopping threshold, for both
/// algorithms. Trials run in parallel; timings are indicative only.
pub fn bench(data: BenchData<'_>, config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.tols.is_empty() || config.trials == 0 {
        return Err(Error::invalid("bench needs at least one tol and one trial"));
    }
    let per_trial = in_pool(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let trial_seed = derive_seed(config.seed, trial as u64);
                let generated;
                let data = match data {
                    BenchData::Fixed(d) => d,
                    BenchData::Gaussian { per_class, mean_sep } => {
                        generated = gen_gaussian_1d(per_class, mean_sep, derive_seed(trial_seed, 0))?;
                        &generated
                    }
                };
                let policy = SamplingPolicy::new(config.sampling, derive_seed(trial_seed, 1));
                let mut rows = Vec::with_capacity(2 * config.tols.len());
                for &tol in &config.tols {
                    let sg = TrainConfig {
                        tol,
                        max_iter: config.max_iter,
                        policy,
                        ..TrainConfig::with_penalty(config.c)
                    };
                    let start = Instant::now();
                    let mut trainer = Trainer::new(data, &sg)?;
                    let iterations = trainer.run()?;
                    let seconds = start.elapsed().as_secs_f64();
                    let converged = [Half::First, Half::Second].iter().all(|&h| trainer.half(h).converged);
                    rows.push(BenchRow {
                        tol,
                        algorithm: Algorithm::Sgtsvm,
                        trial,
                        iterations,
                        converged,
                        seconds,
                    });
                    let pg = PegasosConfig {
                        c: config.c,
                        tol,
                        max_iter: config.max_iter,
                        with_bias: config.pegasos_bias,
                        policy,
                        ..Default::default()
                    };
                    let start = Instant::now();
                    let mut trainer = PegasosTrainer::new(data, &pg)?;
                    let iterations = trainer.run()?;
                    let seconds = start.elapsed().as_secs_f64();
                    rows.push(BenchRow {
                        tol,
                        algorithm: Algorithm::Pegasos,
                        trial,
                        iterations,
                        converged: trainer.converged(),
                        seconds,
                    });
                }
                Ok(rows)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut rows: Vec<BenchRow> = per_trial.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        b.tol
            .total_cmp(&a.tol)
            .then(a.algorithm.name().cmp(b.algorithm.name()).reverse())
            .then(a.trial.cmp(&b.trial))
    });
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(rows: &[BenchRow], mut writer: W) -> Result<()> {
    let io = |e: std::io::Error| Error::invalid(format!("writing CSV: {e}"));
    writeln!(writer, "{BENCH_HEADER}").map_err(io)?;
    for r in rows {
        writeln!(
            writer,
            "{:e},{},{},{},{},{:e}",
            r.tol, r.algorithm, r.trial, r.iterations, r.converged, r.seconds
        )
        .map_err(io)?;
    }
    writer.flush().map_err(io)
}

pub fn read_bench_csv<R: Read>(reader: R) -> Result<Vec<BenchRow>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut rows = Vec::new();
    for (k, record) in r.records().enumerate() {
        let line = k + 2;
        let record = record.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let algorithm: String = parse_cell(&record, 1, line)?;
        rows.push(BenchRow {
            tol: parse_cell(&record, 0, line)?,
            algorithm: algorithm.parse()?,
            trial: parse_cell(&record, 2, line)?,
            iterations: parse_cell(&record, 3, line)?,
            converged: parse_cell(&record, 4, line)?,
            seconds: parse_cell(&record, 5, line)?,
        });
    }
    Ok(rows)
}
