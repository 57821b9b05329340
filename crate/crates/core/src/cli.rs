//! The `twinsgd` command line: `gen`, `train`, `predict`, `cv`, `compare`,
//! `stability` and `bench`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 on any toolkit error, 2 on a usage error.
//! Messages go to stderr; reports and CSV written to `-` go to stdout.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data::io::{load, save};
use crate::data::synth::{gen_cross_planes, gen_gaussian_1d, CROSS_PLANES_NOISE};
use crate::data::{Dataset, Label, SamplingKind, SamplingMask, SamplingPolicy};
use crate::error::{Error, Result};
use crate::experiments::{
    bench, compare, cross_validate, grid_search, stability, write_bench_csv, write_compare_csv, write_stability_csv,
    Algorithm, BenchConfig, BenchData, FittedModel, Grid, KernelChoice, Learner, MaskInterval, StabilityConfig,
};
use crate::kernel::{KernelSpec, DEFAULT_REDUCED_SIZE};
use crate::model::{evaluate, Classifier, TwinModel};
use crate::oracle::OracleConfig;
use crate::pegasos::{pegasos_train, PegasosConfig, PegasosModel};
use crate::sgtsvm::{train, write_trace_csv, TrainConfig};

#[derive(Debug, Parser)]
#[command(name = "twinsgd", version, about = "Stochastic gradient twin support vector machines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic dataset.
    Gen(GenArgs),
    /// Train a model and write it to a file.
    Train(TrainArgs),
    /// Predict labels for a dataset with a saved model.
    Predict(PredictArgs),
    /// k-fold cross-validation, optionally over a parameter grid.
    Cv(CvArgs),
    /// Trace training objectives against the batch optimum.
    Compare(CompareArgs),
    /// Repeated 1-D runs recording decision boundaries and accuracies.
    Stability(StabilityArgs),
    /// Iterations and time to reach each stopping threshold.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    CrossPlanes,
    Gaussian,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "cross-planes")]
    kind: GenKind,
    /// Samples per class.
    #[arg(long, default_value_t = 500)]
    m: usize,
    /// Ordinate noise for cross-planes.
    #[arg(long, default_value_t = CROSS_PLANES_NOISE)]
    noise: f64,
    /// Class means at +sep and -sep for the Gaussian generator.
    #[arg(long, default_value_t = 2.0)]
    sep: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; `.csv` writes CSV, anything else LIBSVM.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Sgtsvm,
    Pegasos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    None,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    Iid,
    Epoch,
    Lcm,
}

impl From<SamplingArg> for SamplingKind {
    fn from(s: SamplingArg) -> Self {
        match s {
            SamplingArg::Iid => SamplingKind::IidUniform,
            SamplingArg::Epoch => SamplingKind::EpochPermutation,
            SamplingArg::Lcm => SamplingKind::LcmBalanced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Pos,
    Neg,
}

impl From<ClassArg> for Label {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Pos => Label::Positive,
            ClassArg::Neg => Label::Negative,
        }
    }
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset in LIBSVM or CSV (`.csv`) format.
    #[arg(long)]
    data: PathBuf,
    /// Zero-based label column for CSV input; default is the last column.
    #[arg(long)]
    label_col: Option<usize>,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset> {
        load(&self.data, self.label_col)
    }
}

#[derive(Debug, Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "sgtsvm")]
    algo: AlgoArg,
    #[arg(long, default_value_t = 0.1)]
    c1: f64,
    #[arg(long, default_value_t = 0.1)]
    c2: f64,
    #[arg(long, default_value_t = 0.1)]
    c3: f64,
    #[arg(long, default_value_t = 0.1)]
    c4: f64,
    /// PEGASOS penalty.
    #[arg(long, default_value_t = 0.1)]
    c: f64,
    /// Train PEGASOS with an unregularized bias.
    #[arg(long)]
    bias: bool,
    #[arg(long, value_enum, default_value = "none")]
    kernel: KernelArg,
    #[arg(long, default_value_t = 0.1)]
    mu: f64,
    #[arg(long, default_value_t = DEFAULT_REDUCED_SIZE)]
    reduced_size: usize,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "iid")]
    sampling: SamplingArg,
    /// Hide samples of one class whose feature lies in `lo:hi` from the
    /// sampler.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    mask: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value = "neg")]
    mask_class: ClassArg,
    /// Zero-based feature the mask interval applies to.
    #[arg(long, default_value_t = 0)]
    mask_feature: usize,
}

fn parse_interval(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad interval start '{lo}'"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad interval end '{hi}'"))?;
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(format!("interval {lo}:{hi} is empty"));
    }
    Ok((lo, hi))
}

impl ModelArgs {
    fn policy(&self) -> SamplingPolicy {
        SamplingPolicy::new(self.sampling.into(), self.seed)
    }

    fn mask(&self) -> Option<SamplingMask> {
        self.mask
            .map(|(lo, hi)| SamplingMask::interval(self.mask_class.into(), self.mask_feature, lo, hi))
    }

    fn train_config(&self) -> Result<TrainConfig> {
        let config = TrainConfig {
            c1: self.c1,
            c2: self.c2,
            c3: self.c3,
            c4: self.c4,
            tol: self.tol,
            max_iter: self.max_iter,
            policy: self.policy(),
            mask: self.mask(),
            ..Default::default()
        };
        config.validate()?;
        Ok(config)
    }

    fn pegasos_config(&self) -> Result<PegasosConfig> {
        let config = PegasosConfig {
            c: self.c,
            tol: self.tol,
            max_iter: self.max_iter,
            with_bias: self.bias,
            policy: self.policy(),
            mask: self.mask(),
            ..Default::default()
        };
        config.validate()?;
        Ok(config)
    }

    fn kernel_choice(&self) -> KernelChoice {
        match self.kernel {
            KernelArg::None => KernelChoice::Linear,
            KernelArg::Gaussian => KernelChoice::ReducedGaussian {
                mu: self.mu,
                reduced_size: self.reduced_size,
            },
        }
    }

    fn learner(&self) -> Result<Learner> {
        Ok(match self.algo {
            AlgoArg::Sgtsvm => Learner::Sgtsvm {
                config: self.train_config()?,
                kernel: self.kernel_choice(),
            },
            AlgoArg::Pegasos => {
                if self.kernel != KernelArg::None {
                    return Err(Error::invalid("the PEGASOS baseline is linear only"));
                }
                Learner::Pegasos(self.pegasos_config()?)
            }
        })
    }
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Model output path.
    #[arg(long)]
    out: PathBuf,
    /// Write the per-iteration trace CSV here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Include full objectives in the trace (one pass over the data per
    /// iteration).
    #[arg(long)]
    trace_objectives: bool,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    data: DataArgs,
    /// Predictions CSV (`label,prediction`); `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CvArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    /// Search the parameter grid instead of using the given penalties.
    #[arg(long)]
    grid: bool,
    /// Penalty grid, comma separated; default 2^-8..2^1.
    #[arg(long, value_delimiter = ',')]
    grid_c: Option<Vec<f64>>,
    /// Kernel width grid, comma separated; default 2^-10..2^-1.
    #[arg(long, value_delimiter = ',')]
    grid_mu: Option<Vec<f64>>,
    /// Per-fold accuracy CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Raise the batch solver's sample limit.
    #[arg(long, default_value_t = OracleConfig::default().max_samples)]
    oracle_max_samples: usize,
    /// CSV output; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StabilityAlgo {
    Sgtsvm,
    Pegasos,
    Both,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value_t = 5000)]
    train_per_class: usize,
    #[arg(long, default_value_t = 5000)]
    test_per_class: usize,
    #[arg(long, default_value_t = 2.0)]
    sep: f64,
    /// Iteration budget per run.
    #[arg(long, default_value_t = 200)]
    iterations: u64,
    #[arg(long, default_value_t = StabilityConfig::default().tol)]
    tol: f64,
    #[arg(long, default_value_t = 0.1)]
    c: f64,
    #[arg(long, value_enum, default_value = "both")]
    algo: StabilityAlgo,
    #[arg(long, value_enum, default_value = "iid")]
    sampling: SamplingArg,
    /// Hide `lo:hi` of one class from the sampler.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    mask: Option<(f64, f64)>,
    #[arg(long, value_enum, default_value = "neg")]
    mask_class: ClassArg,
    /// Train PEGASOS without a bias term.
    #[arg(long)]
    pegasos_no_bias: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-run CSV (`run,algorithm,boundary,accuracy`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Dataset to benchmark on; default is fresh N(+-sep, 1) data per trial.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    per_class: usize,
    #[arg(long, default_value_t = 2.0)]
    sep: f64,
    /// Stopping thresholds, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6")]
    tols: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0.1)]
    c: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    #[arg(long, value_enum, default_value = "iid")]
    sampling: SamplingArg,
    #[arg(long)]
    pegasos_no_bias: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Train(a) => cmd_train(a, out),
        Command::Predict(a) => cmd_predict(a, out),
        Command::Cv(a) => cmd_cv(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Stability(a) => cmd_stability(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

fn stdout_io(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Opens `path` for writing, or stdout for `-`.
fn sink<'a>(path: &Path, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(stdout))
    } else {
        let f = File::create(path).map_err(|e| Error::io(path, e))?;
        Ok(Box::new(BufWriter::new(f)))
    }
}

fn check_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() && !p.is_dir() => Err(Error::io(
            path,
            io::Error::new(io::ErrorKind::NotFound, "parent directory does not exist"),
        )),
        _ => Ok(()),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<()> {
    check_parent(&a.out)?;
    let data = match a.kind {
        GenKind::CrossPlanes => gen_cross_planes(a.m, a.noise, a.seed)?,
        GenKind::Gaussian => gen_gaussian_1d(a.m, a.sep, a.seed)?,
    };
    save(&data, &a.out)?;
    writeln!(out, "wrote {} samples ({} features) to {}", data.len(), data.dim(), a.out.display()).map_err(stdout_io)
}

fn cmd_train(a: TrainArgs, out: &mut dyn Write) -> Result<()> {
    check_parent(&a.out)?;
    if let Some(t) = &a.trace {
        check_parent(t)?;
    }
    let learner = a.model.learner()?;
    let data = a.data.load()?;
    let start = Instant::now();
    let (trace, converged, iterations) = match learner {
        Learner::Sgtsvm { mut config, kernel } => {
            config.trace_objectives = a.trace_objectives;
            let spec = kernel.build(&data, a.model.seed)?;
            let fit = train(&data, &config, Some(&spec))?;
            fit.model.save(&a.out)?;
            (fit.trace, fit.model.meta.converged.to_vec(), fit.iterations)
        }
        Learner::Pegasos(mut config) => {
            config.trace_objective = a.trace_objectives;
            let fit = pegasos_train(&data, &config)?;
            fit.model.save(&a.out)?;
            (fit.trace, vec![fit.model.converged()], fit.iterations)
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &a.trace {
        let f = File::create(path).map_err(|e| Error::io(path, e))?;
        write_trace_csv(&trace, BufWriter::new(f))?;
    }
    let flags: Vec<String> = converged.iter().map(bool::to_string).collect();
    writeln!(out, "converged: {}", flags.join(" ")).map_err(stdout_io)?;
    writeln!(out, "iterations: {iterations}").map_err(stdout_io)?;
    writeln!(out, "wall time: {seconds:.3} s").map_err(stdout_io)?;
    writeln!(out, "model: {}", a.out.display()).map_err(stdout_io)
}

/// Loads a twin or PEGASOS model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<FittedModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let pegasos = text.lines().any(|l| l.trim() == "mode pegasos");
    if pegasos {
        Ok(FittedModel::Pegasos(PegasosModel::from_text(&text)?))
    } else {
        Ok(FittedModel::Twin(TwinModel::from_text(&text)?))
    }
}

fn cmd_predict(a: PredictArgs, out: &mut dyn Write) -> Result<()> {
    let model = load_model(&a.model)?;
    let data = a.data.load()?;
    if data.dim() != model.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: model.input_dim(),
            found: data.dim(),
        });
    }
    let metrics = evaluate(&model, &data)?;
    if let Some(path) = &a.out {
        let mut w = sink(path, out)?;
        let io = |e: io::Error| Error::io(path, e);
        writeln!(w, "label,prediction").map_err(io)?;
        for s in data.samples() {
            writeln!(w, "{},{}", s.label, model.predict(s.features)?).map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    if a.out.as_deref().is_some_and(|p| p.as_os_str() == "-") {
        eprintln!("accuracy: {:.2}%", 100.0 * metrics.accuracy);
        Ok(())
    } else {
        writeln!(
            out,
            "accuracy: {:.2}% ({} of {}; tp {} fn {} tn {} fp {})",
            100.0 * metrics.accuracy,
            metrics.true_positive + metrics.true_negative,
            metrics.total(),
            metrics.true_positive,
            metrics.false_negative,
            metrics.true_negative,
            metrics.false_positive
        )
        .map_err(stdout_io)
    }
}

fn cmd_cv(a: CvArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(p) = &a.out {
        check_parent(p)?;
    }
    let learner = a.model.learner()?;
    let data = a.data.load()?;
    let seed = a.model.seed;
    let report = if a.grid {
        let defaults = Grid::default();
        let grid = Grid {
            c: a.grid_c.clone().unwrap_or(defaults.c),
            mu: a.grid_mu.clone().unwrap_or(defaults.mu),
        };
        let result = grid_search(&data, a.folds, seed, &learner, &grid)?;
        for e in &result.entries {
            let mu = e.point.mu.map(|m| format!(" mu={m:e}")).unwrap_or_default();
            writeln!(
                out,
                "grid c1=c3={:e} c2=c4={:e}{mu}: {:.2} +- {:.2}",
                e.point.c_a,
                e.point.c_b,
                100.0 * e.report.mean,
                100.0 * e.report.std
            )
            .map_err(stdout_io)?;
        }
        let best = result.best();
        let mu = best.point.mu.map(|m| format!(" mu={m:e}")).unwrap_or_default();
        writeln!(out, "best: c1=c3={:e} c2=c4={:e}{mu}", best.point.c_a, best.point.c_b).map_err(stdout_io)?;
        best.report.clone()
    } else {
        cross_validate(&data, a.folds, seed, &learner)?
    };
    for (i, acc) in report.fold_accuracies.iter().enumerate() {
        writeln!(out, "fold {}: {:.2}", i + 1, 100.0 * acc).map_err(stdout_io)?;
    }
    writeln!(out, "mean accuracy: {:.2} +- {:.2}", 100.0 * report.mean, 100.0 * report.std).map_err(stdout_io)?;
    if let Some(path) = &a.out {
        let mut w = sink(path, out)?;
        let io = |e: io::Error| Error::io(path, e);
        writeln!(w, "fold,accuracy").map_err(io)?;
        for (i, acc) in report.fold_accuracies.iter().enumerate() {
            writeln!(w, "{},{acc:e}", i + 1).map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    Ok(())
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> Result<()> {
    check_parent(&a.out)?;
    if a.model.algo != AlgoArg::Sgtsvm {
        return Err(Error::invalid("compare traces the twin objectives; use --algo sgtsvm"));
    }
    let config = a.model.train_config()?;
    let data = a.data.load()?;
    let kernel: Option<KernelSpec> = match a.model.kernel_choice() {
        KernelChoice::Linear => None,
        k => Some(k.build(&data, a.model.seed)?),
    };
    let oracle = OracleConfig {
        max_samples: a.oracle_max_samples,
        ..Default::default()
    };
    let comparison = compare(&data, &config, kernel.as_ref(), &oracle)?;
    if !comparison.oracle.converged() {
        eprintln!("warning: batch solver stopped before reaching its tolerance");
    }
    let mut w = sink(&a.out, out)?;
    write_compare_csv(&comparison.rows, &mut w)
}

fn cmd_stability(a: StabilityArgs, out: &mut dyn Write) -> Result<()> {
    if let Some(p) = &a.out {
        check_parent(p)?;
    }
    let algorithms = match a.algo {
        StabilityAlgo::Sgtsvm => vec![Algorithm::Sgtsvm],
        StabilityAlgo::Pegasos => vec![Algorithm::Pegasos],
        StabilityAlgo::Both => vec![Algorithm::Sgtsvm, Algorithm::Pegasos],
    };
    let config = StabilityConfig {
        runs: a.runs,
        train_per_class: a.train_per_class,
        test_per_class: a.test_per_class,
        mean_sep: a.sep,
        iterations: a.iterations,
        tol: a.tol,
        c: a.c,
        sampling: a.sampling.into(),
        mask: a.mask.map(|(lo, hi)| MaskInterval {
            class: a.mask_class.into(),
            lo,
            hi,
        }),
        algorithms,
        pegasos_bias: !a.pegasos_no_bias,
        seed: a.seed,
    };
    let report = stability(&config)?;
    for s in &report.summaries {
        writeln!(
            out,
            "{}: boundary {:.4} +- {:.4}, accuracy {:.2} +- {:.2} (min {:.2}, max {:.2}), {} runs, {} without boundary",
            s.algorithm,
            s.boundary_mean,
            s.boundary_std,
            100.0 * s.accuracy_mean,
            100.0 * s.accuracy_std,
            100.0 * s.accuracy_min,
            100.0 * s.accuracy_max,
            s.runs,
            s.missing_boundaries
        )
        .map_err(stdout_io)?;
    }
    if let Some(path) = &a.out {
        let w = sink(path, out)?;
        write_stability_csv(&report.runs, w)?;
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<()> {
    check_parent(&a.out)?;
    let config = BenchConfig {
        tols: a.tols.clone(),
        trials: a.trials,
        c: a.c,
        max_iter: a.max_iter,
        sampling: a.sampling.into(),
        pegasos_bias: !a.pegasos_no_bias,
        seed: a.seed,
    };
    for &tol in &config.tols {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::invalid(format!("tol must be positive, got {tol}")));
        }
    }
    let loaded;
    let source = match &a.data {
        Some(path) => {
            loaded = load(path, a.label_col)?;
            BenchData::Fixed(&loaded)
        }
        None => BenchData::Gaussian {
            per_class: a.per_class,
            mean_sep: a.sep,
        },
    };
    let rows = bench(source, &config)?;
    let w = sink(&a.out, out)?;
    write_bench_csv(&rows, w)
}
