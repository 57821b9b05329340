//! Stochastic gradient twin support vector machines.
//!
//! The crate trains a pair of nonparallel proximal hyperplanes by drawing one
//! positive and one negative sample per iteration and taking a subgradient
//! step on each of the two unconstrained twin objectives. Around that trainer
//! it provides:
//!
//! - [`data`]: datasets, LIBSVM/CSV loaders, synthetic generators, sampling
//!   schedules, stratified splits and folds,
//! - [`kernel`]: the Gaussian kernel and the reduced-kernel feature map,
//! - [`sgtsvm`]: the stochastic trainer itself,
//! - [`pegasos`]: the PEGASOS baseline,
//! - [`oracle`]: an exact full-batch solver for small instances,
//! - [`model`]: the twin-hyperplane model, its decision rule and file format,
//! - [`experiments`]: cross-validation, objective comparison, stability and
//!   convergence-speed drivers,
//! - [`cli`]: the `twinsgd` command-line front end.
//!
//! ```no_run
//! use twinsgd::data::synth::gen_cross_planes;
//! use twinsgd::sgtsvm::{train, TrainConfig};
//!
//! let data = gen_cross_planes(500, 0.05, 7).unwrap();
//! let fit = train(&data, &TrainConfig::default(), None).unwrap();
//! println!("{:?}", fit.model.predict(&[0.5, 0.5]).unwrap());
//! ```

pub mod cli;
pub mod data;
mod error;
pub mod experiments;
pub mod kernel;
mod linalg;
pub mod model;
pub mod oracle;
pub mod pegasos;
pub mod sgtsvm;

pub use data::{Dataset, Label, Sample};
pub use error::{Error, Result};
pub use kernel::KernelSpec;
pub use model::TwinModel;
pub use sgtsvm::{TrainConfig, TraceRecord};
