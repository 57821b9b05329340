//! Stochastic objectives against the batch optimum, written as CSV.
//!
//! `cargo run --example objective_trace > trace.csv`

use twinsgd::data::synth::{gen_cross_planes, CROSS_PLANES_NOISE};
use twinsgd::data::{SamplingKind, SamplingPolicy};
use twinsgd::experiments::{compare, write_compare_csv};
use twinsgd::oracle::OracleConfig;
use twinsgd::TrainConfig;

fn main() -> twinsgd::Result<()> {
    let data = gen_cross_planes(500, CROSS_PLANES_NOISE, 0)?;
    let config = TrainConfig {
        tol: 1e-6,
        policy: SamplingPolicy::new(SamplingKind::LcmBalanced, 0),
        ..TrainConfig::with_penalty(0.1)
    };
    let cmp = compare(&data, &config, None, &OracleConfig::default())?;
    let last = cmp.rows.last().expect("at least one iteration");
    eprintln!(
        "f1* = {:.6}, f2* = {:.6}; after {} iterations f1 = {:.6}, f2 = {:.6}",
        cmp.oracle.f1_star, cmp.oracle.f2_star, last.iteration, last.f1, last.f2
    );
    write_compare_csv(&cmp.rows, std::io::stdout().lock())
}
