//! Generate the two-line "cross planes" data, fit the twin hyperplanes and
//! report training accuracy.

use twinsgd::data::synth::{gen_cross_planes, CROSS_PLANES_NOISE};
use twinsgd::data::{SamplingKind, SamplingPolicy};
use twinsgd::model::evaluate;
use twinsgd::sgtsvm::train;
use twinsgd::TrainConfig;

fn main() -> twinsgd::Result<()> {
    let data = gen_cross_planes(500, CROSS_PLANES_NOISE, 1)?;
    let config = TrainConfig {
        tol: 1e-6,
        policy: SamplingPolicy::new(SamplingKind::IidUniform, 7),
        ..TrainConfig::with_penalty(0.1)
    };
    let fit = train(&data, &config, None)?;
    let m = &fit.model;
    println!("iterations: {} (converged {:?})", fit.iterations, m.meta.converged);
    println!("plane 1: w = {:?}, b = {:.4}", m.half1().w(), m.half1().b());
    println!("plane 2: w = {:?}, b = {:.4}", m.half2().w(), m.half2().b());
    let metrics = evaluate(m, &data)?;
    println!("training accuracy: {:.2}%", 100.0 * metrics.accuracy);
    Ok(())
}
