//! Nonlinear twin classifier through the reduced Gaussian kernel map.

use twinsgd::data::split;
use twinsgd::data::synth::{gen_cross_planes, CROSS_PLANES_NOISE};
use twinsgd::kernel::KernelSpec;
use twinsgd::model::evaluate;
use twinsgd::sgtsvm::train;
use twinsgd::TrainConfig;

fn main() -> twinsgd::Result<()> {
    let data = gen_cross_planes(500, CROSS_PLANES_NOISE, 2)?;
    let (train_set, test_set) = split(&data, 0.9, 0)?;
    // 100 reference points drawn from the training set, mu = 0.1.
    let kernel = KernelSpec::reduced_gaussian(&train_set, 0.1, 100, 0)?;
    let config = TrainConfig {
        tol: 1e-6,
        ..TrainConfig::with_penalty(0.1)
    };
    let fit = train(&train_set, &config, Some(&kernel))?;
    println!("iterations: {}", fit.iterations);
    println!("mapped dimension: {}", fit.model.half1().w().len());
    println!("test accuracy: {:.2}%", 100.0 * evaluate(&fit.model, &test_set)?.accuracy);
    Ok(())
}
