//! Save a trained model, load it back and check predictions agree.

use twinsgd::data::synth::{gen_cross_planes, CROSS_PLANES_NOISE};
use twinsgd::kernel::KernelSpec;
use twinsgd::sgtsvm::train;
use twinsgd::{TrainConfig, TwinModel};

fn main() -> twinsgd::Result<()> {
    let data = gen_cross_planes(200, CROSS_PLANES_NOISE, 4)?;
    let kernel = KernelSpec::reduced_gaussian(&data, 0.1, 50, 0)?;
    let model = train(&data, &TrainConfig::with_penalty(0.1), Some(&kernel))?.model;

    let path = std::env::temp_dir().join("twinsgd-example.model");
    model.save(&path)?;
    let back = TwinModel::load(&path)?;
    let agree = data.samples().filter(|s| model.predict(s.features).ok() == back.predict(s.features).ok()).count();
    println!("saved to {}", path.display());
    println!("{agree} of {} predictions agree", data.len());
    assert_eq!(back, model);
    Ok(())
}
