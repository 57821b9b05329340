//! Same experiment as `stability`, but negatives in [-1, 0] are never drawn
//! during training.

use twinsgd::data::Label;
use twinsgd::experiments::{stability, MaskInterval, StabilityConfig};

fn main() -> twinsgd::Result<()> {
    let config = StabilityConfig {
        mask: Some(MaskInterval {
            class: Label::Negative,
            lo: -1.0,
            hi: 0.0,
        }),
        ..Default::default()
    };
    let report = stability(&config)?;
    for s in &report.summaries {
        println!("{:>8}: boundary {:+.4} +- {:.4}", s.algorithm.to_string(), s.boundary_mean, s.boundary_std);
    }
    Ok(())
}
