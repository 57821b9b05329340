//! Repeated 1-D runs on N(+-2, 1): where the decision boundary lands and how
//! much it moves, for SGTSVM and PEGASOS.

use twinsgd::experiments::{stability, StabilityConfig};

fn main() -> twinsgd::Result<()> {
    let report = stability(&StabilityConfig::default())?;
    for s in &report.summaries {
        println!(
            "{:>8}: boundary {:+.4} +- {:.4}   accuracy {:.2}% (range {:.2} .. {:.2})",
            s.algorithm.to_string(),
            s.boundary_mean,
            s.boundary_std,
            100.0 * s.accuracy_mean,
            100.0 * s.accuracy_min,
            100.0 * s.accuracy_max
        );
    }
    Ok(())
}
