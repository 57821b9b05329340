//! 10-fold cross-validation, then a small grid search over the penalties
//! and the kernel width.

use twinsgd::data::synth::{gen_cross_planes, CROSS_PLANES_NOISE};
use twinsgd::experiments::{cross_validate, grid_search, Grid, KernelChoice, Learner};
use twinsgd::TrainConfig;

fn main() -> twinsgd::Result<()> {
    let data = gen_cross_planes(300, CROSS_PLANES_NOISE, 3)?;
    let config = TrainConfig {
        tol: 1e-6,
        ..TrainConfig::with_penalty(0.1)
    };
    for (name, kernel) in [("linear", KernelChoice::Linear), ("gaussian", KernelChoice::gaussian(0.1))] {
        let learner = Learner::Sgtsvm {
            config: config.clone(),
            kernel,
        };
        let cv = cross_validate(&data, 10, 0, &learner)?;
        println!("{name}: {:.2} +- {:.2}%", 100.0 * cv.mean, 100.0 * cv.std);
    }

    let grid = Grid {
        c: vec![0.01, 0.1, 1.0],
        mu: vec![0.1, 1.0],
    };
    let base = Learner::Sgtsvm {
        config,
        kernel: KernelChoice::gaussian(0.1),
    };
    let result = grid_search(&data, 5, 0, &base, &grid)?;
    let best = result.best();
    println!(
        "best of {}: c1=c3={} c2=c4={} mu={:?} -> {:.2}%",
        result.entries.len(),
        best.point.c_a,
        best.point.c_b,
        best.point.mu,
        100.0 * best.report.mean
    );
    Ok(())
}
