//! Iterations to reach each stopping threshold, SGTSVM vs PEGASOS.

use twinsgd::experiments::{bench, Algorithm, BenchConfig, BenchData};

fn main() -> twinsgd::Result<()> {
    let config = BenchConfig {
        trials: 10,
        ..Default::default()
    };
    let rows = bench(
        BenchData::Gaussian {
            per_class: 10_000,
            mean_sep: 2.0,
        },
        &config,
    )?;
    println!("{:>8} {:>12} {:>12}", "tol", "sgtsvm", "pegasos");
    for &tol in &config.tols {
        let mean = |a: Algorithm| {
            let its: Vec<f64> = rows.iter().filter(|r| r.tol == tol && r.algorithm == a).map(|r| r.iterations as f64).collect();
            its.iter().sum::<f64>() / its.len() as f64
        };
        println!("{tol:>8.0e} {:>12.0} {:>12.0}", mean(Algorithm::Sgtsvm), mean(Algorithm::Pegasos));
    }
    Ok(())
}
