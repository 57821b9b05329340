//! The PEGASOS baseline, with and without a bias term.

use twinsgd::data::synth::gen_gaussian_1d;
use twinsgd::model::evaluate;
use twinsgd::pegasos::{pegasos_train, PegasosConfig};

fn main() -> twinsgd::Result<()> {
    let train = gen_gaussian_1d(5000, 2.0, 0)?;
    let test = gen_gaussian_1d(5000, 2.0, 1)?;
    for with_bias in [false, true] {
        let config = PegasosConfig {
            c: 0.1,
            tol: 1e-5,
            with_bias,
            ..Default::default()
        };
        let fit = pegasos_train(&train, &config)?;
        let m = &fit.model;
        println!(
            "bias {with_bias:>5}: w = {:.4}, b = {:+.4}, {} iterations, test accuracy {:.2}%",
            m.w()[0],
            m.b(),
            fit.iterations,
            100.0 * evaluate(m, &test)?.accuracy
        );
    }
    Ok(())
}
