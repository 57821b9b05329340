//! Read a LIBSVM file (or a small built-in one), split 90/10, train, test.
//!
//! `cargo run --example load_libsvm -- path/to/data.libsvm`

use std::io::Cursor;

use twinsgd::data::io::{load, read_libsvm};
use twinsgd::data::{split, MinMaxScaler};
use twinsgd::model::evaluate;
use twinsgd::sgtsvm::train;
use twinsgd::TrainConfig;

const BUILTIN: &str = "\
+1 1:2.03 2:0.68
+1 1:2.3 2:0.22 3:0.12
+1 1:2.57 2:0.35 3:0.19
+1 1:2.22 2:0.64 3:0.19
+1 1:2.18 2:0.01 3:0.09
+1 1:1.87
+1 1:1.51 2:0.23 3:0.15
+1 1:1.9 2:0.32
+1 1:1.98 2:0.37 3:0.43
+1 1:1.75 2:0.18
-1 1:0.05 2:1.24 3:0.47
-1 1:0.53 2:1.24 3:1.14
-1 1:0.3 2:1.81 3:1.04
-1 1:0.36 2:2.21 3:0.83
-1 1:0.02 2:1.72 3:0.6
-1 1:0.19 2:1.66 3:1.22
-1 2:1.57 3:0.61
-1 2:2.47 3:0.18
-1 1:0.12 2:1.74 3:1.4
-1 2:2.22 3:0.68
";

fn main() -> twinsgd::Result<()> {
    let data = match std::env::args().nth(1) {
        Some(path) => load(path, None)?,
        None => read_libsvm(Cursor::new(BUILTIN))?,
    };
    println!("{} positives, {} negatives, {} features", data.n_positive(), data.n_negative(), data.dim());
    let scaled = MinMaxScaler::fit(&data).transform(&data)?;
    let (train_set, test_set) = split(&scaled, 0.9, 0)?;
    let fit = train(&train_set, &TrainConfig::with_penalty(0.1), None)?;
    println!("test accuracy: {:.2}%", 100.0 * evaluate(&fit.model, &test_set)?.accuracy);
    Ok(())
}
