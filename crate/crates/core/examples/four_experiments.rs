//! A small version of the full benchmark sweep, written as CSV.
//!
//!     cargo run --release --example four_experiments [out.csv]

use cotree::bench::{sweep, sweep_to_path, SweepConfig};

fn main() -> cotree::Result<()> {
    let config = SweepConfig {
        min_exp: 10,
        max_exp: 14,
        ..SweepConfig::default()
    };
    if let Some(path) = std::env::args().nth(1) {
        sweep_to_path(&config, path.as_ref())?;
        println!("wrote {} rows to {path}", config.row_count());
        return Ok(());
    }
    println!(
        "{:<18} {:<10} {:>7} {:>10}",
        "experiment", "structure", "n", "ns/op"
    );
    sweep(&config, |r| {
        println!(
            "{:<18} {:<10} {:>7} {:>10.1}",
            r.experiment, r.structure, r.n, r.ns_per_op
        );
        Ok(())
    })
}
