//! Compare the three BFS→vEB index conversions on a few heights.
//!
//!     cargo run --release --example index_conversion

use cotree::bench::run_convert_bench;
use cotree::layout::{veb_pos_constmem, veb_pos_recursive, veb_pos_table, SplitTable};
use cotree::{Conversion, NodeCoord};

fn main() -> cotree::Result<()> {
    let h = 5;
    let table = SplitTable::new(h)?;
    println!("height {h}: bfs -> (recursive, table, constmem)");
    for b in 1..=31 {
        let c = NodeCoord::new(b)?;
        println!(
            "  {b:>2} -> ({:>2}, {:>2}, {:>2})",
            veb_pos_recursive(c, h)?,
            veb_pos_table(c, h, &table)?,
            veb_pos_constmem(c, h)?
        );
    }

    println!("\nns per conversion over 10^6 random indices:");
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "height", "recursive", "table", "constmem"
    );
    for height in [4, 8, 16, 24, 32, 48, 63] {
        let times: Vec<String> = Conversion::ALL
            .iter()
            .map(|&v| {
                run_convert_bench(v, height, 1_000_000, 1).map(|r| format!("{:>10.2}", r.ns_per_op))
            })
            .collect::<cotree::Result<_>>()?;
        println!("{height:>6} {}", times.join(" "));
    }
    Ok(())
}
