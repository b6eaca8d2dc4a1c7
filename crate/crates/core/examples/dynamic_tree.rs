//! Grow a packed tree from empty and watch rebalancing work.
//!
//!     cargo run --release --example dynamic_tree

use cotree::{Density, LayoutKind, PackedTree};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cotree::Result<()> {
    let mut tree = PackedTree::new(Density::HALF, LayoutKind::Veb);
    for k in [40, 10, 70, 20, 90, 30] {
        tree.insert(k)?;
        println!(
            "insert {k:>2}: height {} logical slots {:?}",
            tree.height(),
            tree.logical_slots()
                .iter()
                .map(|&s| if s == cotree::ABSENT { -1 } else { s as i64 })
                .collect::<Vec<_>>()
        );
    }
    assert!(!tree.insert(40)?);

    for density in ["1/2", "0.7", "0.9"] {
        let density: Density = density.parse()?;
        for exp in [12, 16, 20] {
            let n = 1u64 << exp;
            let mut keys: Vec<u64> = (0..n).collect();
            keys.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
            let mut t = PackedTree::new(density, LayoutKind::Bfs);
            for k in keys {
                t.insert(k)?;
            }
            let s = t.stats();
            println!(
                "τ₁={density} N=2^{exp}: height {}, {} rebalances, {:.2} keys moved per insert, {} grows",
                t.height(),
                s.rebalances,
                s.elements_moved as f64 / n as f64,
                s.grows
            );
        }
    }
    Ok(())
}
