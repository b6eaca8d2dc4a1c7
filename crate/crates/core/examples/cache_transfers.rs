//! Count simulated block transfers for a scan, binary search, and searches
//! in BFS- and vEB-ordered trees.
//!
//!     cargo run --release --example cache_transfers

use cotree::cache_sim::CacheSim;
use cotree::{LayoutKind, StaticTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cotree::Result<()> {
    let mut sim = CacheSim::new(16, 8)?;
    println!(
        "scan of 1000 elements, B=16: {} transfers",
        sim.count_scan(1000)
    );

    let mut sim = CacheSim::new(64, 16)?;
    for exp in [16, 20, 24] {
        println!(
            "binary search, N=2^{exp}, B=64: {} transfers",
            sim.count_binary_search(1 << exp, 0)?
        );
    }

    let n = (1u64 << 20) - 1;
    let keys: Vec<u64> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sample: Vec<u64> = (0..1000).map(|_| rng.gen_range(0..n)).collect();
    for kind in [LayoutKind::Bfs, LayoutKind::Veb] {
        let tree = StaticTree::build(&keys, kind)?;
        for block in [8, 64, 256] {
            let mut sim = CacheSim::new(block, 16)?;
            println!(
                "{kind:?} tree, N=2^20-1, B={block:>3}: mean {:.2} transfers per search",
                sim.mean_tree_search(&tree, &sample)
            );
        }
    }
    Ok(())
}
