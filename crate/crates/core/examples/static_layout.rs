//! Build the same key set in BFS and vEB order and look at where things land.
//!
//!     cargo run --example static_layout

use cotree::{LayoutKind, StaticTree};

fn main() -> cotree::Result<()> {
    let keys: Vec<u64> = (1..=15).collect();
    for kind in [LayoutKind::Bfs, LayoutKind::Veb] {
        let tree = StaticTree::build(&keys, kind)?;
        println!("{kind:?} (height {})", tree.height());
        println!("  slots:          {:?}", tree.slots());
        println!("  BFS ids by slot {:?}", tree.layout().physical_order());

        let mut touched = Vec::new();
        let hit = tree.search_with(11, |p| touched.push(p));
        println!(
            "  search 11 -> found={} at slot {}, read slots {touched:?}",
            hit.found, hit.position
        );
        let miss = tree.search(100);
        println!(
            "  search 100 -> found={} stopped at slot {}",
            miss.found, miss.position
        );
        assert_eq!(tree.inorder(), keys);
    }
    Ok(())
}
