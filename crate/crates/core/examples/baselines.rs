//! The comparison structures behind one trait.
//!
//!     cargo run --example baselines

use std::collections::BTreeSet;

use cotree::baselines::{BTree, SplayTree};
use cotree::{Density, Dictionary, LayoutKind, PackedTree};

fn exercise(name: &str, d: &mut impl Dictionary) -> cotree::Result<()> {
    for k in [5, 3, 8, 1, 4, 7, 9, 2, 6] {
        d.insert(k)?;
    }
    let dup = d.insert(4)?;
    println!(
        "{name:<10} len {} dup-insert {dup} contains(6) {} contains(10) {} inorder {:?}",
        d.len(),
        d.contains(6),
        d.contains(10),
        d.inorder()
    );
    Ok(())
}

fn main() -> cotree::Result<()> {
    exercise("btree2", &mut BTree::new(2))?;
    exercise("btree16", &mut BTree::new(16))?;
    let mut splay = SplayTree::new();
    exercise("splay", &mut splay)?;
    println!("{:<10} root after last lookup: {:?}", "", splay.root_key());
    exercise(
        "small_veb",
        &mut PackedTree::new(Density::HALF, LayoutKind::Veb),
    )?;
    exercise("stdset", &mut BTreeSet::new())?;
    Ok(())
}
