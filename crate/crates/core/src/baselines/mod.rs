//! Conventional pointer-based dictionaries used as comparison points.

mod btree;
mod splay;

pub use btree::BTree;
pub use splay::SplayTree;
