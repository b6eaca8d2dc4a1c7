//! Cache-oblivious ordered dictionaries.
//!
//! The crate is organised around one question: how much does the memory
//! layout of a search tree matter once caches are involved?
//!
//! - [`layout`]: breadth-first and van Emde Boas index arithmetic, including
//!   three interchangeable BFS-to-vEB conversion routines.
//! - [`static_tree`]: an immutable, perfectly balanced search tree stored in
//!   either layout.
//! - [`packed`]: the dynamic "small tree", a pointer-free search tree kept
//!   in a single array and maintained by density-triggered rebalancing.
//! - [`baselines`]: a classic B-tree and a splay tree for comparison.
//! - [`cache_sim`]: a fully-associative LRU simulator that counts block
//!   transfers for scans, binary search and tree searches.
//! - [`bench`]: the timing harness behind the `cotree` binary.
//!
//! Keys are `u64`. The value [`ABSENT`] is reserved to mark empty slots and
//! is rejected by every insertion routine that stores keys in an array.

pub mod baselines;
pub mod bench;
pub mod cache_sim;
mod dictionary;
mod error;
pub mod layout;
pub mod packed;
pub mod static_tree;

pub use dictionary::Dictionary;
pub use error::{Error, Result};
pub use layout::{Conversion, Layout, LayoutKind, NodeCoord};
pub use packed::{Density, PackedTree, RebalanceStats};
pub use static_tree::{SearchOutcome, StaticTree};

/// Key type stored by every structure in the crate.
pub type Key = u64;

/// Reserved slot marker. Never a valid key.
pub const ABSENT: Key = Key::MAX;

/// Largest tree height supported by the index arithmetic (word size − 1).
pub const MAX_HEIGHT: u32 = u64::BITS - 1;
