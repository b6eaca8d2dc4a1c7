//! Two-level memory simulator: a fully-associative LRU cache of
//! `capacity_blocks` blocks, each `block_size` elements wide, in front of a
//! flat array of elements.
//!
//! Cost is counted in block transfers, the unit of the ideal-cache model.
//! LRU stands in for the clairvoyant policy of that model; on workloads whose
//! cost is polynomial in the cache size the two differ by a constant factor.
//! The tall-cache assumption is not enforced.

use std::collections::HashMap;

use crate::{Error, Key, Result, StaticTree};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct Entry {
    block: u64,
    prev: usize,
    next: usize,
}

#[derive(Debug, Clone)]
pub struct CacheSim {
    block_size: u64,
    capacity_blocks: usize,
    base_offset: u64,
    index: HashMap<u64, usize>,
    // recency list threaded through `entries`; `head` is most recent
    entries: Vec<Entry>,
    head: usize,
    tail: usize,
    transfers: u64,
    accesses: u64,
}

impl CacheSim {
    pub fn new(block_size: u64, capacity_blocks: usize) -> Result<Self> {
        if block_size == 0 || !block_size.is_power_of_two() || capacity_blocks == 0 {
            return Err(Error::InvalidCache {
                block_size,
                capacity_blocks,
            });
        }
        Ok(CacheSim {
            block_size,
            capacity_blocks,
            base_offset: 0,
            index: HashMap::with_capacity(capacity_blocks),
            entries: Vec::with_capacity(capacity_blocks),
            head: NIL,
            tail: NIL,
            transfers: 0,
            accesses: 0,
        })
    }

    /// Shifts the simulated array so element 0 sits `offset` elements into
    /// its block. Clears the cache.
    pub fn with_base_offset(mut self, offset: u64) -> Self {
        self.base_offset = offset;
        self.reset();
        self
    }

    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    pub fn capacity_blocks(&self) -> usize {
        self.capacity_blocks
    }

    pub fn transfers(&self) -> u64 {
        self.transfers
    }

    pub fn accesses(&self) -> u64 {
        self.accesses
    }

    pub fn resident_blocks(&self) -> usize {
        self.index.len()
    }

    /// Empties the cache and zeroes the counters.
    pub fn reset(&mut self) {
        self.index.clear();
        self.entries.clear();
        self.head = NIL;
        self.tail = NIL;
        self.transfers = 0;
        self.accesses = 0;
    }

    fn unlink(&mut self, i: usize) {
        let Entry { prev, next, .. } = self.entries[i];
        if prev == NIL {
            self.head = next;
        } else {
            self.entries[prev].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.entries[next].prev = prev;
        }
    }

    fn push_front(&mut self, i: usize) {
        self.entries[i].prev = NIL;
        self.entries[i].next = self.head;
        if self.head != NIL {
            self.entries[self.head].prev = i;
        }
        self.head = i;
        if self.tail == NIL {
            self.tail = i;
        }
    }

    /// Touches one element. Returns `true` on a hit.
    pub fn access(&mut self, element: u64) -> bool {
        self.accesses += 1;
        let block = (self.base_offset + element) / self.block_size;
        if let Some(&i) = self.index.get(&block) {
            if self.head != i {
                self.unlink(i);
                self.push_front(i);
            }
            return true;
        }
        self.transfers += 1;
        let slot = if self.entries.len() < self.capacity_blocks {
            self.entries.push(Entry {
                block,
                prev: NIL,
                next: NIL,
            });
            self.entries.len() - 1
        } else {
            let victim = self.tail;
            self.unlink(victim);
            self.index.remove(&self.entries[victim].block);
            self.entries[victim].block = block;
            victim
        };
        self.push_front(slot);
        self.index.insert(block, slot);
        false
    }

    /// Replays a trace of element indices from a cold cache.
    pub fn replay(&mut self, trace: impl IntoIterator<Item = u64>) -> u64 {
        self.reset();
        for e in trace {
            self.access(e);
        }
        self.transfers
    }

    /// Sequential read of `n` elements from a cold cache.
    pub fn count_scan(&mut self, n: u64) -> u64 {
        self.replay(0..n)
    }

    /// Binary search for the element of rank `rank` in a sorted array of `n`.
    pub fn count_binary_search(&mut self, n: u64, rank: u64) -> Result<u64> {
        let probes = binary_search_probes(n, rank)?;
        Ok(self.replay(probes))
    }

    /// Search in a static tree whose slot array starts at element 0.
    pub fn count_tree_search(&mut self, tree: &StaticTree, key: Key) -> u64 {
        self.reset();
        tree.search_with(key, |p| {
            self.access(p as u64);
        });
        self.transfers
    }

    /// Largest cold-cache search cost over every key stored in `tree`.
    pub fn worst_tree_search(&mut self, tree: &StaticTree) -> u64 {
        tree.inorder()
            .into_iter()
            .map(|k| self.count_tree_search(tree, k))
            .max()
            .unwrap_or(0)
    }

    pub fn mean_tree_search(&mut self, tree: &StaticTree, keys: &[Key]) -> f64 {
        if keys.is_empty() {
            return 0.0;
        }
        let total: u64 = keys.iter().map(|&k| self.count_tree_search(tree, k)).sum();
        total as f64 / keys.len() as f64
    }
}

/// Indices probed by textbook binary search (`mid = lo + (hi − lo)/2`) on
/// `0..n` looking for the element at `rank`.
pub fn binary_search_probes(n: u64, rank: u64) -> Result<Vec<u64>> {
    if rank >= n {
        return Err(Error::RankOutOfRange { rank, len: n });
    }
    let (mut lo, mut hi) = (0, n);
    let mut probes = Vec::with_capacity(64);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        probes.push(mid);
        match mid.cmp(&rank) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    Ok(probes)
}
