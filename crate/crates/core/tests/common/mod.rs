//! Independent oracles shared by the integration tests. None of these call
//! into the index arithmetic they are used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cotree::{Dictionary, Key};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// vEB layout of a height-`h` tree as the list of BFS indices in physical
/// order, built by concatenating the top layout with each bottom layout
/// translated into global coordinates.
pub fn veb_order(h: u32) -> Vec<u64> {
    if h == 1 {
        return vec![1];
    }
    let mut bottom = 1;
    while bottom * 2 < h {
        bottom *= 2;
    }
    let top = h - bottom;
    let mut out = veb_order(top);
    let local = veb_order(bottom);
    for root in (1u64 << top)..(1u64 << (top + 1)) {
        for &b in &local {
            let depth = 64 - b.leading_zeros();
            let offset = b - (1u64 << (depth - 1));
            out.push((root << (depth - 1)) + offset);
        }
    }
    out
}

/// Inverse of [`veb_order`]: `pos[b]` is the physical slot of BFS index `b`.
pub fn veb_positions(h: u32) -> Vec<u64> {
    let order = veb_order(h);
    let mut pos = vec![u64::MAX; order.len() + 1];
    for (p, &b) in order.iter().enumerate() {
        pos[b as usize] = p as u64;
    }
    pos
}

/// LRU re-derived from scratch for every access: the resident set is the
/// `capacity` most recently touched distinct blocks of the history so far.
pub fn naive_lru_transfers(trace: &[u64], block: u64, capacity: usize) -> u64 {
    let mut misses = 0;
    for i in 0..trace.len() {
        let target = trace[i] / block;
        let mut recent = Vec::new();
        for &e in trace[..i].iter().rev() {
            let b = e / block;
            if !recent.contains(&b) {
                recent.push(b);
                if recent.len() == capacity {
                    break;
                }
            }
        }
        if !recent.contains(&target) {
            misses += 1;
        }
    }
    misses
}

/// Drives `dict` and a `BTreeSet` with the same random mix of inserts and
/// lookups over keys in `0..key_range`, comparing every answer. Returns the
/// first disagreement.
pub fn conformance<D: Dictionary>(
    dict: &mut D,
    ops: usize,
    key_range: u64,
    seed: u64,
) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = BTreeSet::new();
    for i in 0..ops {
        let k: Key = rng.gen_range(0..key_range);
        if rng.gen_bool(0.5) {
            let got = dict.insert(k).map_err(|e| e.to_string())?;
            let want = oracle.insert(k);
            if got != want {
                return Err(format!("op {i}: insert({k}) = {got}, expected {want}"));
            }
        } else {
            let got = dict.contains(k);
            let want = oracle.contains(&k);
            if got != want {
                return Err(format!("op {i}: contains({k}) = {got}, expected {want}"));
            }
        }
    }
    if dict.len() != oracle.len() {
        return Err(format!("len {} vs oracle {}", dict.len(), oracle.len()));
    }
    if dict.inorder() != oracle.iter().copied().collect::<Vec<_>>() {
        return Err("in-order output differs from the sorted oracle".into());
    }
    Ok(())
}

pub fn random_distinct_sorted(n: usize, seed: u64) -> Vec<Key> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(rng.gen_range(0..(n as u64) * 20));
    }
    set.into_iter().collect()
}
