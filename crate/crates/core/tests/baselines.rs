mod common;

use common::conformance;
use cotree::baselines::{BTree, SplayTree};

#[test]
fn btree_orders_against_oracle() {
    for t in [2, 3, 16] {
        for seed in 1..=3 {
            let mut tree = BTree::new(t);
            conformance(&mut tree, 100_000, 50_000, seed).unwrap();
            tree.check_invariants().unwrap();
        }
    }
}

#[test]
fn btree_invariants_during_growth() {
    let mut tree = BTree::new(2);
    for k in (0..3000u64).map(|i| (i * 7919) % 3001) {
        tree.insert(k);
        if k % 97 == 0 {
            tree.check_invariants().unwrap();
        }
    }
    tree.check_invariants().unwrap();
}

#[test]
fn splay_against_oracle() {
    for seed in 1..=3 {
        let mut tree = SplayTree::new();
        conformance(&mut tree, 100_000, 50_000, seed).unwrap();
        tree.check_invariants().unwrap();
    }
}

#[test]
fn splay_contains_roots_the_key() {
    let mut tree = SplayTree::new();
    for k in (0..1000u64).map(|i| (i * 389) % 1009) {
        tree.insert(k);
    }
    for k in [0, 500, 999, 17] {
        if tree.contains(&k) {
            assert_eq!(tree.root_key(), Some(&k));
        }
    }
    tree.check_invariants().unwrap();
}
