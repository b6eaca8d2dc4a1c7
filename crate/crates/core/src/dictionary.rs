use std::collections::BTreeSet;

use crate::baselines::{BTree, SplayTree};
use crate::{Key, PackedTree, Result};

/// Insert-and-lookup surface shared by every dynamic structure, so the
/// benchmarks and conformance tests can drive them interchangeably.
///
/// `contains` takes `&mut self` because a splay tree restructures on reads.
pub trait Dictionary {
    fn insert(&mut self, key: Key) -> Result<bool>;
    fn contains(&mut self, key: Key) -> bool;
    fn inorder(&self) -> Vec<Key>;
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Dictionary for PackedTree {
    fn insert(&mut self, key: Key) -> Result<bool> {
        PackedTree::insert(self, key)
    }

    fn contains(&mut self, key: Key) -> bool {
        PackedTree::contains(self, key)
    }

    fn inorder(&self) -> Vec<Key> {
        PackedTree::inorder(self)
    }

    fn len(&self) -> usize {
        PackedTree::len(self)
    }
}

impl Dictionary for BTree<Key> {
    fn insert(&mut self, key: Key) -> Result<bool> {
        Ok(BTree::insert(self, key))
    }

    fn contains(&mut self, key: Key) -> bool {
        BTree::contains(self, &key)
    }

    fn inorder(&self) -> Vec<Key> {
        self.iter().copied().collect()
    }

    fn len(&self) -> usize {
        BTree::len(self)
    }
}

impl Dictionary for SplayTree<Key> {
    fn insert(&mut self, key: Key) -> Result<bool> {
        Ok(SplayTree::insert(self, key))
    }

    fn contains(&mut self, key: Key) -> bool {
        SplayTree::contains(self, &key)
    }

    fn inorder(&self) -> Vec<Key> {
        SplayTree::inorder(self)
    }

    fn len(&self) -> usize {
        SplayTree::len(self)
    }
}

impl Dictionary for BTreeSet<Key> {
    fn insert(&mut self, key: Key) -> Result<bool> {
        Ok(BTreeSet::insert(self, key))
    }

    fn contains(&mut self, key: Key) -> bool {
        BTreeSet::contains(self, &key)
    }

    fn inorder(&self) -> Vec<Key> {
        self.iter().copied().collect()
    }

    fn len(&self) -> usize {
        BTreeSet::len(self)
    }
}
