//! Bottom-up splay tree over an index arena.

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node<K> {
    key: K,
    left: usize,
    right: usize,
    parent: usize,
}

#[derive(Debug, Clone)]
pub struct SplayTree<K> {
    nodes: Vec<Node<K>>,
    root: usize,
}

impl<K: Ord + Clone> Default for SplayTree<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SplayTree<K> {
    pub fn new() -> Self {
        SplayTree {
            nodes: Vec::new(),
            root: NIL,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root_key(&self) -> Option<&K> {
        (self.root != NIL).then(|| &self.nodes[self.root].key)
    }

    /// Descends towards `key`; returns the matching node or the last node
    /// visited, and whether it matched.
    fn find(&self, key: &K) -> (usize, bool) {
        let mut x = self.root;
        let mut last = NIL;
        while x != NIL {
            last = x;
            let n = &self.nodes[x];
            match key.cmp(&n.key) {
                std::cmp::Ordering::Equal => return (x, true),
                std::cmp::Ordering::Less => x = n.left,
                std::cmp::Ordering::Greater => x = n.right,
            }
        }
        (last, false)
    }

    /// Looks `key` up and splays the last node touched to the root.
    pub fn contains(&mut self, key: &K) -> bool {
        let (x, found) = self.find(key);
        if x != NIL {
            self.splay(x);
        }
        found
    }

    pub fn insert(&mut self, key: K) -> bool {
        let (x, found) = self.find(&key);
        if found {
            self.splay(x);
            return false;
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            key,
            left: NIL,
            right: NIL,
            parent: x,
        });
        if x == NIL {
            self.root = id;
            return true;
        }
        if self.nodes[id].key < self.nodes[x].key {
            self.nodes[x].left = id;
        } else {
            self.nodes[x].right = id;
        }
        self.splay(id);
        true
    }

    fn is_left(&self, x: usize) -> bool {
        self.nodes[self.nodes[x].parent].left == x
    }

    /// Rotates `x` above its parent.
    fn rotate(&mut self, x: usize) {
        let p = self.nodes[x].parent;
        let g = self.nodes[p].parent;
        if self.is_left(x) {
            let b = self.nodes[x].right;
            self.nodes[p].left = b;
            if b != NIL {
                self.nodes[b].parent = p;
            }
            self.nodes[x].right = p;
        } else {
            let b = self.nodes[x].left;
            self.nodes[p].right = b;
            if b != NIL {
                self.nodes[b].parent = p;
            }
            self.nodes[x].left = p;
        }
        self.nodes[p].parent = x;
        self.nodes[x].parent = g;
        if g == NIL {
            self.root = x;
        } else if self.nodes[g].left == p {
            self.nodes[g].left = x;
        } else {
            self.nodes[g].right = x;
        }
    }

    fn splay(&mut self, x: usize) {
        while self.nodes[x].parent != NIL {
            let p = self.nodes[x].parent;
            if self.nodes[p].parent == NIL {
                self.rotate(x);
            } else if self.is_left(x) == self.is_left(p) {
                self.rotate(p);
                self.rotate(x);
            } else {
                self.rotate(x);
                self.rotate(x);
            }
        }
    }

    pub fn inorder(&self) -> Vec<K> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut x = self.root;
        loop {
            while x != NIL {
                stack.push(x);
                x = self.nodes[x].left;
            }
            let Some(top) = stack.pop() else { break };
            out.push(self.nodes[top].key.clone());
            x = self.nodes[top].right;
        }
        out
    }

    /// Checks parent links, BST order and that every node is reachable.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.root != NIL && self.nodes[self.root].parent != NIL {
            return Err("root has a parent".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            for c in [n.left, n.right] {
                if c != NIL && self.nodes[c].parent != i {
                    return Err(format!("child {c} of {i} has a stale parent link"));
                }
            }
        }
        let keys = self.inorder();
        if keys.len() != self.nodes.len() {
            return Err(format!(
                "{} of {} nodes reachable",
                keys.len(),
                self.nodes.len()
            ));
        }
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err("in-order sequence not increasing".into());
        }
        Ok(())
    }
}
