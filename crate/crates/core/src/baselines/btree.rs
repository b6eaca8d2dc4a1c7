//! B-tree with minimum degree `t`: every node except the root holds between
//! `t − 1` and `2t − 1` keys. Full nodes are split on the way down, so an
//! insertion never has to walk back up.

#[derive(Debug, Clone)]
struct Node<K> {
    keys: Vec<K>,
    // empty for leaves
    children: Vec<usize>,
}

impl<K> Node<K> {
    fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct BTree<K> {
    nodes: Vec<Node<K>>,
    root: usize,
    min_degree: usize,
    len: usize,
}

impl<K: Ord + Clone> BTree<K> {
    /// # Panics
    /// If `min_degree < 2`.
    pub fn new(min_degree: usize) -> Self {
        assert!(min_degree >= 2, "B-tree minimum degree must be at least 2");
        BTree {
            nodes: vec![Node {
                keys: Vec::with_capacity(2 * min_degree - 1),
                children: Vec::new(),
            }],
            root: 0,
            min_degree,
            len: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.min_degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn max_keys(&self) -> usize {
        2 * self.min_degree - 1
    }

    pub fn contains(&self, key: &K) -> bool {
        let mut x = self.root;
        loop {
            let node = &self.nodes[x];
            match node.keys.binary_search(key) {
                Ok(_) => return true,
                Err(_) if node.is_leaf() => return false,
                Err(i) => x = node.children[i],
            }
        }
    }

    pub fn insert(&mut self, key: K) -> bool {
        if self.nodes[self.root].keys.len() == self.max_keys() {
            let old = self.root;
            self.root = self.nodes.len();
            self.nodes.push(Node {
                keys: Vec::with_capacity(self.max_keys()),
                children: vec![old],
            });
            self.split_child(self.root, 0);
        }
        let mut x = self.root;
        loop {
            let i = match self.nodes[x].keys.binary_search(&key) {
                Ok(_) => return false,
                Err(i) => i,
            };
            if self.nodes[x].is_leaf() {
                self.nodes[x].keys.insert(i, key);
                self.len += 1;
                return true;
            }
            let mut child = self.nodes[x].children[i];
            if self.nodes[child].keys.len() == self.max_keys() {
                self.split_child(x, i);
                match key.cmp(&self.nodes[x].keys[i]) {
                    std::cmp::Ordering::Equal => return false,
                    std::cmp::Ordering::Greater => child = self.nodes[x].children[i + 1],
                    std::cmp::Ordering::Less => child = self.nodes[x].children[i],
                }
            }
            x = child;
        }
    }

    /// Splits the full `i`-th child of `parent` around its median key.
    fn split_child(&mut self, parent: usize, i: usize) {
        let t = self.min_degree;
        let full = self.nodes[parent].children[i];
        let right_keys = self.nodes[full].keys.split_off(t);
        let median = self.nodes[full].keys.pop().expect("full node has a median");
        let right_children = if self.nodes[full].is_leaf() {
            Vec::new()
        } else {
            self.nodes[full].children.split_off(t)
        };
        let right = self.nodes.len();
        self.nodes.push(Node {
            keys: right_keys,
            children: right_children,
        });
        let p = &mut self.nodes[parent];
        p.keys.insert(i, median);
        p.children.insert(i + 1, right);
    }

    pub fn iter(&self) -> Iter<'_, K> {
        let mut it = Iter {
            tree: self,
            stack: Vec::new(),
        };
        it.push_left(self.root);
        it
    }

    /// Checks key counts, ordering, separator ranges and uniform leaf depth.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut leaf_depth = None;
        let n = self.check_node(self.root, 0, None, None, &mut leaf_depth)?;
        if n != self.len {
            return Err(format!("len {} but {n} keys reachable", self.len));
        }
        Ok(())
    }

    fn check_node(
        &self,
        x: usize,
        depth: usize,
        lo: Option<&K>,
        hi: Option<&K>,
        leaf_depth: &mut Option<usize>,
    ) -> Result<usize, String> {
        let node = &self.nodes[x];
        let k = node.keys.len();
        if x != self.root && (k < self.min_degree - 1 || k > self.max_keys()) {
            return Err(format!("node {x} holds {k} keys"));
        }
        if k > self.max_keys() {
            return Err(format!("root holds {k} keys"));
        }
        if node.keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("node {x} keys unsorted"));
        }
        if lo.is_some_and(|lo| node.keys.first().is_some_and(|f| f <= lo))
            || hi.is_some_and(|hi| node.keys.last().is_some_and(|l| l >= hi))
        {
            return Err(format!("node {x} escapes its separator range"));
        }
        if node.is_leaf() {
            match *leaf_depth {
                None => *leaf_depth = Some(depth),
                Some(d) if d != depth => {
                    return Err(format!("leaf {x} at depth {depth}, expected {d}"))
                }
                _ => {}
            }
            return Ok(k);
        }
        if node.children.len() != k + 1 {
            return Err(format!(
                "node {x} has {} children for {k} keys",
                node.children.len()
            ));
        }
        let mut total = k;
        for (i, &c) in node.children.iter().enumerate() {
            let clo = if i == 0 { lo } else { Some(&node.keys[i - 1]) };
            let chi = if i == k { hi } else { Some(&node.keys[i]) };
            total += self.check_node(c, depth + 1, clo, chi, leaf_depth)?;
        }
        Ok(total)
    }
}

/// In-order iterator over a [`BTree`].
pub struct Iter<'a, K> {
    tree: &'a BTree<K>,
    // (node, index of the next key to yield)
    stack: Vec<(usize, usize)>,
}

impl<K> Iter<'_, K> {
    fn push_left(&mut self, mut x: usize) {
        loop {
            self.stack.push((x, 0));
            match self.tree.nodes[x].children.first() {
                Some(&c) => x = c,
                None => break,
            }
        }
    }
}

impl<'a, K> Iterator for Iter<'a, K> {
    type Item = &'a K;

    fn next(&mut self) -> Option<&'a K> {
        let tree = self.tree;
        while let Some(top) = self.stack.last_mut() {
            let node = &tree.nodes[top.0];
            if top.1 < node.keys.len() {
                let key = &node.keys[top.1];
                top.1 += 1;
                if let Some(&c) = node.children.get(top.1) {
                    self.push_left(c);
                }
                return Some(key);
            }
            self.stack.pop();
        }
        None
    }
}
