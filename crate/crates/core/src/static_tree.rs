//! Immutable search tree stored in a single array.

use crate::layout::{tree_size, Conversion, Layout, LayoutKind, NodeCoord};
use crate::{Error, Key, Result, ABSENT, MAX_HEIGHT};

/// Result of a root-to-leaf descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: bool,
    /// Slot holding the key, or the slot where the descent stopped (an empty
    /// slot, or the last occupied node on the path).
    pub position: usize,
}

/// Balanced BST over a sorted key array, in BFS or vEB order.
#[derive(Debug, Clone)]
pub struct StaticTree {
    keys: Vec<Key>,
    layout: Layout,
    len: usize,
}

/// Smallest `H` with `2^H − 1 ≥ n`.
pub(crate) fn height_for(n: usize) -> u32 {
    (u64::BITS - (n as u64).leading_zeros()).max(1)
}

/// Lays `keys` out as a perfectly balanced tree under `root`: the key at
/// index `⌊n/2⌋` of every range becomes that subtree's root.
pub(crate) fn place_balanced(keys: &[Key], root: NodeCoord, put: &mut impl FnMut(NodeCoord, Key)) {
    if keys.is_empty() {
        return;
    }
    let mid = keys.len() / 2;
    put(root, keys[mid]);
    place_balanced(&keys[..mid], root.left(), put);
    place_balanced(&keys[mid + 1..], root.right(), put);
}

/// In-order walk of the occupied nodes under `root`, keeping only the
/// current root-to-node path on an explicit stack.
pub(crate) fn inorder_from(
    root: NodeCoord,
    height: u32,
    get: impl Fn(NodeCoord) -> Key,
    mut emit: impl FnMut(NodeCoord, Key),
) {
    let mut path: Vec<(NodeCoord, Key)> = Vec::with_capacity(height as usize);
    let mut cur = Some(root);
    loop {
        while let Some(c) = cur {
            if c.depth() > height {
                break;
            }
            let k = get(c);
            if k == ABSENT {
                break;
            }
            path.push((c, k));
            cur = Some(c.left());
        }
        let Some((c, k)) = path.pop() else { return };
        emit(c, k);
        cur = Some(c.right());
    }
}

impl StaticTree {
    pub fn build(sorted_keys: &[Key], kind: LayoutKind) -> Result<Self> {
        Self::build_with(sorted_keys, kind, Conversion::default())
    }

    pub fn build_with(
        sorted_keys: &[Key],
        kind: LayoutKind,
        conversion: Conversion,
    ) -> Result<Self> {
        if sorted_keys.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = sorted_keys.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing(i + 1));
        }
        if let Some(&k) = sorted_keys.iter().find(|&&k| k == ABSENT) {
            return Err(Error::ReservedKey(k));
        }
        let height = height_for(sorted_keys.len());
        if height > MAX_HEIGHT {
            return Err(Error::InvalidHeight(height));
        }
        let layout = Layout::with_conversion(kind, height, conversion)?;
        let mut keys = vec![ABSENT; tree_size(height) as usize];
        place_balanced(sorted_keys, NodeCoord::ROOT, &mut |c, k| {
            keys[layout.position(c)] = k
        });
        Ok(StaticTree {
            keys,
            layout,
            len: sorted_keys.len(),
        })
    }

    pub fn height(&self) -> u32 {
        self.layout.height()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Number of stored keys.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The physical slot array, [`ABSENT`] in padding slots.
    pub fn slots(&self) -> &[Key] {
        &self.keys
    }

    pub fn search(&self, key: Key) -> SearchOutcome {
        self.search_with(key, |_| {})
    }

    /// Like [`search`](Self::search), reporting every slot read to `visit`.
    pub fn search_with(&self, key: Key, mut visit: impl FnMut(usize)) -> SearchOutcome {
        let height = self.height();
        let mut cur = NodeCoord::ROOT;
        loop {
            let position = self.layout.position(cur);
            visit(position);
            let k = self.keys[position];
            if k == ABSENT {
                return SearchOutcome {
                    found: false,
                    position,
                };
            }
            if k == key {
                return SearchOutcome {
                    found: true,
                    position,
                };
            }
            if cur.depth() == height {
                return SearchOutcome {
                    found: false,
                    position,
                };
            }
            cur = if key < k { cur.left() } else { cur.right() };
        }
    }

    pub fn contains(&self, key: Key) -> bool {
        self.search(key).found
    }

    pub fn inorder(&self) -> Vec<Key> {
        let mut out = Vec::with_capacity(self.len);
        inorder_from(
            NodeCoord::ROOT,
            self.height(),
            |c| self.keys[self.layout.position(c)],
            |_, k| out.push(k),
        );
        out
    }
}
