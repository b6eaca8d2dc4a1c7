//! Dynamic cache-oblivious search tree backed by one array.
//!
//! The tree keeps its keys in the `2^H − 1` slots of a complete binary tree
//! of height `H`, laid out by a [`Layout`]. There are no pointers and no
//! per-node metadata: an empty slot holds [`ABSENT`], and every occupied
//! node has an occupied parent.
//!
//! A new key is dropped into the empty slot where a plain BST descent ends.
//! When that descent falls off the bottom level, the tree climbs back up to
//! the nearest ancestor `v` whose subtree is sparse enough,
//! `N(v) < τ_d(v) · S(v)`, and rebuilds `v`'s subtree perfectly balanced with
//! the new key included. Density thresholds run linearly from `τ₁` at the
//! root to exactly 1 at the leaves. Once the whole tree reaches `τ₁` full,
//! the next insertion first grows the array by one level.

use std::fmt;
use std::str::FromStr;

use crate::layout::{check_height, tree_size, Conversion, Layout, LayoutKind, NodeCoord};
use crate::static_tree::{inorder_from, place_balanced};
use crate::{Error, Key, Result, ABSENT, MAX_HEIGHT};

/// Root density `τ₁` as an exact fraction in `[1/2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Density {
    pub const HALF: Density = Density { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        // 1/2 ≤ num/den < 1
        if den == 0 || num >= den || 2 * (num as u128) < den as u128 {
            return Err(Error::DensityOutOfRange { num, den });
        }
        let g = gcd(num, den);
        Ok(Density {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `τ_d` for a tree of the given height, as a fraction `(num, den)`.
    pub fn threshold(&self, depth: u32, height: u32) -> (u128, u128) {
        let (num, den) = (self.num as u128, self.den as u128);
        if height <= 1 {
            return (num, den);
        }
        let steps = (height - 1) as u128;
        (num * steps + (depth as u128 - 1) * (den - num), den * steps)
    }

    /// `count < τ_d · S(v)` for a node at `depth`.
    pub fn has_room(&self, count: u64, depth: u32, height: u32) -> bool {
        let (tn, td) = self.threshold(depth, height);
        let size = tree_size(height - depth + 1) as u128;
        (count as u128) * td < size * tn
    }

    /// `count ≤ τ_d · S(v) + 1`.
    fn within_slack(&self, count: u64, depth: u32, height: u32) -> bool {
        let (tn, td) = self.threshold(depth, height);
        let size = tree_size(height - depth + 1) as u128;
        (count as u128) * td <= size * tn + td
    }
}

impl Default for Density {
    fn default() -> Self {
        Density::HALF
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Density {
    type Err = Error;

    /// Accepts `p/q` or a decimal such as `0.7`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadDensity(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim().parse().map_err(|_| bad())?;
            return Density::new(n, d);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Density::new(num, den)
    }
}

/// Counters for rebalancing work.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RebalanceStats {
    /// Complete rebalances, including the root rebuild done by each grow.
    pub rebalances: u64,
    /// Keys written back by those rebalances.
    pub elements_moved: u64,
    pub grows: u64,
}

/// Results of the optional post-rebalance checks, see
/// [`PackedTree::enable_audit`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RebalanceAudit {
    pub checked: u64,
    /// Descendants `w` of a freshly rebuilt `v` with
    /// `N(w) ≥ N(v)·(1 + S(w))/S(v)`.
    pub spread_violations: u64,
    /// Insertion-triggered rebuilds that left `N(v) > τ_d·S(v) + 1`.
    pub density_violations: u64,
}

/// The dynamic tree. Set semantics, no deletions.
#[derive(Debug, Clone)]
pub struct PackedTree {
    slots: Vec<Key>,
    layout: Layout,
    density: Density,
    count: usize,
    stats: RebalanceStats,
    audit: Option<RebalanceAudit>,
}

impl PackedTree {
    pub fn new(density: Density, kind: LayoutKind) -> Self {
        Self::with_conversion(density, kind, Conversion::default())
    }

    pub fn with_conversion(density: Density, kind: LayoutKind, conversion: Conversion) -> Self {
        let layout = Layout::with_conversion(kind, 1, conversion).expect("height 1 is valid");
        PackedTree {
            slots: vec![ABSENT],
            layout,
            density,
            count: 0,
            stats: RebalanceStats::default(),
            audit: None,
        }
    }

    /// Turns on per-rebalance verification of the spread bound and density
    /// slack. Costs a full scan of every rebuilt subtree.
    pub fn enable_audit(&mut self) {
        self.audit.get_or_insert_with(RebalanceAudit::default);
    }

    pub fn audit(&self) -> Option<RebalanceAudit> {
        self.audit
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn height(&self) -> u32 {
        self.layout.height()
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn density(&self) -> Density {
        self.density
    }

    pub fn stats(&self) -> RebalanceStats {
        self.stats
    }

    /// Physical slot array.
    pub fn slots(&self) -> &[Key] {
        &self.slots
    }

    /// Slot contents in BFS order, independent of the physical layout.
    pub fn logical_slots(&self) -> Vec<Key> {
        (1..=self.slots.len() as u64)
            .map(|b| self.get(NodeCoord::from_raw(b)))
            .collect()
    }

    #[inline]
    fn get(&self, c: NodeCoord) -> Key {
        self.slots[self.layout.position(c)]
    }

    /// Inserts `key`; `Ok(false)` if it was already present.
    pub fn insert(&mut self, key: Key) -> Result<bool> {
        if key == ABSENT {
            return Err(Error::ReservedKey(key));
        }
        if !self.density.has_room(self.count as u64, 1, self.height()) {
            self.grow()?;
        }

        let height = self.height();
        let mut cur = NodeCoord::ROOT;
        loop {
            let pos = self.layout.position(cur);
            let k = self.slots[pos];
            if k == ABSENT {
                self.slots[pos] = key;
                self.count += 1;
                return Ok(true);
            }
            if k == key {
                return Ok(false);
            }
            if cur.depth() == height {
                break;
            }
            cur = if key < k { cur.left() } else { cur.right() };
        }

        // Fell off a leaf: climb to the nearest ancestor with room.
        let mut node = cur;
        let mut n = 1u64;
        while !self.density.has_room(n, node.depth(), height) {
            match (node.parent(), node.sibling()) {
                (Some(parent), Some(sibling)) => {
                    n += self.subtree_count(sibling) + 1;
                    node = parent;
                }
                _ => unreachable!("root always has room after the growth check"),
            }
        }
        self.rebuild(node, Some(key), n);
        self.count += 1;
        Ok(true)
    }

    pub fn contains(&self, key: Key) -> bool {
        if key == ABSENT {
            return false;
        }
        let height = self.height();
        let mut cur = NodeCoord::ROOT;
        loop {
            let k = self.get(cur);
            if k == ABSENT {
                return false;
            }
            if k == key {
                return true;
            }
            if cur.depth() == height {
                return false;
            }
            cur = if key < k { cur.left() } else { cur.right() };
        }
    }

    pub fn inorder(&self) -> Vec<Key> {
        let mut out = Vec::with_capacity(self.count);
        self.for_each_inorder(|k| out.push(k));
        out
    }

    pub fn for_each_inorder(&self, mut f: impl FnMut(Key)) {
        inorder_from(NodeCoord::ROOT, self.height(), |c| self.get(c), |_, k| f(k));
    }

    /// `N(v)`: occupied nodes in the subtree of `v`.
    pub fn subtree_count(&self, v: NodeCoord) -> u64 {
        let height = self.height();
        let mut stack = vec![v];
        let mut n = 0;
        while let Some(c) = stack.pop() {
            if c.depth() > height || self.get(c) == ABSENT {
                continue;
            }
            n += 1;
            stack.push(c.left());
            stack.push(c.right());
        }
        n
    }

    /// Rebuilds the subtree of `v` perfectly balanced.
    pub fn rebalance(&mut self, v: NodeCoord) -> Result<()> {
        check_height(self.height())?;
        if v.depth() > self.height() {
            return Err(Error::IndexOutOfRange {
                index: v.bfs_index(),
                height: self.height(),
            });
        }
        let n = self.subtree_count(v);
        self.rebuild(v, None, n);
        Ok(())
    }

    fn rebuild(&mut self, v: NodeCoord, extra: Option<Key>, n: u64) {
        let height = self.height();
        let mut buf = Vec::with_capacity(n as usize + 1);
        let mut cleared = Vec::with_capacity(n as usize);
        inorder_from(
            v,
            height,
            |c| self.get(c),
            |c, k| {
                buf.push(k);
                cleared.push(c);
            },
        );
        debug_assert_eq!(buf.len() as u64, n);
        for c in cleared {
            let p = self.layout.position(c);
            self.slots[p] = ABSENT;
        }
        if let Some(key) = extra {
            let at = buf.partition_point(|&k| k < key);
            buf.insert(at, key);
        }
        assert!(
            buf.len() as u64 <= tree_size(height - v.depth() + 1),
            "subtree of {v:?} cannot hold {} keys",
            buf.len()
        );
        let layout = &self.layout;
        let slots = &mut self.slots;
        place_balanced(&buf, v, &mut |c, k| slots[layout.position(c)] = k);

        self.stats.rebalances += 1;
        self.stats.elements_moved += buf.len() as u64;
        if self.audit.is_some() {
            self.audit_rebuild(v, buf.len() as u64, extra.is_some());
        }
    }

    /// Adds one level and rebuilds everything from the root.
    pub fn grow(&mut self) -> Result<()> {
        let height = self.height();
        if height >= MAX_HEIGHT {
            return Err(Error::HeightLimit);
        }
        let keys = self.inorder();
        let layout =
            Layout::with_conversion(self.layout.kind(), height + 1, self.layout.conversion())?;
        let mut slots = vec![ABSENT; layout.len()];
        place_balanced(&keys, NodeCoord::ROOT, &mut |c, k| {
            slots[layout.position(c)] = k
        });
        self.slots = slots;
        self.layout = layout;
        self.stats.grows += 1;
        self.stats.rebalances += 1;
        self.stats.elements_moved += keys.len() as u64;
        if self.audit.is_some() {
            self.audit_rebuild(NodeCoord::ROOT, keys.len() as u64, false);
        }
        Ok(())
    }

    fn audit_rebuild(&mut self, v: NodeCoord, nv: u64, from_insert: bool) {
        let height = self.height();
        let sv = tree_size(height - v.depth() + 1) as u128;
        let mut spread = 0;
        // post-order subtree counts via an explicit stack
        let mut counts = std::collections::HashMap::new();
        let mut stack = vec![(v, false)];
        while let Some((c, expanded)) = stack.pop() {
            if c.depth() > height {
                continue;
            }
            if !expanded {
                stack.push((c, true));
                stack.push((c.left(), false));
                stack.push((c.right(), false));
                continue;
            }
            let child = |x: NodeCoord| counts.get(&x).copied().unwrap_or(0u64);
            let own = u64::from(self.get(c) != ABSENT);
            let nw = own + child(c.left()) + child(c.right());
            counts.insert(c, nw);
            if c != v && nv > 0 {
                let sw = tree_size(height - c.depth() + 1) as u128;
                if (nw as u128) * sv >= (nv as u128) * (1 + sw) {
                    spread += 1;
                }
            }
        }
        let density_bad = from_insert && !self.density.within_slack(nv, v.depth(), height);
        let audit = self.audit.as_mut().expect("audit enabled");
        audit.checked += 1;
        audit.spread_violations += spread;
        audit.density_violations += u64::from(density_bad);
    }

    /// Full structural check: BST order, occupied nodes have occupied
    /// parents, and the element count matches.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut occupied = 0;
        for b in 1..=self.slots.len() as u64 {
            let c = NodeCoord::from_raw(b);
            if self.get(c) == ABSENT {
                continue;
            }
            occupied += 1;
            if let Some(p) = c.parent() {
                if self.get(p) == ABSENT {
                    return Err(format!("node {b} is occupied but its parent is empty"));
                }
            }
        }
        if occupied != self.count {
            return Err(format!(
                "count {} but {occupied} occupied slots",
                self.count
            ));
        }
        let keys = self.inorder();
        if keys.len() != occupied {
            return Err("in-order walk missed occupied slots".into());
        }
        if let Some(i) = keys.windows(2).position(|w| w[0] >= w[1]) {
            return Err(format!("in-order sequence not increasing at {i}"));
        }
        Ok(())
    }
}
