//! Breadth-first and van Emde Boas index arithmetic.
//!
//! Nodes are addressed logically by their 1-based BFS index (root = 1,
//! children of `i` at `2i` and `2i + 1`). A [`Layout`] maps that logical
//! index to a 0-based physical slot in an array of `2^H − 1` elements.
//!
//! The vEB layout of a tree of height `H > 1` splits it at the largest power
//! of two `L < H`: the top `H − L` levels are laid out first (recursively),
//! followed by the `2^(H−L)` bottom trees of height `L`, left to right, each
//! also laid out recursively. Three routines compute that mapping:
//!
//! - [`veb_pos_recursive`] follows the definition literally and is the
//!   reference for the other two.
//! - [`veb_pos_table`] walks the same recursion iteratively, reading the
//!   split for each subtree height from a [`SplitTable`] built once per
//!   tree height.
//! - [`veb_pos_constmem`] keeps only a handful of registers and derives each
//!   split with a leading-zero count. Heights halve every round, so the loop
//!   runs at most `log2(word size)` times.

use crate::{Error, Result, MAX_HEIGHT};

/// Which physical arrangement a tree uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutKind {
    /// Level order: BFS index `b` lives at position `b − 1`.
    Bfs,
    /// Recursive van Emde Boas order.
    Veb,
}

/// Algorithm used to turn BFS indices into vEB positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Conversion {
    Recursive,
    Table,
    #[default]
    ConstMem,
}

impl Conversion {
    pub const ALL: [Conversion; 3] = [
        Conversion::Recursive,
        Conversion::Table,
        Conversion::ConstMem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conversion::Recursive => "recursive",
            Conversion::Table => "table",
            Conversion::ConstMem => "constmem",
        }
    }
}

impl std::str::FromStr for Conversion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recursive" => Ok(Conversion::Recursive),
            "table" => Ok(Conversion::Table),
            "constmem" => Ok(Conversion::ConstMem),
            other => Err(Error::Usage(format!(
                "unknown conversion variant {other:?}"
            ))),
        }
    }
}

/// A node of a complete binary tree, addressed by its 1-based BFS index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeCoord(u64);

impl NodeCoord {
    pub const ROOT: NodeCoord = NodeCoord(1);

    pub fn new(bfs_index: u64) -> Result<Self> {
        if bfs_index == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                height: 0,
            });
        }
        Ok(NodeCoord(bfs_index))
    }

    #[inline]
    pub(crate) const fn from_raw(bfs_index: u64) -> Self {
        NodeCoord(bfs_index)
    }

    #[inline]
    pub fn bfs_index(self) -> u64 {
        self.0
    }

    /// Depth with the root at 1.
    #[inline]
    pub fn depth(self) -> u32 {
        u64::BITS - self.0.leading_zeros()
    }

    #[inline]
    pub fn left(self) -> NodeCoord {
        NodeCoord(self.0 << 1)
    }

    #[inline]
    pub fn right(self) -> NodeCoord {
        NodeCoord((self.0 << 1) | 1)
    }

    #[inline]
    pub fn parent(self) -> Option<NodeCoord> {
        (self.0 > 1).then_some(NodeCoord(self.0 >> 1))
    }

    #[inline]
    pub fn sibling(self) -> Option<NodeCoord> {
        (self.0 > 1).then_some(NodeCoord(self.0 ^ 1))
    }

    #[inline]
    pub fn is_left_child(self) -> bool {
        self.0 > 1 && self.0 & 1 == 0
    }

    /// Is `self` in the subtree rooted at `ancestor` (inclusive)?
    pub fn is_descendant_of(self, ancestor: NodeCoord) -> bool {
        let (d, a) = (self.depth(), ancestor.depth());
        d >= a && self.0 >> (d - a) == ancestor.0
    }

    fn check(self, height: u32) -> Result<()> {
        check_height(height)?;
        if self.depth() > height {
            return Err(Error::IndexOutOfRange {
                index: self.0,
                height,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_height(height: u32) -> Result<()> {
    if height == 0 || height > MAX_HEIGHT {
        return Err(Error::InvalidHeight(height));
    }
    Ok(())
}

/// Number of nodes in a complete tree of the given height.
#[inline]
pub fn tree_size(height: u32) -> u64 {
    (1u64 << height) - 1
}

/// `(top height, bottom height)` for a tree of height `h ≥ 2`.
#[inline]
fn split(h: u32) -> (u32, u32) {
    debug_assert!(h >= 2);
    let bottom = 1u32 << (u32::BITS - 1 - (h - 1).leading_zeros());
    (h - bottom, bottom)
}

/// Offset of bottom tree number `j` plus the BFS index of the node inside it.
///
/// `below` is how many levels the node sits under the bottom tree's root.
#[inline]
fn descend_into_bottom(bfs: u64, below: u32, top: u32) -> (u64, u64) {
    let j = (bfs >> below) - (1u64 << top);
    let local = (1u64 << below) | (bfs & ((1u64 << below) - 1));
    (j, local)
}

fn recursive_raw(bfs: u64, depth: u32, height: u32) -> u64 {
    if height == 1 {
        return 0;
    }
    let (top, bottom) = split(height);
    if depth <= top {
        return recursive_raw(bfs, depth, top);
    }
    let (j, local) = descend_into_bottom(bfs, depth - top - 1, top);
    tree_size(top) + j * tree_size(bottom) + recursive_raw(local, depth - top, bottom)
}

/// Reference conversion: the layout definition, applied recursively.
pub fn veb_pos_recursive(coord: NodeCoord, height: u32) -> Result<u64> {
    coord.check(height)?;
    Ok(recursive_raw(coord.0, coord.depth(), height))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Split {
    top: u32,
    bottom: u32,
    top_size: u64,
    bottom_size: u64,
}

/// Splits for every subtree height that can occur below a tree of height `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTable {
    height: u32,
    // indexed by subtree height; entries 0 and 1 are unused
    splits: Vec<Split>,
}

impl SplitTable {
    pub fn new(height: u32) -> Result<Self> {
        check_height(height)?;
        let mut splits = vec![
            Split {
                top: 0,
                bottom: 0,
                top_size: 0,
                bottom_size: 0
            };
            height as usize + 1
        ];
        for h in 2..=height {
            let (top, bottom) = split(h);
            splits[h as usize] = Split {
                top,
                bottom,
                top_size: tree_size(top),
                bottom_size: tree_size(bottom),
            };
        }
        Ok(SplitTable { height, splits })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    fn position(&self, mut bfs: u64, mut depth: u32) -> u64 {
        let mut h = self.height;
        let mut pos = 0;
        while h > 1 {
            let s = self.splits[h as usize];
            if depth <= s.top {
                h = s.top;
                continue;
            }
            let (j, local) = descend_into_bottom(bfs, depth - s.top - 1, s.top);
            pos += s.top_size + j * s.bottom_size;
            bfs = local;
            depth -= s.top;
            h = s.bottom;
        }
        pos
    }
}

/// Iterative conversion driven by a precomputed [`SplitTable`].
pub fn veb_pos_table(coord: NodeCoord, height: u32, table: &SplitTable) -> Result<u64> {
    if table.height != height {
        return Err(Error::TableMismatch {
            table: table.height,
            requested: height,
        });
    }
    coord.check(height)?;
    Ok(table.position(coord.0, coord.depth()))
}

/// Every round at least halves the remaining height, and heights fit in a
/// machine word, so `log2(w)` rounds always suffice.
const CONSTMEM_ROUNDS: u32 = u64::BITS.trailing_zeros();

#[inline]
fn constmem_raw(mut bfs: u64, mut depth: u32, mut h: u32) -> u64 {
    let mut pos = 0;
    for _ in 0..CONSTMEM_ROUNDS {
        if h == 1 {
            break;
        }
        let bottom = 1u32 << (u32::BITS - 1 - (h - 1).leading_zeros());
        let top = h - bottom;
        if depth <= top {
            h = top;
        } else {
            let below = depth - top - 1;
            let mask = (1u64 << below) - 1;
            pos += ((1u64 << top) - 1) + ((bfs >> below) - (1u64 << top)) * ((1u64 << bottom) - 1);
            bfs = (bfs & mask) | (mask + 1);
            depth -= top;
            h = bottom;
        }
    }
    debug_assert_eq!(h, 1);
    pos
}

/// Constant-memory conversion: no recursion, no table, bounded loop.
pub fn veb_pos_constmem(coord: NodeCoord, height: u32) -> Result<u64> {
    coord.check(height)?;
    Ok(constmem_raw(coord.0, coord.depth(), height))
}

/// Physical positions of the two children, or `None` at the bottom level.
pub fn children_positions(
    coord: NodeCoord,
    height: u32,
    kind: LayoutKind,
) -> Result<Option<(u64, u64)>> {
    coord.check(height)?;
    if coord.depth() == height {
        return Ok(None);
    }
    let layout = Layout::new(kind, height)?;
    Ok(Some((
        layout.position(coord.left()) as u64,
        layout.position(coord.right()) as u64,
    )))
}

/// Logical-to-physical map for one tree height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    kind: LayoutKind,
    height: u32,
    conversion: Conversion,
    table: Option<SplitTable>,
}

impl Layout {
    pub fn new(kind: LayoutKind, height: u32) -> Result<Self> {
        Self::with_conversion(kind, height, Conversion::default())
    }

    pub fn with_conversion(kind: LayoutKind, height: u32, conversion: Conversion) -> Result<Self> {
        check_height(height)?;
        let table = match (kind, conversion) {
            (LayoutKind::Veb, Conversion::Table) => Some(SplitTable::new(height)?),
            _ => None,
        };
        Ok(Layout {
            kind,
            height,
            conversion,
            table,
        })
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn conversion(&self) -> Conversion {
        self.conversion
    }

    /// Number of slots, `2^H − 1`.
    pub fn len(&self) -> usize {
        tree_size(self.height) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical slot of a node. The node must lie within the tree.
    #[inline]
    pub fn position(&self, coord: NodeCoord) -> usize {
        debug_assert!(coord.depth() <= self.height);
        let b = coord.0;
        let pos = match self.kind {
            LayoutKind::Bfs => b - 1,
            LayoutKind::Veb => match self.conversion {
                Conversion::Recursive => recursive_raw(b, coord.depth(), self.height),
                Conversion::Table => self
                    .table
                    .as_ref()
                    .expect("table layout")
                    .position(b, coord.depth()),
                Conversion::ConstMem => constmem_raw(b, coord.depth(), self.height),
            },
        };
        pos as usize
    }

    #[inline]
    pub fn children(&self, coord: NodeCoord) -> Option<(usize, usize)> {
        (coord.depth() < self.height)
            .then(|| (self.position(coord.left()), self.position(coord.right())))
    }

    /// BFS indices listed in physical order.
    pub fn physical_order(&self) -> Vec<u64> {
        let mut order = vec![0; self.len()];
        for b in 1..=tree_size(self.height) {
            order[self.position(NodeCoord(b))] = b;
        }
        order
    }
}
