use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tree height {0} is outside 1..={max}", max = crate::MAX_HEIGHT)]
    InvalidHeight(u32),

    #[error("BFS index {index} is not a node of a tree of height {height}")]
    IndexOutOfRange { index: u64, height: u32 },

    #[error("split table was built for height {table}, not {requested}")]
    TableMismatch { table: u32, requested: u32 },

    #[error("cannot build a tree from an empty key sequence")]
    EmptyInput,

    #[error("keys must be strictly increasing (position {0})")]
    NotIncreasing(usize),

    #[error("key {0:#x} is reserved as the empty-slot marker")]
    ReservedKey(u64),

    #[error("density parameter {num}/{den} is outside [1/2, 1)")]
    DensityOutOfRange { num: u64, den: u64 },

    #[error("could not parse density parameter {0:?}")]
    BadDensity(String),

    #[error("tree cannot grow past height {}", crate::MAX_HEIGHT)]
    HeightLimit,

    #[error("cache needs a nonzero power-of-two block size and nonzero capacity (got B={block_size}, blocks={capacity_blocks})")]
    InvalidCache {
        block_size: u64,
        capacity_blocks: usize,
    },

    #[error("rank {rank} out of range for an array of {len} elements")]
    RankOutOfRange { rank: u64, len: u64 },

    #[error("benchmark check failed: {0}")]
    Verification(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
