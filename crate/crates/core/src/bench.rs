//! Timing harness: the four dictionary experiments, the index-conversion
//! microbenchmark, and cache-simulator runs, all emitting one CSV schema.
//!
//! ```text
//! experiment,structure,n,seed,total_ns,ns_per_op,extra
//! ```
//!
//! Everything except `total_ns` and `ns_per_op` is a deterministic function
//! of the configuration and seeds.

use std::collections::BTreeSet;
use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baselines::{BTree, SplayTree};
use crate::cache_sim::CacheSim;
use crate::layout::{tree_size, Conversion, Layout, LayoutKind, NodeCoord};
use crate::{Density, Dictionary, Error, Key, PackedTree, Result, StaticTree, MAX_HEIGHT};

pub const CSV_HEADER: &str = "experiment,structure,n,seed,total_ns,ns_per_op,extra";

/// The four dictionary workloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    /// Insert `0..N` ascending.
    InorderInsert,
    /// Insert a seeded permutation of `0..N`.
    RandomInsert,
    /// After an untimed random insertion, look up every key ascending.
    InorderTraverse,
    /// After an untimed random insertion, look up every key in a second
    /// permutation that differs from the insertion order.
    RandomTraverse,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::InorderInsert,
        Experiment::RandomInsert,
        Experiment::InorderTraverse,
        Experiment::RandomTraverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::InorderInsert => "inorder_insert",
            Experiment::RandomInsert => "random_insert",
            Experiment::InorderTraverse => "inorder_traverse",
            Experiment::RandomTraverse => "random_traverse",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown experiment {s:?}")))
    }
}

/// Which dictionary a roster entry builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    SmallBfs,
    SmallVeb,
    /// B-tree with the given minimum degree.
    BTree(usize),
    Splay,
    /// `std::collections::BTreeSet`.
    StdSet,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::SmallBfs => f.write_str("small_bfs"),
            Structure::SmallVeb => f.write_str("small_veb"),
            Structure::BTree(t) => write!(f, "btree{t}"),
            Structure::Splay => f.write_str("splay"),
            Structure::StdSet => f.write_str("stdset"),
        }
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small_bfs" => Ok(Structure::SmallBfs),
            "small_veb" => Ok(Structure::SmallVeb),
            "splay" => Ok(Structure::Splay),
            "stdset" => Ok(Structure::StdSet),
            _ => match s.strip_prefix("btree").map(str::parse::<usize>) {
                Some(Ok(t)) if t >= 2 => Ok(Structure::BTree(t)),
                _ => Err(Error::Usage(format!("unknown structure {s:?}"))),
            },
        }
    }
}

/// A structure plus its construction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RosterEntry {
    pub structure: Structure,
    pub density: Density,
    pub conversion: Conversion,
}

impl RosterEntry {
    pub fn new(structure: Structure) -> Self {
        RosterEntry {
            structure,
            density: Density::HALF,
            conversion: Conversion::default(),
        }
    }

    pub fn id(&self) -> String {
        self.structure.to_string()
    }
}

/// small_bfs, small_veb, B-trees of the given orders, splay, stdset.
pub fn default_roster(
    orders: &[usize],
    density: Density,
    conversion: Conversion,
) -> Vec<RosterEntry> {
    let mut structures = vec![Structure::SmallBfs, Structure::SmallVeb];
    structures.extend(orders.iter().map(|&t| Structure::BTree(t)));
    structures.extend([Structure::Splay, Structure::StdSet]);
    structures
        .into_iter()
        .map(|structure| RosterEntry {
            structure,
            density,
            conversion,
        })
        .collect()
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub experiment: String,
    pub structure: String,
    pub n: u64,
    pub seed: u64,
    pub total_ns: u64,
    pub ns_per_op: f64,
    pub extra: String,
}

impl BenchRecord {
    /// The columns that must reproduce exactly for a fixed configuration.
    pub fn deterministic_part(&self) -> (&str, &str, u64, u64, &str) {
        (
            &self.experiment,
            &self.structure,
            self.n,
            self.seed,
            &self.extra,
        )
    }
}

fn fnv1a(values: impl IntoIterator<Item = u64>) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for v in values {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Insertion permutation and random-lookup permutation of `0..n`.
///
/// The lookup order is guaranteed to differ from the insertion order
/// whenever `n ≥ 2`.
pub fn key_orders(n: u64, seed: u64) -> (Vec<Key>, Vec<Key>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut insert: Vec<Key> = (0..n).collect();
    insert.shuffle(&mut rng);
    let mut lookup: Vec<Key> = (0..n).collect();
    lookup.shuffle(&mut rng);
    if n >= 2 && lookup == insert {
        lookup.rotate_left(1);
    }
    (insert, lookup)
}

fn timed_phase<D: Dictionary>(
    experiment: Experiment,
    make: &impl Fn() -> D,
    n: u64,
    orders: &(Vec<Key>, Vec<Key>),
) -> Result<u64> {
    let (insert_order, lookup_order) = orders;
    match experiment {
        Experiment::InorderInsert | Experiment::RandomInsert => {
            let mut d = make();
            let start = Instant::now();
            if experiment == Experiment::InorderInsert {
                for k in 0..n {
                    d.insert(k)?;
                }
            } else {
                for &k in insert_order {
                    d.insert(k)?;
                }
            }
            let elapsed = start.elapsed().as_nanos() as u64;
            if d.len() as u64 != n {
                return Err(Error::Verification(format!(
                    "expected {n} keys, structure holds {}",
                    d.len()
                )));
            }
            black_box(&d);
            Ok(elapsed)
        }
        Experiment::InorderTraverse | Experiment::RandomTraverse => {
            let mut d = make();
            for &k in insert_order {
                d.insert(k)?;
            }
            let mut hits = 0u64;
            let start = Instant::now();
            if experiment == Experiment::InorderTraverse {
                for k in 0..n {
                    hits += u64::from(d.contains(black_box(k)));
                }
            } else {
                for &k in lookup_order {
                    hits += u64::from(d.contains(black_box(k)));
                }
            }
            let elapsed = start.elapsed().as_nanos() as u64;
            if hits != n {
                return Err(Error::Verification(format!(
                    "{hits} of {n} lookups succeeded"
                )));
            }
            Ok(elapsed)
        }
    }
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn measure<D: Dictionary>(
    experiment: Experiment,
    make: impl Fn() -> D,
    n: u64,
    orders: &(Vec<Key>, Vec<Key>),
    repeat: usize,
) -> Result<u64> {
    timed_phase(experiment, &make, n, orders)?; // warm-up
    let samples = (0..repeat.max(1))
        .map(|_| timed_phase(experiment, &make, n, orders))
        .collect::<Result<Vec<_>>>()?;
    Ok(median(samples))
}

/// Runs one experiment once (after a warm-up).
pub fn run_experiment(
    experiment: Experiment,
    entry: &RosterEntry,
    n: u64,
    seed: u64,
) -> Result<BenchRecord> {
    run_experiment_repeated(experiment, entry, n, seed, 1)
}

/// Runs one experiment `repeat` times after a warm-up and keeps the median.
pub fn run_experiment_repeated(
    experiment: Experiment,
    entry: &RosterEntry,
    n: u64,
    seed: u64,
    repeat: usize,
) -> Result<BenchRecord> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    let orders = key_orders(n, seed);
    let RosterEntry {
        density,
        conversion,
        ..
    } = *entry;
    let total_ns = match entry.structure {
        Structure::SmallBfs => measure(
            experiment,
            || PackedTree::with_conversion(density, LayoutKind::Bfs, conversion),
            n,
            &orders,
            repeat,
        )?,
        Structure::SmallVeb => measure(
            experiment,
            || PackedTree::with_conversion(density, LayoutKind::Veb, conversion),
            n,
            &orders,
            repeat,
        )?,
        Structure::BTree(t) => measure(experiment, || BTree::<Key>::new(t), n, &orders, repeat)?,
        Structure::Splay => measure(experiment, SplayTree::<Key>::new, n, &orders, repeat)?,
        Structure::StdSet => measure(experiment, BTreeSet::<Key>::new, n, &orders, repeat)?,
    };
    let digest = match experiment {
        Experiment::InorderInsert => fnv1a(0..n),
        Experiment::RandomInsert => fnv1a(orders.0.iter().copied()),
        Experiment::InorderTraverse => fnv1a(orders.0.iter().copied().chain(0..n)),
        Experiment::RandomTraverse => fnv1a(orders.0.iter().chain(&orders.1).copied()),
    };
    Ok(BenchRecord {
        experiment: experiment.name().into(),
        structure: entry.id(),
        n,
        seed,
        total_ns,
        ns_per_op: total_ns as f64 / n as f64,
        extra: format!("order={digest:016x}"),
    })
}

/// Times `repetitions` BFS→vEB conversions over a seeded stream of indices.
///
/// `n` in the record is the tree height; `extra` carries the repetition
/// count and an order-sensitive checksum of every converted position, which
/// must agree across variants for the same seed and height.
pub fn run_convert_bench(
    variant: Conversion,
    height: u32,
    repetitions: u64,
    seed: u64,
) -> Result<BenchRecord> {
    if height == 0 || height > MAX_HEIGHT {
        return Err(Error::Usage(format!(
            "height must be in 1..={MAX_HEIGHT}, got {height}"
        )));
    }
    if repetitions == 0 {
        return Err(Error::Usage("repetitions must be positive".into()));
    }
    let layout = Layout::with_conversion(LayoutKind::Veb, height, variant)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices: Vec<NodeCoord> = (0..repetitions)
        .map(|_| NodeCoord::from_raw(rng.gen_range(1..=tree_size(height))))
        .collect();

    let run = || {
        let mut acc = 0u64;
        for &c in &indices {
            acc = acc
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(layout.position(black_box(c)) as u64);
        }
        acc
    };
    black_box(run());
    let start = Instant::now();
    let checksum = black_box(run());
    let total_ns = (start.elapsed().as_nanos() as u64).max(1);
    Ok(BenchRecord {
        experiment: "convert".into(),
        structure: variant.name().into(),
        n: height as u64,
        seed,
        total_ns,
        ns_per_op: total_ns as f64 / repetitions as f64,
        extra: format!("reps={repetitions};checksum={checksum:016x}"),
    })
}

/// Cache-simulator workloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Workload {
    /// Sequential read of the whole array.
    Scan,
    /// Binary search for rank 0, the costliest rank.
    BinSearch,
    /// Mean cost of searching random stored keys in a vEB static tree.
    VebSearch,
    /// Same, BFS static tree.
    BfsSearch,
}

/// Number of keys sampled by the tree-search workloads.
pub const SEARCH_SAMPLES: usize = 1000;

impl Workload {
    pub const ALL: [Workload; 4] = [
        Workload::Scan,
        Workload::BinSearch,
        Workload::VebSearch,
        Workload::BfsSearch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Workload::Scan => "scan",
            Workload::BinSearch => "binsearch",
            Workload::VebSearch => "veb_search",
            Workload::BfsSearch => "bfs_search",
        }
    }
}

impl FromStr for Workload {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Workload::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown workload {s:?}")))
    }
}

/// Simulated transfer count for one workload; `extra` reads
/// `B=<block>;M=<blocks>;transfers=<count>`.
pub fn run_simulate(
    workload: Workload,
    n: u64,
    block: u64,
    cache_blocks: usize,
    seed: u64,
) -> Result<BenchRecord> {
    if n == 0 {
        return Err(Error::Usage("N must be at least 1".into()));
    }
    let mut sim = CacheSim::new(block, cache_blocks)?;
    let start = Instant::now();
    let transfers = match workload {
        Workload::Scan => sim.count_scan(n).to_string(),
        Workload::BinSearch => sim.count_binary_search(n, 0)?.to_string(),
        Workload::VebSearch | Workload::BfsSearch => {
            let kind = if workload == Workload::VebSearch {
                LayoutKind::Veb
            } else {
                LayoutKind::Bfs
            };
            let keys: Vec<Key> = (0..n).collect();
            let tree = StaticTree::build(&keys, kind)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample: Vec<Key> = (0..SEARCH_SAMPLES).map(|_| rng.gen_range(0..n)).collect();
            format!("{:.3}", sim.mean_tree_search(&tree, &sample))
        }
    };
    let total_ns = (start.elapsed().as_nanos() as u64).max(1);
    Ok(BenchRecord {
        experiment: "simulate".into(),
        structure: workload.name().into(),
        n,
        seed,
        total_ns,
        ns_per_op: total_ns as f64 / n as f64,
        extra: format!("B={block};M={cache_blocks};transfers={transfers}"),
    })
}

/// Cartesian product of the four experiments over a roster.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub experiments: Vec<Experiment>,
    pub roster: Vec<RosterEntry>,
    pub min_exp: u32,
    pub max_exp: u32,
    pub seeds: Vec<u64>,
    pub repeat: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            experiments: Experiment::ALL.to_vec(),
            roster: default_roster(&[2, 16], Density::HALF, Conversion::default()),
            min_exp: 10,
            max_exp: 22,
            seeds: vec![1],
            repeat: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_exp > self.max_exp || self.max_exp >= 40 {
            return Err(Error::Usage(format!(
                "bad exponent range {}..={}",
                self.min_exp, self.max_exp
            )));
        }
        if self.experiments.is_empty() || self.roster.is_empty() || self.seeds.is_empty() {
            return Err(Error::Usage(
                "experiments, structures and seeds must be non-empty".into(),
            ));
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.experiments.len()
            * self.roster.len()
            * (self.max_exp - self.min_exp + 1) as usize
            * self.seeds.len()
    }
}

/// Runs every cell of the sweep in a fixed order, handing each row to `sink`.
pub fn sweep(config: &SweepConfig, mut sink: impl FnMut(BenchRecord) -> Result<()>) -> Result<()> {
    config.validate()?;
    for &experiment in &config.experiments {
        for entry in &config.roster {
            for exp in config.min_exp..=config.max_exp {
                for &seed in &config.seeds {
                    sink(run_experiment_repeated(
                        experiment,
                        entry,
                        1 << exp,
                        seed,
                        config.repeat,
                    )?)?;
                }
            }
        }
    }
    Ok(())
}

/// Streams records into CSV with the standard header.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Self {
        CsvSink {
            writer: csv::Writer::from_writer(inner),
        }
    }

    pub fn write(&mut self, record: &BenchRecord) -> Result<()> {
        self.writer.serialize(record)?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }
}

/// Runs a sweep and writes the CSV to `path`.
pub fn sweep_to_path(config: &SweepConfig, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut sink = CsvSink::new(std::io::BufWriter::new(file));
    sweep(config, |r| sink.write(&r))?;
    sink.finish()
}
