use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cotree::bench::{
    self, default_roster, CsvSink, Experiment, RosterEntry, Structure, SweepConfig, Workload,
};
use cotree::{Conversion, Density, Result};

/// Benchmarks for cache-oblivious search trees.
#[derive(Parser)]
#[command(name = "cotree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the insertion and traversal experiments.
    Bench {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "inorder_insert,random_insert,inorder_traverse,random_traverse"
        )]
        experiments: Vec<Experiment>,
        /// Roster ids; defaults to small_bfs, small_veb, one btree per --order, splay, stdset.
        #[arg(long, value_delimiter = ',')]
        structures: Option<Vec<Structure>>,
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 22)]
        max_exp: u32,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seed: Vec<u64>,
        /// Root density of the small trees, as p/q or a decimal.
        #[arg(long, default_value = "1/2")]
        tau1: Density,
        /// B-tree minimum degrees.
        #[arg(long, value_delimiter = ',', default_value = "2,16")]
        order: Vec<usize>,
        /// BFS→vEB conversion used by small_veb.
        #[arg(long, default_value = "constmem")]
        conversion: Conversion,
        /// Timed runs per cell; the median is reported.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Time the three BFS→vEB conversion routines.
    Convert {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "recursive,table,constmem"
        )]
        variants: Vec<Conversion>,
        #[arg(long, default_value_t = 2)]
        min_height: u32,
        #[arg(long, default_value_t = 30)]
        max_height: u32,
        #[arg(long, default_value_t = 1_000_000)]
        reps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Count simulated cache transfers.
    Simulate {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "scan,binsearch,veb_search,bfs_search"
        )]
        workloads: Vec<Workload>,
        /// Explicit element counts; overrides the exponent range.
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u64>>,
        #[arg(long, default_value_t = 10)]
        min_exp: u32,
        #[arg(long, default_value_t = 20)]
        max_exp: u32,
        /// Elements per block.
        #[arg(long, default_value_t = 64)]
        block: u64,
        /// Resident blocks (M/B).
        #[arg(long, default_value_t = 16)]
        cache_blocks: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn open(out: &Output) -> Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bench {
            experiments,
            structures,
            min_exp,
            max_exp,
            seed,
            tau1,
            order,
            conversion,
            repeat,
            out,
        } => {
            let roster = match structures {
                Some(ids) => ids
                    .into_iter()
                    .map(|structure| RosterEntry {
                        structure,
                        density: tau1,
                        conversion,
                    })
                    .collect(),
                None => default_roster(&order, tau1, conversion),
            };
            let config = SweepConfig {
                experiments,
                roster,
                min_exp,
                max_exp,
                seeds: seed,
                repeat,
            };
            let mut sink = CsvSink::new(open(&out)?);
            bench::sweep(&config, |r| sink.write(&r))?;
            sink.finish()
        }
        Command::Convert {
            variants,
            min_height,
            max_height,
            reps,
            seed,
            out,
        } => {
            let mut sink = CsvSink::new(open(&out)?);
            for &variant in &variants {
                for height in min_height..=max_height {
                    sink.write(&bench::run_convert_bench(variant, height, reps, seed)?)?;
                }
            }
            sink.finish()
        }
        Command::Simulate {
            workloads,
            n,
            min_exp,
            max_exp,
            block,
            cache_blocks,
            seed,
            out,
        } => {
            let sizes = n.unwrap_or_else(|| (min_exp..=max_exp).map(|e| 1u64 << e).collect());
            let mut sink = CsvSink::new(open(&out)?);
            for &workload in &workloads {
                for &size in &sizes {
                    sink.write(&bench::run_simulate(
                        workload,
                        size,
                        block,
                        cache_blocks,
                        seed,
                    )?)?;
                }
            }
            sink.finish()
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cotree: {e}");
            ExitCode::FAILURE
        }
    }
}
