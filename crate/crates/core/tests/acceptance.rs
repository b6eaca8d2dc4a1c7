//! Exit-gate checks. Runs as a plain binary so every criterion prints its
//! own PASS/FAIL line; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{conformance, random_distinct_sorted, veb_positions};
use cotree::baselines::{BTree, SplayTree};
use cotree::bench::{default_roster, sweep_to_path, SweepConfig, CSV_HEADER};
use cotree::cache_sim::CacheSim;
use cotree::layout::{tree_size, veb_pos_constmem, veb_pos_recursive, veb_pos_table, SplitTable};
use cotree::{Conversion, Density, LayoutKind, NodeCoord, PackedTree, StaticTree, MAX_HEIGHT};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coord(b: u64) -> NodeCoord {
    NodeCoord::new(b).unwrap()
}

fn conversion_correctness() -> Outcome {
    let start = Instant::now();
    let mut cases = 0u64;
    for h in 1..=20 {
        let table = SplitTable::new(h).unwrap();
        for b in 1..=tree_size(h) {
            let c = coord(b);
            let want = veb_pos_recursive(c, h).unwrap();
            let t = veb_pos_table(c, h, &table).unwrap();
            let k = veb_pos_constmem(c, h).unwrap();
            ensure(t == want && k == want, || {
                format!("h={h} b={b}: recursive {want}, table {t}, constmem {k}")
            })?;
            cases += 1;
        }
    }
    let exhaustive = start.elapsed();
    ensure(exhaustive < Duration::from_secs(10), || {
        format!("exhaustive sweep took {exhaustive:?}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    const SAMPLES: u64 = 1_000_000;
    for h in 21..=MAX_HEIGHT {
        let table = SplitTable::new(h).unwrap();
        for _ in 0..SAMPLES {
            let c = coord(rng.gen_range(1..=tree_size(h)));
            let want = veb_pos_recursive(c, h).unwrap();
            let t = veb_pos_table(c, h, &table).unwrap();
            let k = veb_pos_constmem(c, h).unwrap();
            ensure(t == want && k == want, || {
                format!("h={h} b={}: {want} / {t} / {k}", c.bfs_index())
            })?;
        }
    }
    Ok(format!(
        "{cases} exhaustive cases (H 1..20) in {exhaustive:.2?}; {SAMPLES} samples at each H 21..{MAX_HEIGHT}"
    ))
}

fn layout_ground_truth() -> Outcome {
    let by_position = |h: u32| {
        let mut order = vec![0; tree_size(h) as usize];
        for b in 1..=tree_size(h) {
            order[veb_pos_recursive(coord(b), h).unwrap() as usize] = b;
        }
        order
    };
    let h3 = by_position(3);
    let h4 = by_position(4);
    ensure(h3 == [1, 2, 4, 5, 3, 6, 7], || format!("H=3 order {h3:?}"))?;
    ensure(
        h4 == [1, 2, 3, 4, 8, 9, 5, 10, 11, 6, 12, 13, 7, 14, 15],
        || format!("H=4 order {h4:?}"),
    )?;
    let pos3: Vec<u64> = (1..=7)
        .map(|b| veb_pos_recursive(coord(b), 3).unwrap())
        .collect();
    ensure(pos3 == [0, 1, 4, 2, 3, 5, 6], || {
        format!("H=3 positions {pos3:?}")
    })?;
    for h in [3, 4] {
        let oracle = veb_positions(h);
        for b in 1..=tree_size(h) {
            ensure(
                veb_pos_recursive(coord(b), h).unwrap() == oracle[b as usize],
                || format!("enumerator disagrees at H={h} b={b}"),
            )?;
        }
    }
    Ok("H=3 and H=4 permutations match the hand-derived arrays and the enumerator".into())
}

fn dictionary_conformance() -> Outcome {
    let start = Instant::now();
    const OPS: usize = 100_000;
    const RANGE: u64 = 60_000;
    let seeds = [11, 22, 33];
    let seventy = Density::new(7, 10).unwrap();
    let mut runs = 0;
    for &seed in &seeds {
        for density in [Density::HALF, seventy] {
            for kind in [LayoutKind::Bfs, LayoutKind::Veb] {
                let mut t = PackedTree::new(density, kind);
                conformance(&mut t, OPS, RANGE, seed)
                    .map_err(|e| format!("packed {kind:?} τ₁={density}: {e}"))?;
                t.check_invariants()
                    .map_err(|e| format!("packed {kind:?} τ₁={density}: {e}"))?;
                runs += 1;
            }
        }
        for order in [2, 16] {
            let mut t = BTree::new(order);
            conformance(&mut t, OPS, RANGE, seed).map_err(|e| format!("btree{order}: {e}"))?;
            t.check_invariants()
                .map_err(|e| format!("btree{order}: {e}"))?;
            runs += 1;
        }
        let mut s = SplayTree::new();
        conformance(&mut s, OPS, RANGE, seed).map_err(|e| format!("splay: {e}"))?;
        s.check_invariants()?;
        runs += 1;

        for kind in [LayoutKind::Bfs, LayoutKind::Veb] {
            let keys = random_distinct_sorted(30_000, seed);
            let t = StaticTree::build(&keys, kind).map_err(|e| e.to_string())?;
            ensure(t.inorder() == keys, || {
                format!("static {kind:?}: in-order differs")
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..OPS {
                let q = rng.gen_range(0..keys.len() as u64 * 20);
                ensure(t.contains(q) == keys.binary_search(&q).is_ok(), || {
                    format!("static {kind:?}: contains({q}) wrong")
                })?;
            }
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{runs} workloads of {OPS} ops over {} seeds in {elapsed:.2?}",
        seeds.len()
    ))
}

fn rebalance_spread_bound() -> Outcome {
    let mut checked = 0;
    for (kind, seed) in [(LayoutKind::Bfs, 1), (LayoutKind::Veb, 2)] {
        let mut t = PackedTree::new(Density::HALF, kind);
        t.enable_audit();
        let mut keys: Vec<u64> = (0..10_000).collect();
        keys.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        for k in keys {
            t.insert(k).map_err(|e| e.to_string())?;
        }
        let audit = t.audit().unwrap();
        ensure(audit.checked == t.stats().rebalances, || {
            "some rebalances were not audited".into()
        })?;
        ensure(audit.spread_violations == 0, || {
            format!(
                "{kind:?}: {} descendants violate N(w) < N(v)(1+S(w))/S(v)",
                audit.spread_violations
            )
        })?;
        ensure(audit.density_violations == 0, || {
            format!(
                "{kind:?}: {} rebuilds exceed τ_d·S(v)+1",
                audit.density_violations
            )
        })?;
        checked += audit.checked;
    }
    Ok(format!(
        "{checked} rebalances audited across 2×10^4 insertions, no violations"
    ))
}

fn scan_bound() -> Outcome {
    let mut cells = 0;
    for block in [1u64, 2, 4, 8, 16, 64] {
        for n in 1..=1000u64 {
            let ceil = n.div_ceil(block);
            let mut sim = CacheSim::new(block, 8).unwrap();
            let aligned = sim.count_scan(n);
            ensure(aligned == ceil, || {
                format!("N={n} B={block}: {aligned} transfers at offset 0, expected {ceil}")
            })?;
            for offset in 1..block {
                let mut sim = CacheSim::new(block, 8).unwrap().with_base_offset(offset);
                let t = sim.count_scan(n);
                ensure(t <= ceil + 1, || {
                    format!("N={n} B={block} offset {offset}: {t} > {}", ceil + 1)
                })?;
            }
            cells += 1;
        }
    }
    Ok(format!(
        "{cells} (N, B) cells: exactly ⌈N/B⌉ aligned, ≤ ⌈N/B⌉+1 at every offset"
    ))
}

fn binary_search_bound() -> Outcome {
    let block = 64;
    let mut sim = CacheSim::new(block, 16).unwrap();
    // rank 0 attains the maximum over all ranks
    let n16 = 1u64 << 16;
    let exhaustive = (0..n16)
        .map(|r| sim.count_binary_search(n16, r).unwrap())
        .max()
        .unwrap();
    let rank0 = sim.count_binary_search(n16, 0).unwrap();
    ensure(exhaustive == rank0, || {
        format!("rank 0 gives {rank0}, worst over all ranks is {exhaustive}")
    })?;

    let counts: Vec<u64> = (16..=24)
        .map(|e| sim.count_binary_search(1 << e, 0).unwrap())
        .collect();
    for (i, w) in counts.windows(2).enumerate() {
        ensure(w[1] == w[0] + 1, || {
            format!("N=2^{} → 2^{}: {} → {}", 16 + i, 17 + i, w[0], w[1])
        })?;
    }
    Ok(format!(
        "B=64 worst-rank transfers for N=2^16..2^24: {counts:?}"
    ))
}

fn veb_search_bound() -> Outcome {
    let n = (1u64 << 20) - 1;
    let keys: Vec<u64> = (0..n).collect();
    let veb = StaticTree::build(&keys, LayoutKind::Veb).unwrap();
    let bfs = StaticTree::build(&keys, LayoutKind::Bfs).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sample: Vec<u64> = (0..1000).map(|_| rng.gen_range(0..n)).collect();
    let log_n = 20.0f64;
    let mut notes = Vec::new();
    for block in [8u64, 64, 256] {
        let mut sim = CacheSim::new(block, 16).unwrap();
        let limit = 4 * (log_n / (block as f64).log2()).ceil() as u64;
        let worst = sim.worst_tree_search(&veb);
        ensure(worst <= limit, || {
            format!("B={block}: worst vEB search {worst} > {limit}")
        })?;
        let mean_veb = sim.mean_tree_search(&veb, &sample);
        let mean_bfs = sim.mean_tree_search(&bfs, &sample);
        ensure(mean_veb < mean_bfs, || {
            format!("B={block}: mean vEB {mean_veb} ≥ mean BFS {mean_bfs}")
        })?;
        notes.push(format!(
            "B={block}: worst {worst}≤{limit}, mean {mean_veb:.2}<{mean_bfs:.2}"
        ));
    }
    let mut sim = CacheSim::new(64, 16).unwrap();
    let bfs_worst = sim.worst_tree_search(&bfs);
    ensure(bfs_worst + 2 >= 20 - 6, || {
        format!("BFS worst {bfs_worst} below log N − log B − 2")
    })?;
    Ok(notes.join("; "))
}

fn amortized_insertion() -> Outcome {
    let per_insert = |exp: u32| {
        let n = 1u64 << exp;
        let mut keys: Vec<u64> = (0..n).collect();
        keys.shuffle(&mut ChaCha8Rng::seed_from_u64(99));
        let mut t = PackedTree::new(Density::HALF, LayoutKind::Bfs);
        for k in keys {
            t.insert(k).unwrap();
        }
        t.stats().elements_moved as f64 / (n as f64 * (exp as f64).powi(2))
    };
    let c = per_insert(10);
    let mut notes = vec![format!("c={c:.4} at 2^10")];
    for exp in [14, 18] {
        let ratio = per_insert(exp);
        ensure(ratio < 1.25 * c, || {
            format!("2^{exp}: moved/(N log²N) = {ratio:.4} ≥ 1.25·{c:.4}")
        })?;
        notes.push(format!("{ratio:.4} at 2^{exp}"));
    }
    Ok(notes.join(", "))
}

fn bench_harness() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = SweepConfig {
        roster: default_roster(&[2, 16], Density::HALF, Conversion::default()),
        min_exp: 10,
        max_exp: 16,
        seeds: vec![7],
        ..SweepConfig::default()
    };
    let strip = |path: &std::path::Path| -> Result<Vec<String>, String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let mut lines = text.lines();
        ensure(lines.next() == Some(CSV_HEADER), || {
            "header mismatch".into()
        })?;
        Ok(lines
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                [f[0], f[1], f[2], f[3], f[6]].join(",")
            })
            .collect())
    };
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    sweep_to_path(&config, &first).map_err(|e| e.to_string())?;
    sweep_to_path(&config, &second).map_err(|e| e.to_string())?;
    let (a, b) = (strip(&first)?, strip(&second)?);
    ensure(a.len() == config.row_count(), || {
        format!("{} rows, expected {}", a.len(), config.row_count())
    })?;
    ensure(a == b, || "non-timing columns differ between reruns".into())?;
    Ok(format!(
        "{} rows × 2 runs, identical non-timing columns",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("conversion correctness", conversion_correctness),
        ("layout ground truth", layout_ground_truth),
        ("dictionary conformance", dictionary_conformance),
        ("rebalance spread bound", rebalance_spread_bound),
        ("scan bound", scan_bound),
        ("binary-search bound", binary_search_bound),
        ("vEB search bound", veb_search_bound),
        ("amortized insertion", amortized_insertion),
        ("bench harness", bench_harness),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{took:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{took:.2?}]: {why}");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
