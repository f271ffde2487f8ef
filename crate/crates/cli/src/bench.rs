//! Bench harness: families x sizes x seeds, one record per run.

use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use recolor::generators::{gen_colouring, gen_instance, scramble, GenSpec, ListPolicy};
use recolor::list_recolor::{transform_k, transform_k_bound};
use recolor::oracle::{bfs_distance, Reach};
use recolor::planar::{planar_bound, transform_planar_bipartite, PLANAR_COLOURS};
use recolor::{ErrorCategory, ListInstance};

use crate::{family, self_verify, CmdResult, FamilyArg, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Degenerate,
    PlanarBipartite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',', num_args = 0..)]
    family: Vec<FamilyArg>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sizes: Vec<usize>,
    /// Runs per (family, size); seeds are `seed_base..seed_base + seeds`.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long, value_enum, default_value = "degenerate")]
    mode: BenchMode,
    #[arg(long = "colors", default_value_t = 5)]
    colors: usize,
    /// Degeneracy of the random-d-degenerate family.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Also compute the exact distance when the state space is small enough.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 1_000_000)]
    oracle_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads; all cores when unset.
    #[arg(long, env = "RECOLOR_JOBS")]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub seed: u64,
    pub engine: &'static str,
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub d: usize,
    pub length: usize,
    pub bound: String,
    pub max_per_vertex: usize,
    pub wall_ms: f64,
    pub oracle_distance: Option<usize>,
    pub pass: bool,
    pub error: Option<String>,
}

struct Row {
    family: FamilyArg,
    size: usize,
    seed: u64,
}

fn run_row(args: &BenchArgs, row: &Row) -> Result<BenchRecord, Failure> {
    let (fam, n) = family(row.family, row.size, args.d, None, None)?;
    let k = match args.mode {
        BenchMode::Degenerate => args.colors,
        BenchMode::PlanarBipartite => PLANAR_COLOURS as usize,
    };
    let spec = GenSpec { family: fam, n, seed: row.seed, lists: ListPolicy::Classical { k }, a: 0 };
    let repro = format!("{fam:?} n={n} seed={}", row.seed);
    let (inst, emb) = gen_instance(&spec)?;
    let d = inst.ordering().d();
    let alpha = scramble(&inst, &gen_colouring(&inst, row.seed)?, 3 * n, row.seed ^ 1);
    let beta = scramble(&inst, &gen_colouring(&inst, row.seed.wrapping_add(1 << 32))?, 3 * n, row.seed ^ 2);
    let mut record = BenchRecord {
        instance: format!("{fam:?} n={n}"),
        seed: row.seed,
        engine: "",
        n,
        k,
        a: inst.a(),
        d,
        length: 0,
        bound: String::new(),
        max_per_vertex: 0,
        wall_ms: 0.0,
        oracle_distance: None,
        pass: false,
        error: None,
    };
    let t = Instant::now();
    let (result, bound, check) = match args.mode {
        BenchMode::Degenerate => {
            record.engine = "transform-k";
            (transform_k(inst.graph(), k, &alpha, &beta), transform_k_bound(n, k, d), inst.clone())
        }
        BenchMode::PlanarBipartite => {
            record.engine = "planar-bipartite";
            let emb = emb.ok_or_else(|| Failure::input(format!("{repro}: planar-bipartite mode needs an embedded family")))?;
            let five = ListInstance::uniform(inst.graph().clone(), PLANAR_COLOURS as usize, 0)?;
            (transform_planar_bipartite(&emb, &alpha, &beta), planar_bound(n), five)
        }
    };
    record.wall_ms = t.elapsed().as_secs_f64() * 1e3;
    record.bound = bound.to_string();
    let seq = match result {
        Ok(s) => s,
        Err(e) if e.category() == ErrorCategory::Internal => {
            return Err(Failure::internal(format!("{repro}: {e}")));
        }
        Err(e) => {
            record.error = Some(e.to_string());
            return Ok(record);
        }
    };
    self_verify(&check, &alpha, &seq, &beta).map_err(|f| Failure::internal(format!("{repro}: {}", f.message)))?;
    record.length = seq.len();
    record.max_per_vertex = seq.max_per_vertex(n);
    record.pass = seq.len() as u128 <= bound;
    if args.oracle {
        if let Ok(Reach::Exact(dist)) = bfs_distance(&check, &alpha, &beta, args.oracle_cap) {
            record.oracle_distance = Some(dist);
        }
    }
    Ok(record)
}

fn render(records: &[BenchRecord], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(records).expect("records serialise")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if records.is_empty() {
                w.write_record([
                    "instance", "seed", "engine", "n", "k", "a", "d", "length", "bound", "max_per_vertex", "wall_ms",
                    "oracle_distance", "pass", "error",
                ])
                .expect("in-memory write");
            }
            for r in records {
                w.serialize(r).map_err(|e| Failure::internal(format!("csv: {e}")))?;
            }
            Ok(String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8"))
        }
    }
}

pub fn run(args: &BenchArgs) -> CmdResult {
    let rows: Vec<Row> = args
        .family
        .iter()
        .flat_map(|&f| args.sizes.iter().map(move |&s| (f, s)))
        .flat_map(|(family, size)| (args.seed_base..args.seed_base + args.seeds).map(move |seed| Row { family, size, seed }))
        .collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| Failure::internal(format!("thread pool: {e}")))?;
    let records: Vec<BenchRecord> =
        pool.install(|| rows.par_iter().map(|r| run_row(args, r)).collect::<Result<_, _>>())?;
    let text = render(&records, args.format)?;
    match &args.out {
        Some(p) => crate::write(p, &text)?,
        None => print!("{text}"),
    }
    let passed = records.iter().filter(|r| r.pass).count();
    eprintln!("{} records, {passed} pass, {} fail", records.len(), records.len() - passed);
    if passed == records.len() {
        Ok(())
    } else {
        Err(Failure::rejected(format!("{} of {} runs did not pass", records.len() - passed, records.len())))
    }
}
