//! `recolor`: build, check and bound recolouring sequences from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 unsupported regime or rejected
//! sequence, 3 internal invariant violation.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use recolor::generators::{gen_colouring, gen_instance, Family, GenSpec, ListPolicy};
use recolor::io::{parse_colouring, parse_graph, parse_sequence, to_json, GraphFile, SequenceFile};
use recolor::list_recolor::{bound_recursion, theorem_bound, transform_k, transform_k_bound, transform_list, BoundParams};
use recolor::oracle::{bfs_distance, exact_diameter, is_connected, DEFAULT_STATE_CAP};
use recolor::planar::{audit, find_configuration, levels, planar_bound, transform_planar_bipartite, PLANAR_COLOURS};
use recolor::{degeneracy_ordering, validate_sequence, Colouring, ErrorCategory, ListInstance, RecolorError, RecoloringSequence};

#[derive(Parser)]
#[command(name = "recolor", version, about = "Recolouring sequences for degenerate and planar bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Degenerate,
    PlanarBipartite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Path,
    Cycle,
    Tree,
    Grid,
    RandomDDegenerate,
    RandomPlanarBipartite,
    Quadrangulation,
}

#[derive(clap::Args)]
struct ColourArgs {
    /// Full lists 0..k; not allowed when the graph file carries lists.
    #[arg(long = "colors")]
    colors: Option<usize>,
    /// Slack of the list assignment; defaults to the largest the lists allow.
    #[arg(long)]
    a: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a recolouring sequence between two colourings.
    Transform {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "from")]
        from: Option<PathBuf>,
        #[arg(long = "to")]
        to: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "degenerate")]
        mode: Mode,
        #[command(flatten)]
        colours: ColourArgs,
        /// Sequence output; stdout when absent (the summary then goes to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the guaranteed bound without transforming.
        #[arg(long)]
        bound_only: bool,
    },
    /// Check a sequence step by step.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "from")]
        from: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long = "to")]
        to: PathBuf,
        #[command(flatten)]
        colours: ColourArgs,
    },
    /// Evaluate the length bound for given parameters.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// List slack.
        #[arg(long, conflicts_with = "d")]
        a: Option<usize>,
        /// Degeneracy, for classical colourings.
        #[arg(long)]
        d: Option<usize>,
        /// `num/den`.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Exhaustive search on small instances.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Generate a graph and optionally colourings.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random lists drawn from 0..palette instead of full lists.
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 1)]
        a: usize,
        /// Number of colours used for `--colouring` when lists are full.
        #[arg(long = "colors", default_value_t = 5)]
        colors: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a colouring here; repeat for more, each with the next seed.
        #[arg(long)]
        colouring: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        colouring_seed: u64,
    },
    /// Dump the ordering, levels, faces, audit and configuration of a graph.
    Inspect {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a matrix of generated instances through an engine.
    Bench(bench::BenchArgs),
}

#[derive(Subcommand)]
enum OracleQuery {
    Distance {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "from")]
        from: PathBuf,
        #[arg(long = "to")]
        to: PathBuf,
        #[command(flatten)]
        colours: ColourArgs,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
    Diameter {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        colours: ColourArgs,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
    Connected {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        colours: ColourArgs,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
}

/// A failed command and its exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn rejected(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<RecolorError> for Failure {
    fn from(e: RecolorError) -> Self {
        let code = match e.category() {
            ErrorCategory::Input => 1,
            ErrorCategory::Precondition => 2,
            ErrorCategory::Internal => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphFile, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn load_colouring(path: &Path) -> Result<Colouring, Failure> {
    Ok(parse_colouring(&read(path)?)?)
}

fn load_instance(path: &Path, c: &ColourArgs) -> Result<ListInstance, Failure> {
    Ok(load_graph(path)?.instance(c.colors, c.a)?)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", to_json(value));
}

/// Fails with exit code 3 unless `seq` walks from `a` to `b` in `inst`.
pub fn self_verify(inst: &ListInstance, a: &Colouring, seq: &RecoloringSequence, b: &Colouring) -> CmdResult {
    let r = validate_sequence(inst, a, seq, b);
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::internal(format!(
            "engine output failed verification at step {:?} ({:?})",
            r.first_invalid_step, r.fault
        )))
    }
}

struct Planned {
    inst: ListInstance,
    engine: &'static str,
    bound: u128,
}

/// Instance, engine and bound that `transform` will use.
fn plan(file: &GraphFile, mode: Mode, colours: &ColourArgs) -> Result<Planned, Failure> {
    match mode {
        Mode::PlanarBipartite => {
            if colours.colors.is_some_and(|k| k != PLANAR_COLOURS as usize) {
                return Err(Failure::rejected(format!("planar-bipartite mode uses exactly {PLANAR_COLOURS} colours")));
            }
            if file.lists.is_some() {
                return Err(Failure::input("planar-bipartite mode takes no lists"));
            }
            let inst = ListInstance::uniform(file.graph()?, PLANAR_COLOURS as usize, 0)?;
            let bound = planar_bound(inst.n());
            Ok(Planned { inst, engine: "planar-bipartite", bound })
        }
        Mode::Degenerate => {
            let inst = file.instance(colours.colors, colours.a)?;
            let n = inst.n();
            if file.lists.is_none() && colours.a.is_none() {
                let k = colours.colors.expect("instance() requires colors without lists");
                let d = inst.ordering().d();
                if k < d + 2 {
                    return Err(Failure::rejected(format!(
                        "k = {k} < d + 2 = {}: the reconfiguration graph may be disconnected",
                        d + 2
                    )));
                }
                Ok(Planned { bound: transform_k_bound(n, k, d), inst, engine: "transform-k" })
            } else {
                let bound = bound_recursion(n, inst.k(), inst.a());
                Ok(Planned { inst, engine: "transform-list", bound })
            }
        }
    }
}

fn run_engine(p: &Planned, file: &GraphFile, a: &Colouring, b: &Colouring) -> Result<RecoloringSequence, Failure> {
    Ok(match p.engine {
        "planar-bipartite" => {
            let emb = file.embedding()?.ok_or_else(|| Failure::input("planar-bipartite mode needs a rotation"))?;
            transform_planar_bipartite(&emb, a, b)?
        }
        "transform-k" => transform_k(p.inst.graph(), p.inst.k(), a, b)?,
        _ => transform_list(&p.inst, a, b)?,
    })
}

fn cmd_transform(
    graph: &Path,
    from: Option<&Path>,
    to: Option<&Path>,
    mode: Mode,
    colours: &ColourArgs,
    out: Option<&Path>,
    bound_only: bool,
) -> CmdResult {
    let file = load_graph(graph)?;
    let p = plan(&file, mode, colours)?;
    let n = p.inst.n();
    if bound_only {
        print_json(&json!({ "engine": p.engine, "n": n, "k": p.inst.k(), "a": p.inst.a(), "bound": p.bound.to_string() }));
        return Ok(());
    }
    let (Some(from), Some(to)) = (from, to) else {
        return Err(Failure::input("--from and --to are required unless --bound-only is given"));
    };
    let (a, b) = (load_colouring(from)?, load_colouring(to)?);
    p.inst.check_colouring(&a)?;
    p.inst.check_colouring(&b)?;
    let seq = run_engine(&p, &file, &a, &b)?;
    self_verify(&p.inst, &a, &seq, &b)?;
    if seq.len() as u128 > p.bound {
        return Err(Failure::internal(format!("length {} exceeds the bound {}", seq.len(), p.bound)));
    }
    let summary = json!({
        "engine": p.engine,
        "length": seq.len(),
        "bound": p.bound.to_string(),
        "max_per_vertex": seq.max_per_vertex(n),
    });
    let seq_json = to_json(&SequenceFile::new(&seq, n));
    match out {
        Some(path) => {
            write(path, &seq_json)?;
            print_json(&summary);
        }
        None => {
            println!("{seq_json}");
            eprintln!("{}", to_json(&summary));
        }
    }
    Ok(())
}

fn cmd_verify(graph: &Path, from: &Path, sequence: &Path, to: &Path, colours: &ColourArgs) -> CmdResult {
    let inst = load_instance(graph, colours)?;
    let seq = parse_sequence(&read(sequence)?)?.sequence();
    let (a, b) = (load_colouring(from)?, load_colouring(to)?);
    let report = validate_sequence(&inst, &a, &seq, &b);
    print_json(&report);
    if report.ok() {
        Ok(())
    } else if !report.start_ok {
        Err(Failure::rejected("start colouring is not a proper list colouring"))
    } else if let Some(i) = report.first_invalid_step {
        Err(Failure::rejected(format!("step {i} is invalid ({:?})", report.fault)))
    } else {
        Err(Failure::rejected("sequence does not end at the target colouring"))
    }
}

fn parse_epsilon(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::input(format!("epsilon must look like num/den, got {s:?}"));
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    Ok((num.trim().parse().map_err(|_| bad())?, den.trim().parse().map_err(|_| bad())?))
}

fn cmd_bound(n: usize, k: usize, a: Option<usize>, d: Option<usize>, epsilon: Option<&str>) -> CmdResult {
    let epsilon = epsilon.map(parse_epsilon).transpose()?;
    let r = theorem_bound(BoundParams { n, k, a, d, epsilon })?;
    print_json(&json!({
        "case": r.label,
        "a": r.a,
        "exponent": r.exponent,
        "value": r.value.to_string(),
        "closed_form": r.closed_form.to_string(),
        "constant": r.constant.to_string(),
    }));
    Ok(())
}

fn cmd_oracle(query: &OracleQuery) -> CmdResult {
    match query {
        OracleQuery::Distance { graph, from, to, colours, cap } => {
            let inst = load_instance(graph, colours)?;
            let r = bfs_distance(&inst, &load_colouring(from)?, &load_colouring(to)?, *cap)?;
            print_json(&r);
        }
        OracleQuery::Diameter { graph, colours, cap } => print_json(&exact_diameter(&load_instance(graph, colours)?, *cap)),
        OracleQuery::Connected { graph, colours, cap } => {
            print_json(&json!({ "result": is_connected(&load_instance(graph, colours)?, *cap) }))
        }
    }
    Ok(())
}

pub fn family(arg: FamilyArg, n: usize, d: usize, rows: Option<usize>, cols: Option<usize>) -> Result<(Family, usize), Failure> {
    Ok(match arg {
        FamilyArg::Path => (Family::Path, n),
        FamilyArg::Cycle => (Family::Cycle, n),
        FamilyArg::Tree => (Family::Tree, n),
        FamilyArg::Grid => {
            let rows = rows.unwrap_or_else(|| ((n as f64).sqrt().floor() as usize).max(1));
            let cols = cols.unwrap_or_else(|| (n / rows).max(1));
            (Family::Grid { rows, cols }, rows * cols)
        }
        FamilyArg::RandomDDegenerate => (Family::RandomDegenerate { d }, n),
        FamilyArg::RandomPlanarBipartite => (Family::RandomPlanarBipartite, n),
        FamilyArg::Quadrangulation => (Family::Quadrangulation, n),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    arg: FamilyArg,
    n: usize,
    rows: Option<usize>,
    cols: Option<usize>,
    d: usize,
    seed: u64,
    palette: Option<usize>,
    extra: usize,
    a: usize,
    colors: usize,
    out: Option<&Path>,
    colourings: &[PathBuf],
    colouring_seed: u64,
) -> CmdResult {
    let (fam, n) = family(arg, n, d, rows, cols)?;
    let lists = match palette {
        Some(palette) => ListPolicy::Random { palette, extra },
        None => ListPolicy::Classical { k: colors },
    };
    let (inst, emb) = gen_instance(&GenSpec { family: fam, n, seed, lists, a })?;
    let mut file = match &emb {
        Some(e) => GraphFile::from_embedding(e),
        None => GraphFile::from_graph(inst.graph()),
    };
    if palette.is_some() {
        file.lists = Some(inst.lists().to_vec());
    }
    let text = to_json(&file);
    match out {
        Some(p) => write(p, &text)?,
        None => println!("{text}"),
    }
    for (i, path) in colourings.iter().enumerate() {
        let c = gen_colouring(&inst, colouring_seed + i as u64)?;
        write(path, &to_json(&c))?;
    }
    Ok(())
}

fn cmd_inspect(graph: &Path) -> CmdResult {
    let file = load_graph(graph)?;
    let g = file.graph()?;
    let ord = degeneracy_ordering(&g);
    let mut report = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "ordering": ord.order(),
        "out_degree": (0..g.n()).map(|v| ord.outdeg(v)).collect::<Vec<_>>(),
        "degeneracy": ord.d(),
        "bipartite": g.bipartition().is_some(),
        "levels": levels(&g).ok().map(|l| l.0),
    });
    if let Some(emb) = file.embedding()? {
        report["faces"] = json!(emb.faces());
        report["audit"] = json!(audit(&emb));
        report["configuration"] = json!(find_configuration(&emb).ok());
    }
    print_json(&report);
    Ok(())
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Transform { graph, from, to, mode, colours, out, bound_only } => {
            cmd_transform(&graph, from.as_deref(), to.as_deref(), mode, &colours, out.as_deref(), bound_only)
        }
        Command::Verify { graph, from, sequence, to, colours } => cmd_verify(&graph, &from, &sequence, &to, &colours),
        Command::Bound { n, k, a, d, epsilon } => cmd_bound(n, k, a, d, epsilon.as_deref()),
        Command::Oracle { query } => cmd_oracle(&query),
        Command::Gen { family, n, rows, cols, d, seed, palette, extra, a, colors, out, colouring, colouring_seed } => {
            cmd_gen(family, n, rows, cols, d, seed, palette, extra, a, colors, out.as_deref(), &colouring, colouring_seed)
        }
        Command::Inspect { graph } => cmd_inspect(&graph),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
