//! `fasncl`: friends-and-strangers and NCL solvers, the reduction between
//! them, gadget tools and the verifier.
//!
//! Exit codes: 0 reachable or pass, 1 unreachable or fail, 2 limit or
//! skipped, 3 invalid input.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fasncl_core::fs::{self, verify_color_classing, SearchMode, SearchOptions};
use fasncl_core::ncl::{self, NclOptions};
use fasncl_core::{SearchLimits, Status, VertexId};
use fasncl_gadgets::assembly::color_classing;
use fasncl_gadgets::blueprint::transcription_table_json;
use fasncl_gadgets::{blueprint, GadgetKind};
use fasncl_reducer::reduce;
use fasncl_verify::{equivalence_test, gadget_suite, PairSource, VerifyConfig};

use input::{read_fas, read_ncl, Invalid};

#[derive(Parser)]
#[command(name = "fasncl", version, about = "Friends-and-strangers and NCL reachability tools")]
struct Cli {
    /// Worker threads for the search pool (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// Stored-state cap; hitting it reports LIMIT.
    #[arg(long)]
    max_states: Option<usize>,
    /// Meet-in-the-middle search (configuration targets only).
    #[arg(long)]
    bidirectional: bool,
    /// Write the witness as a JSON array here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

impl SearchArgs {
    fn limits(&self) -> SearchLimits {
        self.max_states.map(SearchLimits::states).unwrap_or_default()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Labeled,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    C2c,
    C2e,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    BlueEdge,
    RedEdge,
    Or,
    And,
}

impl Kind {
    fn gadget(self) -> GadgetKind {
        match self {
            Kind::BlueEdge => GadgetKind::BlueEdge,
            Kind::RedEdge => GadgetKind::RedEdge,
            Kind::Or => GadgetKind::OrVertex,
            Kind::And => GadgetKind::AndVertex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Is `sigma_prime` reachable from `sigma` by friendly swaps?
    SolveFas {
        /// Instance JSON, or a reduction bundle.
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "labeled")]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// NCL reachability between orientations, or to an edge direction.
    SolveNcl {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "c2c")]
        variant: Variant,
        /// Target edge for `c2e`.
        #[arg(long, required_if_eq("variant", "c2e"))]
        edge: Option<usize>,
        /// Vertex the target edge should point at, for `c2e`.
        #[arg(long, required_if_eq("variant", "c2e"))]
        head: Option<u32>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Builds the friends-and-strangers bundle for an NCL instance.
    Reduce {
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the location graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Blueprint export and behaviour checks for one gadget.
    Gadget {
        #[arg(value_enum)]
        kind: Kind,
        /// Print the blueprint as DOT.
        #[arg(long)]
        emit_dot: bool,
        /// Print the transcription table of all four blueprints as JSON.
        #[arg(long)]
        table: bool,
        /// Run the behaviour suite; exit 1 if any check fails.
        #[arg(long)]
        check: bool,
    },
    /// Compares NCL and reduced friends-and-strangers reachability.
    Verify {
        instance: PathBuf,
        /// Every ordered pair of valid orientations.
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        /// Number of sampled pairs (default from the config).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Config file overriding the bundled defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        max_states: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

const REACHABLE: u8 = 0;
const UNREACHABLE: u8 = 1;
const LIMIT: u8 = 2;
const INVALID: u8 = 3;

fn status_code(s: Status) -> u8 {
    match s {
        Status::Reachable => REACHABLE,
        Status::Unreachable => UNREACHABLE,
        Status::Limit => LIMIT,
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Reachable => "REACHABLE",
        Status::Unreachable => "UNREACHABLE",
        Status::Limit => "LIMIT",
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Invalid> {
    std::fs::write(path, text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn write_witness<T: serde::Serialize>(path: Option<&PathBuf>, witness: Option<&Vec<T>>) -> Result<(), Invalid> {
    if let (Some(path), Some(w)) = (path, witness) {
        write_file(path, &(serde_json::to_string(w).expect("serializable") + "\n"))?;
    }
    Ok(())
}

fn report<M>(r: &fasncl_core::ReachabilityResult<M>) {
    println!("status: {}", status_name(r.status));
    println!("states_explored: {}", r.states_explored);
    if let Some(w) = &r.witness {
        println!("witness_length: {}", w.len());
    }
    eprintln!("frontier peak {}", r.frontier_peak);
}

fn solve_fas(path: &Path, mode: Mode, args: &SearchArgs) -> Result<u8, Invalid> {
    let file = read_fas(path)?;
    let search_mode = match mode {
        Mode::Labeled => SearchMode::Labeled,
        Mode::Quotient => {
            let colors = file
                .colors
                .as_ref()
                .ok_or_else(|| Invalid("quotient mode needs a \"colors\" array".into()))?;
            if colors.len() != file.instance.order() {
                return Err(Invalid(format!("{} colors for {} people", colors.len(), file.instance.order())));
            }
            let cc = color_classing(colors);
            if !verify_color_classing(&file.instance, &cc) {
                return Err(Invalid("people of one color have different friends".into()));
            }
            SearchMode::Quotient(cc)
        }
    };
    let opts = SearchOptions { mode: search_mode, limits: args.limits(), bidirectional: args.bidirectional };
    let r = fs::solve_c2c(&file.instance, &file.sigma, &file.sigma_prime, &opts).map_err(Invalid::from)?;
    report(&r);
    write_witness(args.witness_out.as_ref(), r.witness.as_ref())?;
    Ok(status_code(r.status))
}

fn solve_ncl(path: &Path, variant: Variant, edge: Option<usize>, head: Option<u32>, args: &SearchArgs) -> Result<u8, Invalid> {
    let file = read_ncl(path)?;
    let from = file.from.ok_or_else(|| Invalid("missing \"orientation_from\"".into()))?;
    let opts = NclOptions { limits: args.limits(), bidirectional: args.bidirectional };
    let r = match variant {
        Variant::C2c => {
            let to = file.to.ok_or_else(|| Invalid("missing \"orientation_to\"".into()))?;
            ncl::solve_c2c(&file.graph, &from, &to, &opts)
        }
        Variant::C2e => {
            let (edge, head) = (edge.expect("required by clap"), head.expect("required by clap"));
            ncl::solve_c2e(&file.graph, &from, edge, VertexId(head), &opts)
        }
    }
    .map_err(Invalid::from)?;
    report(&r);
    let flips = r.witness.as_ref().map(|w| w.iter().map(|f| f.0).collect::<Vec<_>>());
    write_witness(args.witness_out.as_ref(), flips.as_ref())?;
    Ok(status_code(r.status))
}

fn cmd_reduce(path: &Path, out: &Path, dot: Option<&PathBuf>) -> Result<u8, Invalid> {
    let file = read_ncl(path)?;
    let from = file.from.ok_or_else(|| Invalid("missing \"orientation_from\"".into()))?;
    let to = file.to.unwrap_or_else(|| from.clone());
    let art = reduce(&file.graph, &from, &to).map_err(|e| Invalid(e.to_string()))?;
    write_file(out, &(art.to_json_string() + "\n"))?;
    if let Some(dot) = dot {
        write_file(dot, &art.to_dot())?;
    }
    let x = art.fas.locations();
    println!("locations: {}", x.order());
    println!("max_degree: {}", x.max_degree());
    for (kind, n) in art.gadget_counts() {
        eprintln!("{kind}: {n}");
    }
    Ok(REACHABLE)
}

fn cmd_gadget(kind: Kind, emit_dot: bool, table: bool, check: bool) -> Result<u8, Invalid> {
    let bp = blueprint(kind.gadget());
    if emit_dot {
        print!("{}", bp.to_dot());
    }
    if table {
        println!("{}", transcription_table_json());
    }
    if !emit_dot && !table && !check {
        println!("{}: {} locations, {} ports", bp.kind.name(), bp.len(), bp.ports.len());
    }
    if check {
        let r = gadget_suite(kind.gadget(), VerifyConfig::default().search.max_states).map_err(|e| Invalid(e.to_string()))?;
        print!("{}", r.to_text());
        return Ok(if r.passed() { REACHABLE } else { UNREACHABLE });
    }
    Ok(REACHABLE)
}

struct VerifyArgs<'a> {
    exhaustive: bool,
    samples: Option<usize>,
    seed: Option<u64>,
    config: Option<&'a PathBuf>,
    max_states: Option<usize>,
    json_out: Option<&'a PathBuf>,
}

fn cmd_verify(path: &Path, a: VerifyArgs<'_>) -> Result<u8, Invalid> {
    let file = read_ncl(path)?;
    let mut cfg = match a.config {
        Some(p) => VerifyConfig::load(p).map_err(|e| Invalid(e.to_string()))?,
        None => VerifyConfig::default(),
    };
    if let Some(m) = a.max_states {
        cfg.search.max_states = m;
    }
    let source = if a.exhaustive {
        PairSource::Exhaustive
    } else {
        PairSource::Sampled {
            count: a.samples.unwrap_or(cfg.equivalence.samples),
            seed: a.seed.unwrap_or(cfg.equivalence.seed),
        }
    };
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let r = equivalence_test(&file.graph, &name, source, &cfg).map_err(|e| Invalid(e.to_string()))?;
    print!("{}", r.to_text());
    if let Some(p) = a.json_out {
        write_file(p, &(r.to_json() + "\n"))?;
    }
    Ok(if r.passed() {
        REACHABLE
    } else if r.disagreements.is_empty() && r.witness_failures.is_empty() {
        LIMIT
    } else {
        UNREACHABLE
    })
}

fn run(cli: Cli) -> Result<u8, Invalid> {
    match &cli.command {
        Command::SolveFas { instance, mode, search } => solve_fas(instance, *mode, search),
        Command::SolveNcl { instance, variant, edge, head, search } => solve_ncl(instance, *variant, *edge, *head, search),
        Command::Reduce { instance, out, dot } => cmd_reduce(instance, out, dot.as_ref()),
        Command::Gadget { kind, emit_dot, table, check } => cmd_gadget(*kind, *emit_dot, *table, *check),
        Command::Verify { instance, exhaustive, samples, seed, config, max_states, json_out } => cmd_verify(
            instance,
            VerifyArgs {
                exhaustive: *exhaustive,
                samples: *samples,
                seed: *seed,
                config: config.as_ref(),
                max_states: *max_states,
                json_out: json_out.as_ref(),
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INVALID } else { REACHABLE });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INVALID);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INVALID)
        }
    }
}
