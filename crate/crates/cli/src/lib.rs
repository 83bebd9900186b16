//! The `rainbow` command line: solves, extends and checks rainbow tree
//! packings in graph files, and runs the anti-Ramsey tools.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rainbow_core::antiramsey::{
    extremal_coloring, r_formula, random_coloring, verify_r_exhaustive, Budget, Packing, StrategyRegistry,
};
use rainbow_core::color_disjoint::solve_color_disjoint;
use rainbow_core::extension::extend_to_trees;
use rainbow_core::io::{
    parse_forests, parse_graph, serialize_graph, write_dump, CertificateDocument, LabeledGraph, ResultKind,
};
use rainbow_core::partition::{find_violating_partition, Condition, SearchOptions};
use rainbow_core::{Disjointness, Error, ForestFamily, VertexPartition};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Negative = 2,
    Budget = 3,
    Internal = 4,
}

#[derive(Parser, Debug)]
#[command(name = "rainbow", version, about = "Rainbow spanning trees in edge-colored graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a violating partition, or re-check a certificate.
    Check(CheckArgs),
    /// Find t rainbow spanning trees or a violating partition.
    Solve(SolveArgs),
    /// Extend edge-disjoint rainbow forests to color-disjointly extended trees.
    Extend(ExtendArgs),
    /// Anti-Ramsey numbers for edge-disjoint rainbow spanning trees in K_n.
    Anti {
        #[command(subcommand)]
        op: AntiOp,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// Print the JSON certificate document instead of text.
    #[arg(long)]
    json: bool,
    /// Record wall-clock time in the document.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMode {
    /// Condition for t color-disjoint trees.
    Cd,
    /// Condition for extending the given forests.
    Ext,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveMode {
    /// Color-disjoint trees in any multigraph.
    Cd,
    /// Edge-disjoint trees, by packing strategy.
    Ed,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Graph file, or `-` for stdin.
    graph: PathBuf,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum)]
    mode: Option<CheckMode>,
    /// Forest file for the extension condition.
    #[arg(long)]
    forests: Option<PathBuf>,
    /// Certificate document to re-check instead of searching.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "cd")]
    mode: SolveMode,
    /// Packing strategy for `--mode ed`; the first applicable one by default.
    #[arg(long)]
    strategy: Option<String>,
    /// Search-node budget for exhaustive strategies.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExtendArgs {
    graph: PathBuf,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    forests: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct NT {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Subcommand, Debug)]
enum AntiOp {
    /// Print r(n, t).
    Formula(NT),
    /// Print a coloring of K_n with r(n, t) colors and no t trees.
    Construct {
        #[command(flatten)]
        nt: NT,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Confirm r(n, t) by enumerating every coloring of K_n.
    Verify {
        #[command(flatten)]
        nt: NT,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a uniformly random coloring of K_n with exactly k colors.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure already reduced to a message and an exit code.
struct Failure(Exit, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) => Failure(Exit::Budget, e.to_string()),
            Error::InternalFailure { step, instance } => match write_dump(&step, &instance) {
                Ok(path) => Failure(
                    Exit::Internal,
                    format!("internal failure in `{step}`; instance written to {}", path.display()),
                ),
                Err(io) => Failure(Exit::Internal, format!("internal failure in `{step}`; dump failed: {io}")),
            },
            other => Failure(Exit::Usage, other.to_string()),
        }
    }
}

type Outcome = Result<Exit, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Documents go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return Exit::Usage as i32;
            }
            let _ = write!(out, "{e}");
            return Exit::Ok as i32;
        }
    };
    let outcome = match cli.command {
        Command::Check(a) => check(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Extend(a) => extend(a, out),
        Command::Anti { op } => anti(op, out),
    };
    match outcome {
        Ok(code) => code as i32,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code as i32
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure(Exit::Usage, format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    parse_graph(&read_text(path)?).map_err(|e| Failure(Exit::Usage, format!("{}: {e}", path.display())))
}

fn load_forests(path: &Path, g: &LabeledGraph, t: usize) -> Result<ForestFamily, Failure> {
    let forests = parse_forests(&read_text(path)?, g.graph.edge_count())
        .map_err(|e| Failure(Exit::Usage, format!("{}: {e}", path.display())))?;
    if forests.len() != t {
        return Err(Error::ForestCountMismatch { expected: t, found: forests.len() }.into());
    }
    Ok(ForestFamily::new(forests, Disjointness::EdgeDisjoint))
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure(Exit::Usage, e.to_string())
}

fn exit_for(doc: &CertificateDocument) -> Exit {
    match doc.result {
        ResultKind::Trees | ResultKind::None => Exit::Ok,
        ResultKind::Violation | ResultKind::ProvenAbsent => Exit::Negative,
    }
}

/// Writes the document as JSON or as text with edges shown by endpoints and
/// original color labels.
fn emit(doc: &CertificateDocument, g: &LabeledGraph, json: bool, out: &mut dyn Write) -> Outcome {
    if json {
        out.write_all(doc.to_json().as_bytes()).map_err(io_fail)?;
        return Ok(exit_for(doc));
    }
    let mut text = String::new();
    match doc.result {
        ResultKind::Trees => {
            text.push_str(&format!("trees t={} mode={}\n", doc.t, doc.mode));
            for (i, tree) in doc.trees.iter().flatten().enumerate() {
                let edges: Vec<String> = tree
                    .iter()
                    .map(|&e| {
                        let edge = g.graph.edge(e);
                        format!("{}-{}:{}", edge.u, edge.v, g.label(edge.color))
                    })
                    .collect();
                text.push_str(&format!("tree {i}: {}\n", edges.join(" ")));
            }
        }
        ResultKind::Violation => {
            let show = |a: &[usize]| VertexPartition::from_rgs(a.to_vec()).expect("normalized").to_string();
            if let Some(p) = &doc.partition {
                text.push_str(&format!(
                    "violation t={} required={} achieved={} deficiency={}\npartition: {}\n",
                    doc.t,
                    p.required,
                    p.achieved,
                    p.deficiency,
                    show(&p.assignment)
                ));
            }
            if let Some(p) = &doc.partitions {
                text.push_str(&format!(
                    "violation t={} required={} achieved={} deficiency={}\n",
                    doc.t, p.required, p.achieved, p.deficiency
                ));
                for (i, a) in p.assignments.iter().enumerate() {
                    text.push_str(&format!("partition {i}: {}\n", show(a)));
                }
            }
        }
        ResultKind::ProvenAbsent => text.push_str(&format!("proven-absent t={}\n", doc.t)),
        ResultKind::None => text.push_str("none\n"),
    }
    out.write_all(text.as_bytes()).map_err(io_fail)?;
    Ok(exit_for(doc))
}

fn elapsed_ms(start: Instant, timings: bool) -> Option<u64> {
    timings.then(|| start.elapsed().as_millis() as u64)
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let mode = a.mode.unwrap_or(if a.forests.is_some() { CheckMode::Ext } else { CheckMode::Cd });
    let fam = match (mode, &a.forests) {
        (CheckMode::Ext, Some(path)) => Some(load_forests(path, &g, a.t)?),
        (CheckMode::Ext, None) => return Err(Failure(Exit::Usage, "--mode ext needs --forests".into())),
        (CheckMode::Cd, _) => None,
    };
    if let Some(path) = &a.certificate {
        let doc = CertificateDocument::parse(&read_text(path)?)
            .map_err(|e| Failure(Exit::Usage, format!("{}: {e}", path.display())))?;
        if doc.t != a.t {
            return Err(Failure(Exit::Usage, format!("certificate is for t = {}, not {}", doc.t, a.t)));
        }
        let kind = serde_json::to_value(doc.result).expect("plain enum");
        let kind = kind.as_str().expect("serialized as a string");
        if matches!(doc.result, ResultKind::ProvenAbsent | ResultKind::None) {
            // nothing in the document witnesses absence; rerun the search
            writeln!(out, "unchecked {kind}").map_err(io_fail)?;
            return Ok(Exit::Ok);
        }
        return match doc.recheck(&g.graph, fam.as_ref()) {
            Ok(()) => {
                writeln!(out, "valid {kind}").map_err(io_fail)?;
                Ok(Exit::Ok)
            }
            Err(reason) => {
                writeln!(out, "invalid: {reason}").map_err(io_fail)?;
                Ok(Exit::Negative)
            }
        };
    }
    let start = Instant::now();
    let condition = match &fam {
        Some(f) => Condition::Extension(f),
        None => Condition::ColorDisjoint,
    };
    let opts = SearchOptions {
        threads: a.threads.max(1),
        ..SearchOptions::default()
    };
    let found = find_violating_partition(&g.graph, a.t, &condition, opts)?;
    let mut doc = match &found.violation {
        Some(d) => CertificateDocument::violation(d, a.t, Disjointness::ColorDisjoint, Default::default()),
        None => CertificateDocument::none(a.t, Disjointness::ColorDisjoint, found.partitions_scanned),
    };
    doc.stats.partitions_scanned = found.partitions_scanned;
    doc.stats.wall_ms = elapsed_ms(start, a.output.timings);
    emit(&doc, &g, a.output.json, out)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let start = Instant::now();
    let mut doc = match a.mode {
        SolveMode::Cd => {
            if a.strategy.is_some() {
                return Err(Failure(Exit::Usage, "--strategy applies to --mode ed only".into()));
            }
            CertificateDocument::from_solution(&solve_color_disjoint(&g.graph, a.t)?, a.t)
        }
        SolveMode::Ed => {
            let registry = StrategyRegistry::default();
            let mut budget = Budget::new(a.budget);
            let packing: Packing = registry.solve(&g.graph, a.t, a.strategy.as_deref(), &mut budget)?;
            CertificateDocument::from_packing(&packing, a.t)
        }
    };
    doc.stats.wall_ms = elapsed_ms(start, a.output.timings);
    emit(&doc, &g, a.output.json, out)
}

fn extend(a: ExtendArgs, out: &mut dyn Write) -> Outcome {
    let g = load_graph(&a.graph)?;
    let fam = load_forests(&a.forests, &g, a.t)?;
    let start = Instant::now();
    let mut doc = CertificateDocument::from_solution(&extend_to_trees(&g.graph, &fam)?, a.t);
    doc.stats.wall_ms = elapsed_ms(start, a.output.timings);
    emit(&doc, &g, a.output.json, out)
}

fn anti(op: AntiOp, out: &mut dyn Write) -> Outcome {
    match op {
        AntiOp::Formula(NT { n, t }) => {
            writeln!(out, "{}", r_formula(n, t)?).map_err(io_fail)?;
            Ok(Exit::Ok)
        }
        AntiOp::Construct { nt, budget } => {
            let g = extremal_coloring(nt.n, nt.t, budget)?;
            out.write_all(serialize_graph(&LabeledGraph::with_numeric_labels(g)).as_bytes())
                .map_err(io_fail)?;
            Ok(Exit::Ok)
        }
        AntiOp::Verify { nt, threads, json } => {
            let rep = verify_r_exhaustive(nt.n, nt.t, threads)?;
            let text = if json {
                let v = serde_json::json!({
                    "n": rep.n,
                    "t": rep.t,
                    "r": rep.r,
                    "confirmed": rep.confirmed(),
                    "colorings_at_r": rep.colorings_at_r,
                    "absent_at_r": rep.absent_at_r,
                    "colorings_above": rep.colorings_above,
                    "absent_above": rep.absent_above,
                });
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            } else {
                format!(
                    "r({}, {}) = {}: {}\n  {} colorings with r colors, {} without {} trees\n  {} colorings with r + 1 colors, {} without\n",
                    rep.n,
                    rep.t,
                    rep.r,
                    if rep.confirmed() { "confirmed" } else { "NOT confirmed" },
                    rep.colorings_at_r,
                    rep.absent_at_r,
                    rep.t,
                    rep.colorings_above,
                    rep.absent_above,
                )
            };
            out.write_all(text.as_bytes()).map_err(io_fail)?;
            Ok(if rep.confirmed() { Exit::Ok } else { Exit::Negative })
        }
        AntiOp::Random { n, k, seed } => {
            let g = random_coloring(&mut ChaCha8Rng::seed_from_u64(seed), n, k)?;
            out.write_all(serialize_graph(&LabeledGraph::with_numeric_labels(g)).as_bytes())
                .map_err(io_fail)?;
            Ok(Exit::Ok)
        }
    }
}
