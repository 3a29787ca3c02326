use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nutforge::construct::{apply_steps, ConstructionStep, ConstructionTrace};
use nutforge::enumerate::{census, compare_with_reference};
use nutforge::format::{parse_graph, write_edge_list, write_graph6, GraphFormat};
use nutforge::planarity::test_planarity;
use nutforge::realise::{
    betti_spectrum, is_polyhedral_realisable, is_realisable, is_toroidal_cubic_realisable, realise,
    ParameterPair,
};
use nutforge::seeds::{all_seeds, find_seed, verify_all_seeds};
use nutforge::{verify_nut, Error, Graph, KernelVector};

/// Writes to standard output, exiting quietly once the reader hangs up.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = io::stdout().lock().write_fmt(args) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

/// Verify, construct, enumerate and characterise chemical nut graphs.
#[derive(Parser)]
#[command(name = "nutforge", version)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest order the enumerator will attempt.
    #[arg(long, global = true, env = "NUTFORGE_MAX_ORDER", default_value_t = nutforge::enumerate::DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Edgelist,
    Graph6,
    Json,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file, or `-` for standard input.
    file: PathBuf,

    /// Input format; guessed from the content by default.
    #[arg(long = "input-format", value_enum, default_value = "auto")]
    input_format: InputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Certify whether a graph is a (chemical) nut graph.
    Verify(GraphInput),

    /// Apply one construction to a graph.
    Construct {
        #[arg(value_enum)]
        kind: StepKind,
        #[command(flatten)]
        input: GraphInput,
        /// Edge `u,v` for bridge and subdivide4.
        #[arg(long, value_parser = parse_edge_arg)]
        edge: Option<(usize, usize)>,
        /// Vertex for fowler.
        #[arg(long)]
        vertex: Option<usize>,
        /// Also propagate the input's kernel vector.
        #[arg(long)]
        kernel: bool,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: OutputFormat,
    },

    /// Build a chemical nut graph with the given degree signature.
    Realise {
        v3: usize,
        v2: usize,
        /// Require a planar output.
        #[arg(long)]
        planar: bool,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: OutputFormat,
    },

    /// Decide whether a degree signature admits a chemical nut graph.
    Realisable { v3: usize, v2: usize },

    /// Count leafless chemical graphs and nut graphs by signature.
    Census {
        #[arg(long)]
        max_n: usize,
        /// Compare against the published counts; exit 1 on any mismatch.
        #[arg(long)]
        compare_paper: bool,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Inspect and verify the embedded seed graphs.
    Seeds {
        #[command(subcommand)]
        action: SeedsAction,
    },

    /// Edge counts (and cycle ranks) achievable by chemical nut graphs on n vertices.
    Betti { n: usize },

    /// Whether a cubic polyhedral nut graph on v3 vertices exists.
    Polyhedral { v3: usize },

    /// Whether a cubic toroidal nut graph on n vertices exists.
    Toroidal { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum StepKind {
    Bridge,
    Subdivide4,
    Fowler,
}

#[derive(Subcommand)]
enum SeedsAction {
    /// One line per seed record.
    List,
    /// Print one record.
    Show {
        id: String,
        /// `record` prints the data-file text.
        #[arg(long, value_enum, default_value = "record")]
        format: SeedFormat,
    },
    /// Certify every record.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedFormat {
    Record,
    Edgelist,
    Graph6,
}

fn parse_edge_arg(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `u,v`")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let code = match e.downcast_ref::<Error>() {
            Some(inner) => exit_code(inner),
            None => 2,
        };
        Failure {
            code,
            message: format!("{e:#}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

/// Malformed input is a usage error (2); everything else is a negative
/// answer or an invalid site (1).
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::CountMismatch { .. } | Error::OddV3(_) | Error::InvalidEdge(..) => 2,
        _ => 1,
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph, Failure> {
    let text = read_input(&input.file)?;
    let format = match input.input_format {
        InputFormat::Auto => None,
        InputFormat::Edgelist => Some(GraphFormat::EdgeList),
        InputFormat::Graph6 => Some(GraphFormat::Graph6),
    };
    parse_graph(&text, format).map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", input.file.display()),
    })
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(value: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(value).expect("JSON value serialises"));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_verify(input: &GraphInput, as_json: bool) -> CmdResult {
    let g = load_graph(input)?;
    let cert = verify_nut(&g);
    let signature = g.degree_signature().ok();
    let connected = g.is_connected();
    let bridges = if connected { g.bridges().ok() } else { None };
    let planar = test_planarity(&g).ok().map(|v| v.planar);
    if as_json {
        let mut value = cert.to_json();
        value["signature"] = json!(signature);
        value["bridges"] = json!(bridges);
        value["connectivity"] = json!(g.connectivity());
        value["planar"] = json!(planar);
        print_json(&value);
    } else {
        outln!("order {} size {}", g.order(), g.size());
        match signature {
            Some(s) => outln!("signature {s}"),
            None => outln!("signature: maximum degree {} exceeds 3", g.max_degree()),
        }
        outln!("nullity {}", cert.nullity);
        if let Some(k) = &cert.kernel {
            outln!("kernel {k}");
        }
        outln!("connected {}", yes_no(connected));
        outln!("connectivity {}", g.connectivity());
        if let Some(b) = &bridges {
            let list: Vec<String> = b.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            outln!("bridges {}", if list.is_empty() { "none".to_string() } else { list.join(" ") });
        }
        match planar {
            Some(p) => outln!("planar {}", yes_no(p)),
            None => outln!("planar n/a"),
        }
        outln!("nut {}", yes_no(cert.is_nut));
        outln!("chemical nut {}", yes_no(cert.is_chemical_nut));
    }
    Ok(status(cert.is_chemical_nut))
}

fn write_graph(g: &Graph, kernel: Option<&KernelVector>, trace: Option<&ConstructionTrace>, format: OutputFormat) {
    match format {
        OutputFormat::Edgelist => {
            if let Some(t) = trace {
                for line in t.to_text().lines() {
                    outln!("# {line}");
                }
            }
            if let Some(k) = kernel {
                outln!("# kernel: {}", k.to_strings().join(" "));
            }
            out!("{}", write_edge_list(g));
        }
        OutputFormat::Graph6 => outln!("{}", write_graph6(g)),
        OutputFormat::Json => {
            let mut value = json!({
                "order": g.order(),
                "size": g.size(),
                "edges": g.edges(),
                "graph6": write_graph6(g),
            });
            if let Some(k) = kernel {
                value["kernel"] = json!(k.to_strings());
            }
            if let Some(t) = trace {
                value["trace"] = json!(t);
            }
            print_json(&value);
        }
    }
}

fn cmd_construct(
    kind: StepKind,
    input: &GraphInput,
    site_edge: Option<(usize, usize)>,
    vertex: Option<usize>,
    with_kernel: bool,
    format: OutputFormat,
) -> CmdResult {
    let g = load_graph(input)?;
    let usage = |message: &str| Failure {
        code: 2,
        message: message.to_string(),
    };
    let step = match kind {
        StepKind::Bridge | StepKind::Subdivide4 => {
            let (u, v) = site_edge.ok_or_else(|| usage("--edge u,v is required"))?;
            if matches!(kind, StepKind::Bridge) {
                ConstructionStep::Bridge { u, v }
            } else {
                ConstructionStep::Subdivide4 { u, v }
            }
        }
        StepKind::Fowler => ConstructionStep::Fowler {
            vertex: vertex.ok_or_else(|| usage("--vertex is required"))?,
        },
    };
    if with_kernel {
        let cert = verify_nut(&g);
        let x = cert.kernel.ok_or_else(|| Failure {
            code: 1,
            message: format!("input has nullity {}; no unique kernel vector to propagate", cert.nullity),
        })?;
        let (h, y) = apply_steps(&g, &x, std::slice::from_ref(&step)).map_err(unwrap_step_error)?;
        write_graph(&h, Some(&y), None, format);
    } else {
        let h = step.apply(&g)?;
        write_graph(&h, None, None, format);
    }
    Ok(ExitCode::SUCCESS)
}

fn unwrap_step_error(e: Error) -> Failure {
    match e {
        Error::StepSiteInvalid { source, .. } => Failure::from(*source),
        other => Failure::from(other),
    }
}

fn pair(v3: usize, v2: usize) -> Result<ParameterPair, Failure> {
    Ok(ParameterPair::new(v3, v2)?)
}

fn cmd_realise(v3: usize, v2: usize, planar: bool, format: OutputFormat) -> CmdResult {
    let p = pair(v3, v2)?;
    let (g, x, trace) = realise(p, planar)?;
    write_graph(&g, Some(&x), Some(&trace), format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_realisable(v3: usize, v2: usize, as_json: bool) -> CmdResult {
    let p = pair(v3, v2)?;
    let v = is_realisable(p);
    if as_json {
        print_json(&json!({
            "v3": v3,
            "v2": v2,
            "realisable": v.realisable,
            "planar_realisable": v.planar_realisable,
            "reason": v.reason.to_string(),
            "rule": v.reason,
        }));
    } else {
        outln!(
            "{p}: {} (planar: {}); {}",
            if v.realisable { "realisable" } else { "not realisable" },
            yes_no(v.planar_realisable),
            v.reason
        );
    }
    Ok(status(v.realisable))
}

fn cmd_census(
    max_n: usize,
    compare: bool,
    jobs: Option<usize>,
    out: Option<&Path>,
    max_order: usize,
    as_json: bool,
) -> CmdResult {
    let run = || census(max_n, max_order);
    let table = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .context("starting worker pool")?
            .install(run),
        None => run(),
    }?;
    let csv = table.to_csv();
    match out {
        Some(path) => fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?,
        None if !as_json => out!("{csv}"),
        None => {}
    }
    let mismatches = if compare { compare_with_reference(&table) } else { Vec::new() };
    if as_json {
        let cells: Vec<_> = table
            .cells
            .iter()
            .map(|(&(v3, v2), c)| json!({"v3": v3, "v2": v2, "count": c.nuts, "leafless": c.leafless}))
            .collect();
        print_json(&json!({
            "max_n": max_n,
            "cells": cells,
            "compared": compare,
            "mismatches": mismatches,
        }));
    } else if compare {
        for m in &mismatches {
            eprintln!("mismatch {m}");
        }
        eprintln!(
            "{} of {} cells match the published table",
            table.cells.len() - mismatches.len(),
            table.cells.len()
        );
    }
    Ok(status(mismatches.is_empty()))
}

fn cmd_seeds(action: &SeedsAction, as_json: bool) -> CmdResult {
    match action {
        SeedsAction::List => {
            if as_json {
                print_json(&json!(all_seeds().iter().map(|s| s.to_json()).collect::<Vec<_>>()));
            } else {
                for s in all_seeds() {
                    outln!("{} v3={} v2={} n={} m={} flag={}", s.id, s.v3, s.v2, s.n, s.m, s.flag);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        SeedsAction::Show { id, format } => {
            let seed = find_seed(id).ok_or_else(|| Failure::from(Error::UnknownSeed(id.clone())))?;
            if as_json {
                print_json(&seed.to_json());
            } else {
                match format {
                    SeedFormat::Record => out!("{}", seed.to_text()),
                    SeedFormat::Edgelist => out!("{}", write_edge_list(&seed.graph)),
                    SeedFormat::Graph6 => outln!("{}", write_graph6(&seed.graph)),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        SeedsAction::Verify => {
            let report = verify_all_seeds();
            if as_json {
                print_json(&json!(report));
            } else {
                out!("{}", report.to_text());
            }
            Ok(status(report.failures() == 0))
        }
    }
}

fn cmd_betti(n: usize, as_json: bool) -> CmdResult {
    let sizes = betti_spectrum(n);
    let ranks: Vec<usize> = sizes.iter().map(|m| m + 1 - n).collect();
    let top = (n + 1).div_ceil(2);
    let missing: Vec<usize> = (2..=top).filter(|b| !ranks.contains(b)).collect();
    if as_json {
        print_json(&json!({
            "n": n,
            "sizes": sizes,
            "cycle_ranks": ranks,
            "range": [2, top],
            "missing": missing,
        }));
    } else {
        let list = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let sizes: Vec<usize> = sizes.into_iter().collect();
        outln!("m: {}", list(&sizes));
        outln!("m-n+1: {}", list(&ranks));
        if missing.is_empty() {
            outln!("no gaps in 2..={top}");
        } else {
            outln!("missing m-n+1 in 2..={top}: {}", list(&missing));
        }
    }
    Ok(status(!ranks.is_empty()))
}

fn cmd_polyhedral(v3: usize, as_json: bool) -> CmdResult {
    let p = pair(v3, 0)?;
    let ok = is_polyhedral_realisable(p);
    if as_json {
        print_json(&json!({"v3": v3, "polyhedral": ok}));
    } else {
        outln!("cubic polyhedral nut graph on {v3} vertices: {}", yes_no(ok));
    }
    Ok(status(ok))
}

fn cmd_toroidal(n: usize, as_json: bool) -> CmdResult {
    let ok = is_toroidal_cubic_realisable(n);
    if as_json {
        print_json(&json!({"n": n, "toroidal": ok}));
    } else {
        outln!("cubic toroidal nut graph on {n} vertices: {}", yes_no(ok));
    }
    Ok(status(ok))
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Verify(input) => cmd_verify(input, cli.json),
        Command::Construct {
            kind,
            input,
            edge,
            vertex,
            kernel,
            format,
        } => {
            let format = if cli.json { OutputFormat::Json } else { *format };
            cmd_construct(*kind, input, *edge, *vertex, *kernel, format)
        }
        Command::Realise { v3, v2, planar, format } => {
            let format = if cli.json { OutputFormat::Json } else { *format };
            cmd_realise(*v3, *v2, *planar, format)
        }
        Command::Realisable { v3, v2 } => cmd_realisable(*v3, *v2, cli.json),
        Command::Census {
            max_n,
            compare_paper,
            jobs,
            out,
        } => cmd_census(*max_n, *compare_paper, *jobs, out.as_deref(), cli.max_order, cli.json),
        Command::Seeds { action } => cmd_seeds(action, cli.json),
        Command::Betti { n } => cmd_betti(*n, cli.json),
        Command::Polyhedral { v3 } => cmd_polyhedral(*v3, cli.json),
        Command::Toroidal { n } => cmd_toroidal(*n, cli.json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
