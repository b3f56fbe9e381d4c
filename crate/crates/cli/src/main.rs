use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsv_core::json::{graph_from_json, GraphJson};
use gsv_core::sld::{decay, thresholds};
use gsv_core::stabilizer::enumerate_stabilizers;
use gsv_core::{decode_graph_id, generate, GeneratorKind, Graph, SldError};
use gsv_service::{Engine, EngineError, SldCache};
use serde::Serialize;

mod table;

#[derive(Parser)]
#[command(name = "gsv", version, about = "Graph-state stabilizer analysis")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Depolarizing probability applied to the distribution
    #[arg(long, global = true)]
    noise: Option<f64>,
    /// Allow components above the automatic size limit
    #[arg(long, global = true)]
    force: bool,
    /// Persistent cache file; without it results are kept in memory only
    #[arg(long, global = true, env = "GSV_CACHE_PATH")]
    cache_path: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Sector length distribution of a graph state
    Sld { id: String },
    /// Noise thresholds from the three entanglement criteria
    Thresholds { id: String },
    /// List stabilizer elements in ascending generator order
    Stabilizers {
        id: String,
        #[arg(long, default_value_t = 64)]
        limit: u64,
    },
    /// Local complementation at a 1-based vertex
    Lc { id: String, vertex: usize },
    /// Graph id conversions
    #[command(subcommand)]
    Id(IdCommand),
    /// Seeded Erdős-Rényi graph
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Predefined graph families
    Predefined {
        kind: Option<GeneratorKind>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run the HTTP service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Subcommand)]
enum IdCommand {
    /// Graph JSON (`{"n":..,"edges":[[1,2],..]}`) to id; `-` reads stdin
    Encode { graph: String },
    /// Id to graph JSON
    Decode { id: String },
}

/// Failure classes and their exit codes.
#[derive(Debug)]
enum Failure {
    /// Malformed input: exit 2.
    Usage(String),
    /// Refused or failed computation: exit 1.
    Refused(String),
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Sld(SldError::Probability(_) | SldError::Domain(_)) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Refused(e.to_string()),
        }
    }
}

impl From<SldError> for Failure {
    fn from(e: SldError) -> Self {
        EngineError::Sld(e).into()
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "warn".into()),
        )
        .with_writer(io::stderr)
        .init();

    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let g = &cli.global;
    match cli.command {
        Command::Sld { id } => cmd_sld(g, &parse_id(&id)?),
        Command::Thresholds { id } => cmd_thresholds(g, &parse_id(&id)?),
        Command::Stabilizers { id, limit } => cmd_stabilizers(g, &parse_id(&id)?, limit),
        Command::Lc { id, vertex } => {
            let graph = parse_id(&id)?;
            let lc = vertex
                .checked_sub(1)
                .ok_or_else(|| Failure::usage("vertices are numbered from 1"))
                .and_then(|v| graph.local_complement(v).map_err(Failure::usage))?;
            print_id(g, &lc)
        }
        Command::Id(IdCommand::Encode { graph }) => {
            let text = if graph == "-" {
                let mut buf = String::new();
                io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Refused(e.to_string()))?;
                buf
            } else {
                graph
            };
            print_id(g, &graph_from_json(&text).map_err(Failure::usage)?)
        }
        Command::Id(IdCommand::Decode { id }) => {
            let graph = parse_id(&id)?;
            match g.format {
                Format::Json => emit(&GraphJson::from(&graph)),
                Format::Table => out(&table::edges(&graph)),
            }
        }
        Command::Random { n, p, seed } => print_id(
            g,
            &generate(GeneratorKind::Random, n, Some(p), Some(seed)).map_err(Failure::usage)?,
        ),
        Command::Predefined { kind: None, .. } => match g.format {
            Format::Json => emit(&serde_json::json!({ "kinds": GeneratorKind::ALL })),
            Format::Table => out(&GeneratorKind::ALL
                .map(|k| format!("{}\n", k.name()))
                .concat()),
        },
        Command::Predefined {
            kind: Some(kind),
            n,
        } => {
            let n = n.ok_or_else(|| Failure::usage("--n is required"))?;
            print_id(g, &generate(kind, n, None, None).map_err(Failure::usage)?)
        }
        Command::Serve { port, host } => serve(g, SocketAddr::new(host, port)),
    }
}

fn parse_id(id: &str) -> Result<Graph, Failure> {
    decode_graph_id(id).map_err(Failure::usage)
}

fn engine(g: &Global) -> Result<Engine, Failure> {
    let cache = match &g.cache_path {
        Some(path) => SldCache::open(path).map_err(|e| Failure::Refused(e.to_string()))?,
        None => SldCache::in_memory(),
    };
    Ok(Engine::new(cache))
}

fn out(text: &str) -> CliResult {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| Failure::Refused(e.to_string()))
}

fn emit<T: Serialize>(value: &T) -> CliResult {
    let mut text = serde_json::to_string(value).map_err(|e| Failure::Refused(e.to_string()))?;
    text.push('\n');
    out(&text)
}

fn print_id(g: &Global, graph: &Graph) -> CliResult {
    match g.format {
        Format::Json => emit(&serde_json::json!({ "id": graph.id() })),
        Format::Table => out(&format!("{}\n", graph.id())),
    }
}

fn cmd_sld(g: &Global, graph: &Graph) -> CliResult {
    let sld = engine(g)?.sld(graph, g.force)?;
    let decayed = g.noise.map(|p| decay(&sld, p)).transpose()?;
    match (g.format, decayed) {
        (Format::Json, Some(d)) => emit(&d.to_json()),
        (Format::Json, None) => emit(&sld.to_json()),
        (Format::Table, d) => out(&table::sld(&sld, d.as_ref())),
    }
}

fn cmd_thresholds(g: &Global, graph: &Graph) -> CliResult {
    let sld = engine(g)?.sld(graph, g.force)?;
    let report = thresholds(graph, &sld);
    match g.format {
        Format::Json => emit(&report.to_json()),
        Format::Table => out(&table::thresholds(&report)),
    }
}

fn cmd_stabilizers(g: &Global, graph: &Graph, limit: u64) -> CliResult {
    let stream = enumerate_stabilizers(graph).map_err(|e| Failure::Refused(e.to_string()))?;
    let total = stream.len() as u64;
    let shown = stream.take(usize::try_from(limit).unwrap_or(usize::MAX));
    match g.format {
        Format::Json => {
            let stabilizers: Vec<_> = shown.map(|s| s.pauli.to_json()).collect();
            emit(&serde_json::json!({ "n": graph.n(), "total": total, "stabilizers": stabilizers }))
        }
        Format::Table => out(&shown.map(|s| format!("{}\n", s.pauli)).collect::<String>()),
    }
}

fn serve(g: &Global, addr: SocketAddr) -> CliResult {
    let engine = Arc::new(engine(g)?);
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Refused(e.to_string()))?;
    eprintln!("serving on http://{addr}");
    rt.block_on(gsv_service::serve(addr, engine))
        .map_err(|e| Failure::Refused(e.to_string()))
}
