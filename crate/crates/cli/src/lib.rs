//! The `graphnim` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification disagreements,
//! 3 a classifier contradiction.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use graphnim::characterizations::{classify_topology, RuleId};
use graphnim::game::{automorphism_edge_perms, GraphTopology, WeightConfig};
use graphnim::solver::DEFAULT_WEIGHT_CAP;
use graphnim::verify::{emit_report, verify_graph, VerifyOptions};
use graphnim::wire::{Analysis, ClassifierWire, ConfigWire, MoveWire, NewSessionRequest, Player, SessionState};
use graphnim::{Error, GraphId, Solver};
use graphnim_client::Client;
use graphnim_service::ServiceConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "graphnim", version, about = "Solve, classify and play Graph Nim positions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Position {
    /// Catalog id (F1..I2) or `custom:AB,BC,CA`
    #[arg(long)]
    graph: String,
    /// `AB=5,BC=1,...` or plain values in edge order, e.g. `5,1,6,11`
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a position by exhaustive search and print a winning move
    Solve {
        #[command(flatten)]
        position: Position,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
        weight_cap: u32,
        /// Print the full analysis as JSON
        #[arg(long)]
        json: bool,
    },
    /// Apply the closed-form characterization for a catalog graph
    Classify {
        #[command(flatten)]
        position: Position,
        /// Print the rule trace as JSON
        #[arg(long)]
        trace: bool,
    },
    /// Compare the classifier with the solver on every configuration up to a bound
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        max_weight: u32,
        /// Write the line-delimited report here
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
        weight_cap: u32,
    },
    /// Play against the engine in the terminal
    Play {
        #[command(flatten)]
        position: Position,
        /// Move first (by default the engine opens)
        #[arg(long)]
        human_first: bool,
        /// Use a running service instead of an in-process one
        #[arg(long)]
        server: Option<String>,
    },
    /// Run the HTTP service
    Serve {
        /// Overridden by GRAPHNIM_PORT when set
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of static files served at `/`
        #[arg(long)]
        static_dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WEIGHT_CAP)]
        weight_cap: u32,
    },
    /// List the catalog graphs
    Catalog,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Disagreements(u64),
    Contradiction(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Contradiction { .. } => Failure::Contradiction(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<graphnim_client::ClientError> for Failure {
    fn from(e: graphnim_client::ClientError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

/// Runs with the process's stdin, stdout and stderr.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = std::io::stdin();
    run_cli_with(args, &mut stdin.lock(), &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_cli_with<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve { position, weight_cap, json } => solve(&position, weight_cap, json, out),
        Command::Classify { position, trace } => classify(&position, trace, out),
        Command::Verify { graph, max_weight, report, jobs, weight_cap } => {
            verify(&graph, max_weight, report, jobs, weight_cap, out)
        }
        Command::Play { position, human_first, server } => play(&position, human_first, server, input, out),
        Command::Serve { port, static_dir, weight_cap } => serve(port, static_dir, weight_cap, out),
        Command::Catalog => catalog(out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Disagreements(_) => EXIT_DISAGREEMENT,
            Failure::Contradiction(_) => EXIT_CONTRADICTION,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Contradiction(m) => m.clone(),
            Failure::Disagreements(n) => format!("{n} disagreements"),
        }
    }
}

fn parse_graph(text: &str) -> Result<GraphTopology, Error> {
    match text.strip_prefix("custom:") {
        Some(edges) => {
            let names: Vec<&str> = edges.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            GraphTopology::from_edge_names(&names)
        }
        None => Ok(GraphTopology::catalog(text.parse()?)),
    }
}

fn parse_position(position: &Position) -> Result<(GraphTopology, WeightConfig), Error> {
    let topology = parse_graph(&position.graph)?;
    let text = position.weights.trim();
    let config = if text.contains('=') {
        topology.parse_weights(text)?
    } else {
        let values = text
            .split(',')
            .map(|v| v.trim().parse::<u32>().map_err(|_| Error::InvalidConfig(format!("bad weight `{v}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        WeightConfig::for_topology(&topology, values)?
    };
    Ok((topology, config))
}

fn describe(mv: &MoveWire) -> String {
    let parts: Vec<String> = mv.removals.iter().map(|(e, r)| format!("{e}-{r}")).collect();
    format!("{}: {}", mv.vertex, parts.join(" "))
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn solve(position: &Position, weight_cap: u32, json: bool, out: &mut dyn Write) -> Outcome {
    let (topology, config) = parse_position(position)?;
    let solver = Solver::new(topology.clone()).with_weight_cap(weight_cap);
    let analysis = Analysis::compute(&solver, &config)?;
    if json {
        return json_line(out, &analysis);
    }
    writeln!(out, "{} {}: {}", topology.name(), topology.format_weights(&config), analysis.oracle)?;
    match &analysis.optimal_move {
        Some(mv) => writeln!(out, "winning move {}", describe(mv))?,
        None => writeln!(out, "no winning move")?,
    }
    Ok(())
}

fn classify(position: &Position, trace: bool, out: &mut dyn Write) -> Outcome {
    let (topology, config) = parse_position(position)?;
    let c = classify_topology(&topology, &config)?;
    writeln!(out, "{} {}: {} ({})", topology.name(), topology.format_weights(&config), c.verdict, c.rule)?;
    if c.rule == RuleId::H1Unknown {
        writeln!(out, "no rule decides this position; use `solve`")?;
    }
    if trace {
        json_line(out, &ClassifierWire::from(&c).trace)?;
    }
    Ok(())
}

fn verify(
    graph: &str,
    max_weight: u32,
    report_path: Option<PathBuf>,
    jobs: Option<usize>,
    weight_cap: u32,
    out: &mut dyn Write,
) -> Outcome {
    let id: GraphId = graph.parse()?;
    let options = VerifyOptions { max_weight, jobs, weight_cap };
    let report = verify_graph(id, &options)?;
    if let Some(path) = &report_path {
        emit_report(&report, path)?;
    }
    let s = &report.summary;
    writeln!(
        out,
        "{} max weight {}: {} configs, {} winning, {} losing, {} unknown, {} agreements, {} disagreements ({} ms)",
        s.graph, s.max_weight, s.total, s.winning, s.losing, s.unknown, s.agreements, s.disagreements, s.duration_ms
    )?;
    for d in report.disagreements.iter().take(10) {
        writeln!(out, "  {:?}: classifier {} ({}), oracle {}", d.weights, d.classifier, d.rule, d.oracle)?;
    }
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Disagreements(s.disagreements))
    }
}

fn catalog(out: &mut dyn Write) -> Outcome {
    for id in GraphId::ALL {
        let topology = GraphTopology::catalog(id);
        writeln!(
            out,
            "{id}  edges {}  automorphisms {}",
            topology.edge_names().join(","),
            automorphism_edge_perms(id).len()
        )?;
    }
    Ok(())
}

fn runtime() -> Outcome<tokio::runtime::Runtime> {
    Ok(tokio::runtime::Builder::new_multi_thread().enable_all().build()?)
}

fn serve(port: u16, static_dir: Option<PathBuf>, weight_cap: u32, out: &mut dyn Write) -> Outcome {
    let port = match std::env::var("GRAPHNIM_PORT") {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("GRAPHNIM_PORT `{v}` is not a port")))?,
        Err(_) => port,
    };
    let config = ServiceConfig { static_dir, weight_cap, ..ServiceConfig::default() };
    runtime()?.block_on(async {
        let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
        writeln!(out, "listening on http://{}", listener.local_addr()?)?;
        out.flush()?;
        graphnim_service::serve(listener, &config).await?;
        Ok(())
    })
}

fn prompt(out: &mut dyn Write, input: &mut dyn BufRead, text: &str) -> Outcome<Option<String>> {
    write!(out, "{text}")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_string()))
}

fn show(out: &mut dyn Write, state: &SessionState) -> Outcome {
    if let Some(mv) = &state.engine_move {
        writeln!(out, "engine plays {}", describe(mv))?;
    }
    let board: Vec<String> = state.weights.iter().map(|(e, w)| format!("{e}={w}")).collect();
    writeln!(out, "position {}", board.join(","))?;
    Ok(())
}

fn play(position: &Position, human_first: bool, server: Option<String>, input: &mut dyn BufRead, out: &mut dyn Write) -> Outcome {
    let (topology, config) = parse_position(position)?;
    if topology.id().is_none() {
        return Err(Failure::Usage("play needs a catalog graph".into()));
    }
    let rt = runtime()?;
    let client = match server {
        Some(url) => Client::new(url),
        None => {
            let addr = rt.block_on(graphnim_service::spawn(([127, 0, 0, 1], 0).into(), ServiceConfig::default()))?;
            Client::new(format!("http://{addr}"))
        }
    };
    let start = ConfigWire::new(&topology, &config);
    let request = NewSessionRequest {
        graph: start.graph,
        weights: start.weights,
        first: if human_first { Player::Human } else { Player::Engine },
    };
    let mut state = rt.block_on(client.new_session(&request))?;
    writeln!(out, "commands: a vertex letter, `hint`, or `quit`")?;
    'turn: loop {
        show(out, &state)?;
        if state.game_over {
            let who = match state.winner {
                Some(Player::Human) => "you win",
                _ => "the engine wins",
            };
            writeln!(out, "game over: {who}")?;
            return Ok(());
        }
        let Some(cmd) = prompt(out, input, "vertex> ")? else { return Ok(()) };
        match cmd.as_str() {
            "" => continue,
            "quit" | "q" => return Ok(()),
            "hint" => {
                let a = &state.analysis;
                match &a.optimal_move {
                    Some(mv) => writeln!(out, "{}: try {}", a.oracle, describe(mv))?,
                    None => writeln!(out, "{}: every move loses against best play", a.oracle)?,
                }
                continue;
            }
            _ => {}
        }
        let vertex = match cmd.chars().next().and_then(|c| topology.vertex_index(c.to_ascii_uppercase())) {
            Some(v) if cmd.chars().count() == 1 => v,
            _ => {
                writeln!(out, "unknown vertex `{cmd}`")?;
                continue;
            }
        };
        let mut removals = std::collections::BTreeMap::new();
        for &e in topology.incident(vertex) {
            let name = topology.edge_name(e);
            let have = state.weights[&name];
            if have == 0 {
                continue;
            }
            let Some(text) = prompt(out, input, &format!("remove from {name} (0-{have})> "))? else { return Ok(()) };
            match text.parse::<u32>() {
                Ok(r) => {
                    removals.insert(name, r);
                }
                Err(_) => {
                    writeln!(out, "not a number: `{text}`")?;
                    continue 'turn;
                }
            }
        }
        let mv = MoveWire { vertex: topology.vertices()[vertex].to_string(), removals };
        match rt.block_on(client.play_move(&state.id, &mv)) {
            Ok(next) => state = next,
            Err(e) => writeln!(out, "rejected: {e}")?,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let contradiction = Error::Contradiction { weights: vec![1, 1, 1, 1], winning: vec![], losing: vec![] };
        assert_eq!(Failure::from(contradiction).exit_code(), EXIT_CONTRADICTION);
        assert_eq!(Failure::from(Error::Unsupported).exit_code(), EXIT_USAGE);
        assert_eq!(Failure::Disagreements(3).exit_code(), EXIT_DISAGREEMENT);
    }
}
