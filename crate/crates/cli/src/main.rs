use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperdist::distance::{distance, distance_matrix, Objective};
use hyperdist::duality::dualize;
use hyperdist::embedding::{mds_embed, EmbedOptions};
use hyperdist::ingest::{
    build_proximity_network, parse_publications, publications_to_jsonl, synth_corpus, CorpusFilter, CorpusProfile,
    EpsilonMode,
};
use hyperdist::io::{load_network, network_to_json, report_to_value, write_file, LabeledMatrix};
use hyperdist::validate::validate_report;
use hyperdist::{DistanceMode, Error, Network, PNorm, Solver};

mod pipeline;

#[derive(Parser, Debug)]
#[command(name = "hyperdist", version, about = "Exact distances between high order networks")]
struct Cli {
    /// Seed for every random choice (synthetic corpora, embedding jitter).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suppress warnings on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check network files against their class axioms.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Distance between two network files.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum, default_value_t = SolverArg::Bnb)]
        solver: SolverArg,
    },
    /// Pairwise distance matrix of several network files.
    Matrix {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        mode: ScalarModeArgs,
        #[arg(long, value_enum, default_value_t = SolverArg::Bnb)]
        solver: SolverArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Map a proximity network to its dissimilarity dual or back.
    Dualize {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build a coauthorship proximity network from a JSON-lines corpus.
    Build {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// 2D stress embedding of a distance matrix file.
    Embed {
        matrix: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Corpora to networks, distance matrix and embedding in one run.
    Pipeline(pipeline::PipelineArgs),
    /// Write a synthetic single-author corpus.
    Synth {
        #[arg(long, value_enum)]
        profile: ProfileArg,
        #[arg(long)]
        papers: Option<usize>,
        /// Name of the central author.
        #[arg(long)]
        center: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub(crate) struct ModeArgs {
    /// Order-k distance (default 1).
    #[arg(short, long)]
    k: Option<usize>,
    /// Distance vector over all orders.
    #[arg(long)]
    vector: bool,
    /// p-norm distance; a real p >= 1 or "inf".
    #[arg(short, long)]
    p: Option<PNorm>,
}

impl ModeArgs {
    fn mode(&self) -> DistanceMode {
        match (self.k, self.vector, self.p) {
            (_, true, _) => DistanceMode::Vector,
            (_, _, Some(p)) => DistanceMode::Norm(p),
            (k, _, None) => DistanceMode::Order(k.unwrap_or(1)),
        }
    }
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub(crate) struct ScalarModeArgs {
    /// Order-k distance (default 1).
    #[arg(short, long)]
    k: Option<usize>,
    /// p-norm distance; a real p >= 1 or "inf".
    #[arg(short, long)]
    p: Option<PNorm>,
}

impl ScalarModeArgs {
    pub(crate) fn objective(&self) -> Objective {
        match self.p {
            Some(p) => Objective::Norm(p),
            None => Objective::Order(self.k.unwrap_or(1)),
        }
    }

    pub(crate) fn describe(&self) -> Value {
        match self.objective() {
            Objective::Order(k) => json!({ "k": k }),
            Objective::Norm(p) => json!({ "p": p.to_string() }),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub(crate) struct CorpusArgs {
    #[arg(long)]
    from_year: Option<i32>,
    #[arg(long)]
    to_year: Option<i32>,
    /// Keep only papers by this author.
    #[arg(long)]
    center: Option<String>,
    /// Highest relationship order K.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// ignore, auto or a number.
    #[arg(long, default_value = "ignore")]
    epsilon_mode: EpsilonMode,
}

impl CorpusArgs {
    pub(crate) fn filter(&self) -> CorpusFilter {
        CorpusFilter {
            from_year: self.from_year,
            to_year: self.to_year,
            center: self.center.clone(),
            order: self.order,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub(crate) struct EmbedArgs {
    #[arg(long, default_value_t = 2)]
    dims: usize,
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

impl EmbedArgs {
    pub(crate) fn options(&self, seed: u64) -> EmbedOptions {
        EmbedOptions { dims: self.dims, seed, max_iter: self.max_iter, tol: self.tol }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SolverArg {
    Exhaustive,
    Bnb,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Exhaustive => Solver::Exhaustive,
            SolverArg::Bnb => Solver::BranchAndBound,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ProfileArg {
    Gg,
    Mv,
}

/// Writes `text` to `path`, or to stdout without one.
pub(crate) fn emit(text: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => Ok(write_file(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub(crate) fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub(crate) fn warn(quiet: bool, msg: &str) {
    if !quiet {
        eprintln!("warning: {msg}");
    }
}

/// Failed check that is not an input problem: exit code 1.
#[derive(Debug)]
struct Rejected;

impl std::fmt::Display for Rejected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("validation failed")
    }
}

impl std::error::Error for Rejected {}

fn cmd_validate(paths: &[PathBuf]) -> anyhow::Result<()> {
    let mut reports = Vec::new();
    let mut input_error: Option<Error> = None;
    let mut failed = false;
    for path in paths {
        match load_network(path) {
            Ok(net) => {
                let report = validate_report(&net);
                failed |= !report.ok;
                let mut v = serde_json::to_value(&report)?;
                v["path"] = json!(path.display().to_string());
                reports.push(v);
            }
            Err(e) => {
                reports.push(json!({ "path": path.display().to_string(), "ok": false, "error": e.to_string() }));
                input_error.get_or_insert(e);
            }
        }
    }
    print!("{}", to_pretty(&Value::Array(reports)));
    match input_error {
        Some(e) => Err(e.into()),
        None if failed => Err(Rejected.into()),
        None => Ok(()),
    }
}

fn cmd_distance(a: &Path, b: &Path, mode: DistanceMode, solver: Solver) -> anyhow::Result<()> {
    let x = load_network(a)?;
    let y = load_network(b)?;
    let report = distance(&x, &y, mode, solver)?;
    print!("{}", to_pretty(&report_to_value(&report, &x, &y)));
    Ok(())
}

pub(crate) fn file_label(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

pub(crate) fn matrix_of(
    labels: Vec<String>,
    nets: &[Network],
    objective: Objective,
    solver: Solver,
) -> anyhow::Result<LabeledMatrix> {
    let matrix = distance_matrix(nets, objective, solver)?;
    Ok(LabeledMatrix { labels, matrix })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Validate { paths } => cmd_validate(&paths),
        Command::Distance { a, b, mode, solver } => cmd_distance(&a, &b, mode.mode(), solver.into()),
        Command::Matrix { paths, mode, solver, out, csv } => {
            let nets = paths.iter().map(load_network).collect::<hyperdist::Result<Vec<_>>>()?;
            let labels = paths.iter().map(|p| file_label(p)).collect();
            let m = matrix_of(labels, &nets, mode.objective(), solver.into())?;
            if let Some(csv) = csv {
                write_file(&csv, &m.to_csv())?;
            }
            emit(&m.to_json(), out.as_deref())
        }
        Command::Dualize { input, out } => {
            let net = load_network(&input)?;
            emit(&network_to_json(&dualize(&net)?), out.as_deref())
        }
        Command::Build { input, corpus, out } => {
            let parsed = parse_publications(&input)?;
            for w in &parsed.warnings {
                warn(cli.quiet, w);
            }
            let built = build_proximity_network::<f64>(&parsed.records, &corpus.filter(), corpus.epsilon_mode)?;
            for w in &built.warnings {
                warn(cli.quiet, w);
            }
            emit(&network_to_json(&built.network), out.as_deref())
        }
        Command::Embed { matrix, embed, out, csv } => {
            let m = LabeledMatrix::load(&matrix)?;
            let e = mds_embed(&m, &embed.options(cli.seed))?;
            if let Some(csv) = csv {
                write_file(&csv, &e.to_csv())?;
            }
            emit(&e.to_json(), out.as_deref())
        }
        Command::Pipeline(args) => pipeline::run(&args, cli.seed, cli.quiet),
        Command::Synth { profile, papers, center, out } => {
            let mut p = match profile {
                ProfileArg::Gg => CorpusProfile::gg_like(),
                ProfileArg::Mv => CorpusProfile::mv_like(),
            };
            if let Some(n) = papers {
                p.papers = n;
            }
            if let Some(c) = center {
                p.center = c;
            }
            let records = synth_corpus(&p, cli.seed)?;
            emit(&publications_to_jsonl(&records), out.as_deref())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<Rejected>() {
        return 1;
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return if e.is_input_error() { 2 } else { 1 };
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return 2;
        }
    }
    1
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HYPERDIST_THREADS") {
        let n: usize =
            v.trim().parse().map_err(|_| anyhow!("HYPERDIST_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring thread pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.is::<Rejected>() {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
