use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Args;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hyperdist::embedding::mds_embed;
use hyperdist::ingest::{build_proximity_network, parse_publications};
use hyperdist::io::{network_to_json, write_file};

use crate::{file_label, matrix_of, to_pretty, warn, CorpusArgs, EmbedArgs, ScalarModeArgs, SolverArg};

#[derive(Args, Debug, Clone)]
pub(crate) struct PipelineArgs {
    /// JSON-lines corpus; repeat for several corpora.
    #[arg(long = "corpus", required = true)]
    corpora: Vec<PathBuf>,
    /// Year window FROM:TO; repeat for several windows. Each corpus is
    /// filtered by each window. Without windows all years are kept.
    #[arg(long = "window", value_parser = parse_window)]
    windows: Vec<(i32, i32)>,
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    mode: ScalarModeArgs,
    #[arg(long, value_enum, default_value_t = SolverArg::Bnb)]
    solver: SolverArg,
    #[command(flatten)]
    embed: EmbedArgs,
    /// Output directory.
    #[arg(short, long)]
    out: PathBuf,
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected FROM:TO, got {s:?}"))?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad year {a:?}"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad year {b:?}"))?;
    if a > b {
        return Err(format!("window {a}:{b} ends before it starts"));
    }
    Ok((a, b))
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Outputs {
    dir: PathBuf,
    files: Vec<Value>,
}

impl Outputs {
    fn write(&mut self, name: &str, text: &str) -> anyhow::Result<()> {
        let path = self.dir.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
        write_file(&path, text)?;
        self.files.push(json!({ "path": name, "sha256": sha256(text.as_bytes()) }));
        Ok(())
    }
}

pub(crate) fn run(args: &PipelineArgs, seed: u64, quiet: bool) -> anyhow::Result<()> {
    let windows: Vec<Option<(i32, i32)>> =
        if args.windows.is_empty() { vec![None] } else { args.windows.iter().copied().map(Some).collect() };
    let mut out = Outputs { dir: args.out.clone(), files: Vec::new() };
    let mut inputs = Vec::new();
    let mut labels = Vec::new();
    let mut nets = Vec::new();
    for path in &args.corpora {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        inputs.push(json!({ "path": path.display().to_string(), "sha256": sha256(&bytes) }));
        let parsed = parse_publications(path)?;
        for w in &parsed.warnings {
            warn(quiet, &format!("{}: {w}", path.display()));
        }
        for window in &windows {
            let mut filter = args.corpus.filter();
            let label = match window {
                Some((a, b)) => {
                    filter.from_year = Some(*a);
                    filter.to_year = Some(*b);
                    format!("{}_{a}-{b}", file_label(path))
                }
                None => file_label(path),
            };
            if labels.contains(&label) {
                bail!("two inputs share the label {label:?}; rename one corpus file");
            }
            let built = build_proximity_network::<f64>(&parsed.records, &filter, args.corpus.epsilon_mode)
                .with_context(|| format!("building {label}"))?;
            for w in &built.warnings {
                warn(quiet, &format!("{label}: {w}"));
            }
            out.write(&format!("networks/{label}.json"), &network_to_json(&built.network))?;
            labels.push(label);
            nets.push(built.network);
        }
    }

    let matrix = matrix_of(labels, &nets, args.mode.objective(), args.solver.into())?;
    out.write("matrix.json", &matrix.to_json())?;
    out.write("matrix.csv", &matrix.to_csv())?;
    let embedding = mds_embed(&matrix, &args.embed.options(seed))?;
    out.write("embedding.json", &embedding.to_json())?;
    out.write("embedding.csv", &embedding.to_csv())?;

    let manifest = json!({
        "tool": "hyperdist",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "flags": {
            "windows": args.windows.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>(),
            "from_year": args.corpus.from_year,
            "to_year": args.corpus.to_year,
            "center": args.corpus.center,
            "order": args.corpus.order,
            "epsilon_mode": args.corpus.epsilon_mode.to_string(),
            "distance": args.mode.describe(),
            "solver": hyperdist::Solver::from(args.solver).name(),
            "dims": args.embed.options(seed).dims,
            "max_iter": args.embed.options(seed).max_iter,
            "tol": args.embed.options(seed).tol,
        },
        "inputs": inputs,
        "outputs": out.files,
    });
    let text = to_pretty(&manifest);
    write_file(&args.out.join("manifest.json"), &text)?;
    println!("{}", Path::new(&args.out).join("manifest.json").display());
    Ok(())
}
