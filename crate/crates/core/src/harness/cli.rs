//! Command-line front end. Exit codes: 0 success, 1 usage error or missing
//! input, 2 data error.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use super::bench::{bench_measures, write_bench_csv};
use super::experiment::run_experiment;
use super::spec::ExperimentSpec;
use crate::centrality::Measure;
use crate::error::Error;
use crate::generators::{GenSpec, Model};
use crate::got::{run_got, GotConfig};
use crate::graph::Graph;
use crate::io::{
    read_centrality_csv, write_centrality_csv, write_edge_list, write_edge_scores_csv, NetworkFile,
    NetworkFormat,
};
use crate::stats::{format_coefficient, Coefficients};

#[derive(Debug, Parser)]
#[command(
    name = "thieves",
    version,
    about = "Game of Thieves and classical centrality toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Gml,
}

impl From<FormatArg> for NetworkFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Edgelist => NetworkFormat::EdgeList,
            FormatArg::Gml => NetworkFormat::Gml,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random network as an edge list.
    Generate {
        #[arg(long)]
        model: String,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        p: f64,
        /// Ring neighbors (nws).
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Edges per new vertex (ba_tf).
        #[arg(long, default_value_t = 5)]
        e: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute centrality measures into a CSV.
    Centrality {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated: degree, betweenness, closeness, clustering, got.
        #[arg(long, default_value = "degree,betweenness,closeness,clustering")]
        measures: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Seed for `got`, if requested.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the Game of Thieves simulation.
    Got {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        thieves: usize,
        /// Initial vdiamonds per vertex (default: vertex count).
        #[arg(long)]
        vdiamonds: Option<u64>,
        /// Epoch count (default: floor(ln^3 |V|)).
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write edge scores as `u,v,psi_bar`.
        #[arg(long)]
        edges_out: Option<PathBuf>,
        /// Ignore edge weights.
        #[arg(long)]
        binarize: bool,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Correlate one column of two centrality CSVs, matched by vertex label.
    Correlate {
        #[arg(long)]
        in_a: PathBuf,
        #[arg(long)]
        in_b: PathBuf,
        /// Column of the first file (default: its only score column).
        #[arg(long)]
        col_a: Option<String>,
        #[arg(long)]
        col_b: Option<String>,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a correlation experiment from a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `out_dir` from the config.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Overrides `workers` from the config.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Time every measure on one network.
    Bench {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Generate {
            model,
            v,
            p,
            k,
            e,
            seed,
            out,
        } => {
            let model: Model = model
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let spec = match model {
                Model::Er => GenSpec::er(v, p, seed),
                Model::Nws => GenSpec::nws(v, k, p, seed),
                Model::BaTf => GenSpec::ba_tf(v, e, p, seed),
            };
            spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let g = spec.generate()?;
            let isolated = (0..g.vertex_count()).filter(|&u| g.degree(u) == 0).count();
            if isolated > 0 {
                warn!("{isolated} isolated vertices cannot be written to an edge list and are dropped");
            }
            write_edge_list(&g, create(&out)?)?;
            info!(
                "wrote {} vertices, {} edges to {}",
                g.vertex_count(),
                g.edge_count(),
                out.display()
            );
            Ok(())
        }
        Command::Centrality {
            input,
            measures,
            out,
            format,
            seed,
        } => {
            let measures: Vec<Measure> = measures
                .split(',')
                .map(|m| m.parse().map_err(|e: Error| Failure::Usage(e.to_string())))
                .collect::<Result<_, _>>()?;
            let g = load(&input, format)?;
            let plain = g.binarized();
            let columns: Vec<_> = measures
                .iter()
                .map(|&m| match m.compute(&plain) {
                    Some(col) => col,
                    None => run_got(&g, &GotConfig::with_seed(seed)).vertex,
                })
                .collect();
            write_centrality_csv(&g, &columns, create(&out)?)?;
            Ok(())
        }
        Command::Got {
            input,
            thieves,
            vdiamonds,
            epochs,
            seed,
            out,
            edges_out,
            binarize,
            format,
        } => {
            if thieves == 0 || epochs == Some(0) {
                return Err(Failure::Usage(
                    "--thieves and --epochs must be positive".into(),
                ));
            }
            let mut g = load(&input, format)?;
            if binarize {
                g = g.binarized();
            }
            let cfg = GotConfig {
                thieves_per_vertex: thieves,
                initial_vdiamonds: vdiamonds,
                epochs,
                seed,
            };
            let result = run_got(&g, &cfg);
            info!(
                "{} epochs, {} thief steps",
                result.epochs, result.thief_steps
            );
            write_centrality_csv(&g, std::slice::from_ref(&result.vertex), create(&out)?)?;
            if let Some(path) = edges_out {
                write_edge_scores_csv(&g, &result.edges, create(&path)?)?;
            }
            Ok(())
        }
        Command::Correlate {
            in_a,
            in_b,
            col_a,
            col_b,
            out,
        } => {
            let (labels_a, a) = read_column(&in_a, col_a.as_deref())?;
            let (labels_b, b) = read_column(&in_b, col_b.as_deref())?;
            let (x, y) = align(&labels_a, &a, &labels_b, &b)?;
            let c = Coefficients::compute(&x, &y)?;
            let text = format!(
                "pearson,spearman,kendall_b,kendall_a\n{},{},{},{}\n",
                format_coefficient(c.pearson),
                format_coefficient(c.spearman),
                format_coefficient(c.kendall_b),
                format_coefficient(c.kendall_a)
            );
            match out {
                Some(path) => create(&path)?.write_all(text.as_bytes())?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Experiment {
            config,
            out_dir,
            workers,
        } => {
            require(&config)?;
            let mut spec = ExperimentSpec::from_file(&config)?;
            if let Some(dir) = out_dir {
                spec.out_dir = dir;
            }
            if let Some(w) = workers {
                spec.workers = w;
            }
            if let Some(missing) = spec.files.iter().find(|f| !f.exists()) {
                if spec.models.contains(&super::spec::ModelChoice::File) {
                    return Err(Failure::Usage(format!(
                        "no such file: {}",
                        missing.display()
                    )));
                }
            }
            let outcome = run_experiment(&spec)?;
            for f in &outcome.failures {
                eprintln!("cell {} failed: {}", f.network_id, f.message);
            }
            if outcome.reports.is_empty() && !outcome.failures.is_empty() {
                return Err(Failure::Data(Error::InvalidParameter(
                    "every cell failed".into(),
                )));
            }
            Ok(())
        }
        Command::Bench {
            input,
            seed,
            out,
            format,
        } => {
            let g = load(&input, format)?;
            let rows = bench_measures(&g, &GotConfig::with_seed(seed));
            match out {
                Some(path) => write_bench_csv(&rows, create(&path)?)?,
                None => write_bench_csv(&rows, io::stdout().lock())?,
            }
            Ok(())
        }
    }
}

fn require(path: &Path) -> CliResult {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("no such file: {}", path.display())))
    }
}

fn load(path: &Path, format: Option<FormatArg>) -> Result<Graph, Failure> {
    require(path)?;
    let (_, g) = NetworkFile::read(path, format.map(Into::into))?;
    Ok(g)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    Ok(BufWriter::new(File::create(path)?))
}

fn read_column(path: &Path, name: Option<&str>) -> Result<(Vec<String>, Vec<f64>), Failure> {
    require(path)?;
    let table = read_centrality_csv(BufReader::new(File::open(path)?))?;
    let values = match name {
        Some(n) => table
            .column(n)
            .ok_or_else(|| Failure::Usage(format!("{} has no column `{n}`", path.display())))?,
        None if table.columns.len() == 1 => &table.columns[0].1,
        None => {
            return Err(Failure::Usage(format!(
                "{} has {} score columns; pick one with --col-a/--col-b",
                path.display(),
                table.columns.len()
            )))
        }
    };
    Ok((table.labels.clone(), values.to_vec()))
}

/// Pairs up scores by label, in the order of the first file.
fn align(
    labels_a: &[String],
    a: &[f64],
    labels_b: &[String],
    b: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let index: HashMap<&str, usize> = labels_b
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if labels_a.len() != labels_b.len() {
        return Err(Error::LengthMismatch {
            expected: labels_a.len(),
            actual: labels_b.len(),
        }
        .into());
    }
    let mut y = Vec::with_capacity(a.len());
    for l in labels_a {
        let &j = index
            .get(l.as_str())
            .ok_or_else(|| Error::InvalidLabel(format!("{l} missing from second file")))?;
        y.push(b[j]);
    }
    Ok((a.to_vec(), y))
}
