//! Correlation experiment: GoT against the classical measures over a grid of
//! networks, with per-repetition coefficients averaged per cell.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;

use super::spec::{ExperimentSpec, ModelChoice, WeightedMode};
use crate::centrality::{CentralityVector, Measure};
use crate::error::{Error, Result};
use crate::generators::{GenSpec, Model};
use crate::got::run_got;
use crate::graph::Graph;
use crate::io::{write_centrality_csv, NetworkFile};
use crate::seed::derive_seed;
use crate::stats::{format_coefficient, Coefficients, CorrelationReport, KendallVariant};

pub const GRAPH_STREAM: u64 = 0;
pub const GOT_STREAM: u64 = 1;

/// Where a cell's networks come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// Template spec; the seed is filled in per repetition.
    Generated(GenSpec),
    File(PathBuf),
}

/// One `(model, size)` cell of the grid. For files, `key` is the position in
/// the file list and the size is only known after loading.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub model: ModelChoice,
    pub key: u64,
    pub network_id: String,
    pub source: Source,
}

impl Cell {
    pub fn graph_seed(&self, master: u64, rep: usize) -> u64 {
        derive_seed(
            master,
            &[self.model.code(), self.key, rep as u64, GRAPH_STREAM],
        )
    }

    pub fn got_seed(&self, master: u64, rep: usize) -> u64 {
        derive_seed(
            master,
            &[self.model.code(), self.key, rep as u64, GOT_STREAM],
        )
    }

    pub fn build(&self, master: u64, rep: usize) -> Result<Graph> {
        match &self.source {
            Source::Generated(template) => GenSpec {
                seed: self.graph_seed(master, rep),
                ..*template
            }
            .generate(),
            Source::File(path) => NetworkFile::read(path, None).map(|(_, g)| g),
        }
    }
}

/// Expands the spec into cells in report order: models as listed, then sizes
/// ascending (or files as listed).
pub fn cells(spec: &ExperimentSpec) -> Vec<Cell> {
    let mut out = Vec::new();
    for &model in &spec.models {
        match model {
            ModelChoice::Generated(m) => {
                for &v in &spec.sizes {
                    let template = match m {
                        Model::Er => GenSpec::er(v, spec.er_p, 0),
                        Model::Nws => GenSpec::nws(v, spec.nws_k, spec.nws_p, 0),
                        Model::BaTf => GenSpec::ba_tf(v, spec.ba_e, spec.ba_p, 0),
                    };
                    out.push(Cell {
                        model,
                        key: v as u64,
                        network_id: format!("{m}_{v}"),
                        source: Source::Generated(template),
                    });
                }
            }
            ModelChoice::File => {
                for (i, path) in spec.files.iter().enumerate() {
                    let stem = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| format!("file{i}"));
                    out.push(Cell {
                        model,
                        key: i as u64,
                        network_id: stem,
                        source: Source::File(path.clone()),
                    });
                }
            }
        }
    }
    out
}

/// Wall-clock seconds per phase of one repetition.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseTimings {
    pub phases: Vec<(&'static str, f64)>,
}

impl PhaseTimings {
    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases.push((phase, start.elapsed().as_secs_f64()));
        out
    }
}

/// Everything computed for one repetition of one cell.
#[derive(Debug, Clone)]
pub struct RepResult {
    pub graph: Graph,
    /// Degree, betweenness, closeness, clustering, then GoT.
    pub columns: Vec<CentralityVector>,
    /// GoT against each classical measure, in `Measure::CLASSICAL` order.
    pub coefficients: Vec<(Measure, Coefficients)>,
    pub timings: PhaseTimings,
}

/// Builds the network for `rep` and computes all five measures and the
/// correlations of GoT against each classical one.
pub fn run_repetition(spec: &ExperimentSpec, cell: &Cell, rep: usize) -> Result<RepResult> {
    let mut timings = PhaseTimings::default();
    let graph = timings.time("build", || cell.build(spec.seed, rep))?;
    let plain = graph.binarized();

    let mut columns = Vec::with_capacity(5);
    for m in Measure::CLASSICAL {
        let col = timings.time(m.name(), || m.compute(&plain).expect("classical measure"));
        columns.push(col);
    }

    let got_graph = match spec.weighted_mode {
        WeightedMode::UseWeights => &graph,
        WeightedMode::Binarize => &plain,
    };
    let cfg = crate::got::GotConfig {
        seed: cell.got_seed(spec.seed, rep),
        ..spec.got
    };
    let got = timings.time("got", || run_got(got_graph, &cfg));
    columns.push(got.vertex);

    let got_scores = &columns[4].scores;
    let coefficients = timings.time("correlate", || {
        Measure::CLASSICAL
            .iter()
            .zip(&columns)
            .map(|(&m, col)| Coefficients::compute(got_scores, &col.scores).map(|c| (m, c)))
            .collect::<Result<Vec<_>>>()
    })?;

    Ok(RepResult {
        graph,
        columns,
        coefficients,
        timings,
    })
}

#[derive(Debug, Clone)]
pub struct CellFailure {
    pub network_id: String,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentOutcome {
    /// One report per successful cell, in cell order.
    pub reports: Vec<CorrelationReport>,
    pub failures: Vec<CellFailure>,
}

struct RepSummary {
    size: usize,
    coefficients: Vec<(Measure, Coefficients)>,
    timings: PhaseTimings,
}

struct CellResult {
    model: &'static str,
    report: CorrelationReport,
    per_rep: Vec<Vec<(Measure, Coefficients)>>,
    timings: Vec<PhaseTimings>,
}

/// Runs every cell, writes the CSV outputs under `spec.out_dir`, and returns
/// the averaged reports. A failing cell is logged and left out; I/O errors on
/// the output directory abort the run.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let out_dir = &spec.out_dir;
    let centrality_dir = out_dir.join("centrality");
    fs::create_dir_all(&centrality_dir)?;

    let grid = cells(spec);
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|c| (0..spec.repetitions).map(move |r| (c, r)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let results: Vec<Result<RepSummary>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, r)| {
                let cell = &grid[c];
                let res = run_repetition(spec, cell, r)?;
                if spec.write_centralities {
                    let path = centrality_dir.join(format!("{}_rep{r}.csv", cell.network_id));
                    write_centrality_csv(
                        &res.graph,
                        &res.columns,
                        BufWriter::new(File::create(path)?),
                    )?;
                }
                info!("{} rep {r} done", cell.network_id);
                Ok(RepSummary {
                    size: res.graph.vertex_count(),
                    coefficients: res.coefficients,
                    timings: res.timings,
                })
            })
            .collect()
    });

    let mut outcome = ExperimentOutcome::default();
    let mut done = Vec::new();
    let mut results = results.into_iter();
    for cell in &grid {
        let reps: Vec<Result<RepSummary>> = results.by_ref().take(spec.repetitions).collect();
        match collect_cell(cell, reps) {
            Ok(r) => done.push(r),
            Err(e) => {
                warn!("cell {} skipped: {e}", cell.network_id);
                outcome.failures.push(CellFailure {
                    network_id: cell.network_id.clone(),
                    message: e.to_string(),
                });
            }
        }
    }

    write_atomic(&out_dir.join("correlations.csv"), &long_csv(&done))?;
    write_atomic(&out_dir.join("correlations_by_cell.csv"), &wide_csv(&done))?;
    write_atomic(
        &out_dir.join("correlations_by_rep.csv"),
        &per_rep_csv(&done),
    )?;
    write_atomic(&out_dir.join("timings.txt"), &timings_text(&done))?;
    write_atomic(&out_dir.join("run_metadata.txt"), &metadata_text(spec))?;

    outcome.reports = done.into_iter().map(|c| c.report).collect();
    Ok(outcome)
}

fn collect_cell(cell: &Cell, reps: Vec<Result<RepSummary>>) -> Result<CellResult> {
    let mut per_rep = Vec::with_capacity(reps.len());
    let mut timings = Vec::with_capacity(reps.len());
    let mut size = 0;
    for res in reps {
        let res = res?;
        size = res.size;
        per_rep.push(res.coefficients);
        timings.push(res.timings);
    }
    let pairs = Measure::CLASSICAL
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let runs: Vec<Coefficients> = per_rep.iter().map(|r| r[i].1).collect();
            (
                (Measure::GotVertex.name().to_string(), m.name().to_string()),
                Coefficients::mean(&runs),
            )
        })
        .collect();
    Ok(CellResult {
        model: cell.model.name(),
        report: CorrelationReport {
            network_id: cell.network_id.clone(),
            size,
            pairs,
        },
        per_rep,
        timings,
    })
}

fn coefficient_fields(c: &Coefficients) -> String {
    format!(
        "{},{},{},{}",
        format_coefficient(c.pearson),
        format_coefficient(c.spearman),
        format_coefficient(c.kendall_b),
        format_coefficient(c.kendall_a)
    )
}

/// `network,size,model,measure,pearson,spearman,kendall_b,kendall_a`, one
/// row per cell and classical measure.
fn long_csv(cells: &[CellResult]) -> String {
    let mut s = String::from("network,size,model,measure,pearson,spearman,kendall_b,kendall_a\n");
    for c in cells {
        let r = &c.report;
        for ((_, measure), coef) in &r.pairs {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.network_id,
                r.size,
                c.model,
                measure,
                coefficient_fields(coef)
            );
        }
    }
    s
}

/// One row per cell with every coefficient as its own column.
fn wide_csv(cells: &[CellResult]) -> String {
    let mut s = String::from("network,size,model");
    for m in Measure::CLASSICAL {
        for k in ["pearson", "spearman", "kendall_b", "kendall_a"] {
            let _ = write!(s, ",{k}_{}", m.name());
        }
    }
    s.push('\n');
    for c in cells {
        let r = &c.report;
        let _ = write!(s, "{},{},{}", r.network_id, r.size, c.model);
        for (_, coef) in &r.pairs {
            let _ = write!(s, ",{}", coefficient_fields(coef));
        }
        s.push('\n');
    }
    s
}

fn per_rep_csv(cells: &[CellResult]) -> String {
    let mut s = String::from("network,rep,measure,pearson,spearman,kendall_b,kendall_a\n");
    for c in cells {
        for (rep, coefs) in c.per_rep.iter().enumerate() {
            for (m, coef) in coefs {
                let _ = writeln!(
                    s,
                    "{},{rep},{m},{}",
                    c.report.network_id,
                    coefficient_fields(coef)
                );
            }
        }
    }
    s
}

fn timings_text(cells: &[CellResult]) -> String {
    let mut s = String::from("# wall-clock seconds per phase\n");
    for c in cells {
        for (rep, t) in c.timings.iter().enumerate() {
            let _ = write!(s, "{} rep{rep}", c.report.network_id);
            for (phase, secs) in &t.phases {
                let _ = write!(s, " {phase}={secs:.6}");
            }
            s.push('\n');
        }
    }
    s
}

fn metadata_text(spec: &ExperimentSpec) -> String {
    let models: Vec<&str> = spec.models.iter().map(|m| m.name()).collect();
    let sizes: Vec<String> = spec.sizes.iter().map(usize::to_string).collect();
    let auto = |x: Option<String>| x.unwrap_or_else(|| "auto".into());
    format!(
        "kendall_default = {}\n\
         weighted_mode = {}\n\
         classical_measures_on = binarized graph\n\
         seed = {}\n\
         models = {}\n\
         sizes = {}\n\
         repetitions = {}\n\
         er.p = {}\n\
         nws.k = {}\n\
         nws.p = {}\n\
         ba_tf.e = {}\n\
         ba_tf.p = {}\n\
         got.thieves = {}\n\
         got.vdiamonds = {}\n\
         got.epochs = {}\n",
        KendallVariant::default(),
        spec.weighted_mode,
        spec.seed,
        models.join(", "),
        sizes.join(", "),
        spec.repetitions,
        spec.er_p,
        spec.nws_k,
        spec.nws_p,
        spec.ba_e,
        spec.ba_p,
        spec.got.thieves_per_vertex,
        auto(spec.got.initial_vdiamonds.map(|v| v.to_string())),
        auto(spec.got.epochs.map(|v| v.to_string())),
    )
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(dir: &Path) -> ExperimentSpec {
        ExperimentSpec {
            models: vec![
                ModelChoice::Generated(Model::BaTf),
                ModelChoice::Generated(Model::Er),
            ],
            sizes: vec![60, 120],
            er_p: 0.08,
            repetitions: 2,
            seed: 5,
            out_dir: dir.to_path_buf(),
            ..ExperimentSpec::default()
        }
    }

    #[test]
    fn cell_seeds_are_distinct_and_stable() {
        let spec = small_spec(Path::new("."));
        let grid = cells(&spec);
        assert_eq!(grid.len(), 4);
        let mut seeds: Vec<u64> = grid
            .iter()
            .flat_map(|c| (0..2).flat_map(move |r| [c.graph_seed(5, r), c.got_seed(5, r)]))
            .collect();
        let n = seeds.len();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), n);

        // Dropping a size from the ladder leaves the other cells' seeds alone.
        let mut reduced = spec.clone();
        reduced.sizes = vec![120];
        let a = cells(&reduced);
        assert_eq!(a[0].graph_seed(5, 1), grid[1].graph_seed(5, 1));
    }

    #[test]
    fn shapes_of_the_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let spec = small_spec(dir.path());
        let out = run_experiment(&spec).unwrap();
        assert!(out.failures.is_empty());
        assert_eq!(out.reports.len(), 4);
        assert_eq!(out.reports[0].network_id, "ba_tf_60");
        assert_eq!(out.reports[3].size, 120);

        let long = fs::read_to_string(dir.path().join("correlations.csv")).unwrap();
        assert_eq!(long.lines().count(), 1 + 4 * 4);
        let wide = fs::read_to_string(dir.path().join("correlations_by_cell.csv")).unwrap();
        assert_eq!(wide.lines().count(), 1 + 4);
        assert!(wide.lines().all(|l| l.split(',').count() == 3 + 16));
        for net in ["ba_tf_60", "er_120"] {
            for r in 0..2 {
                assert!(dir
                    .path()
                    .join(format!("centrality/{net}_rep{r}.csv"))
                    .exists());
            }
        }
        let meta = fs::read_to_string(dir.path().join("run_metadata.txt")).unwrap();
        assert!(meta.contains("kendall_default = tau_b"));
    }

    #[test]
    fn failing_cell_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let spec = ExperimentSpec {
            models: vec![ModelChoice::File, ModelChoice::Generated(Model::BaTf)],
            sizes: vec![50],
            files: vec![dir.path().join("missing.gml")],
            repetitions: 1,
            out_dir: dir.path().join("out"),
            ..ExperimentSpec::default()
        };
        let out = run_experiment(&spec).unwrap();
        assert_eq!(out.failures.len(), 1);
        assert_eq!(out.failures[0].network_id, "missing");
        assert_eq!(out.reports.len(), 1);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let mut spec = small_spec(a.path());
        spec.workers = 1;
        run_experiment(&spec).unwrap();
        spec.out_dir = b.path().to_path_buf();
        spec.workers = 4;
        run_experiment(&spec).unwrap();
        for f in [
            "correlations.csv",
            "correlations_by_cell.csv",
            "centrality/er_60_rep1.csv",
        ] {
            assert_eq!(
                fs::read(a.path().join(f)).unwrap(),
                fs::read(b.path().join(f)).unwrap(),
                "{f}"
            );
        }
    }
}
