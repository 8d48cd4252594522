//! Wall-clock timing of every measure on one graph.

use std::io::Write;
use std::time::Instant;

use crate::centrality::Measure;
use crate::error::Result;
use crate::got::{run_got, GotConfig};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub measure: Measure,
    pub seconds: f64,
    /// Only set for the simulation.
    pub thief_steps: Option<u64>,
}

/// Times the four classical measures on the binarized graph, then GoT on `g`
/// as given.
pub fn bench_measures(g: &Graph, cfg: &GotConfig) -> Vec<BenchRow> {
    let plain = g.binarized();
    let mut rows: Vec<BenchRow> = Measure::CLASSICAL
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let scores = m.compute(&plain).expect("classical measure");
            let seconds = start.elapsed().as_secs_f64();
            drop(scores);
            BenchRow {
                measure: m,
                seconds,
                thief_steps: None,
            }
        })
        .collect();
    let start = Instant::now();
    let out = run_got(g, cfg);
    rows.push(BenchRow {
        measure: Measure::GotVertex,
        seconds: start.elapsed().as_secs_f64(),
        thief_steps: Some(out.thief_steps),
    });
    rows
}

/// `measure,seconds,thief_steps`; the last field is empty for classical rows.
pub fn write_bench_csv<W: Write>(rows: &[BenchRow], mut out: W) -> Result<()> {
    writeln!(out, "measure,seconds,thief_steps")?;
    for r in rows {
        let steps = r.thief_steps.map(|s| s.to_string()).unwrap_or_default();
        writeln!(out, "{},{:.9},{steps}", r.measure, r.seconds)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::got::default_epochs;

    #[test]
    fn triangle_has_every_row() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(1, 2, 1.0).unwrap();
        g.add_edge(0, 2, 1.0).unwrap();
        let rows = bench_measures(&g, &GotConfig::default());
        let names: Vec<&str> = rows.iter().map(|r| r.measure.name()).collect();
        assert_eq!(
            names,
            [
                "degree",
                "betweenness",
                "closeness",
                "clustering",
                "got_vertex"
            ]
        );
        assert!(rows.iter().all(|r| r.seconds > 0.0));
        assert_eq!(rows[4].thief_steps, Some(3 * default_epochs(3) as u64));

        let mut buf = Vec::new();
        write_bench_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().nth(1).unwrap().ends_with(','));
    }
}
