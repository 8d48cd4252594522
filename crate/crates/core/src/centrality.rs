//! Degree, betweenness, closeness, and local clustering.
//!
//! All four ignore edge weights: shortest paths are hop counts and adjacency is
//! treated as binary.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::Error;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Clustering,
    GotVertex,
}

impl Measure {
    /// The four classical measures, in report order.
    pub const CLASSICAL: [Measure; 4] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Clustering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Clustering => "clustering",
            Measure::GotVertex => "got_vertex",
        }
    }

    /// Computes a classical measure. `GotVertex` needs a simulation config and
    /// is rejected here.
    pub fn compute(self, g: &Graph) -> Option<CentralityVector> {
        match self {
            Measure::Degree => Some(degree_centrality(g)),
            Measure::Betweenness => Some(betweenness_centrality(g)),
            Measure::Closeness => Some(closeness_centrality(g)),
            Measure::Clustering => Some(clustering_coefficient(g)),
            Measure::GotVertex => None,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "degree" => Ok(Measure::Degree),
            "betweenness" => Ok(Measure::Betweenness),
            "closeness" => Ok(Measure::Closeness),
            "clustering" => Ok(Measure::Clustering),
            "got_vertex" | "got" => Ok(Measure::GotVertex),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure {other:?}"
            ))),
        }
    }
}

/// Per-vertex scores for one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
}

impl CentralityVector {
    pub fn new(measure: Measure, scores: Vec<f64>) -> Self {
        CentralityVector { measure, scores }
    }

    pub fn name(&self) -> &'static str {
        self.measure.name()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

pub fn degree_centrality(g: &Graph) -> CentralityVector {
    let scores = (0..g.vertex_count()).map(|v| g.degree(v) as f64).collect();
    CentralityVector::new(Measure::Degree, scores)
}

/// Sources per work unit. Fixed so the summation order (and therefore every
/// floating-point bit of the result) does not depend on the thread count.
const SOURCE_BLOCK: usize = 32;

/// Unnormalized shortest-path betweenness over unordered vertex pairs.
///
/// Brandes' dependency accumulation on BFS trees, halved because every
/// unordered pair is reached once from each endpoint.
pub fn betweenness_centrality(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_BLOCK)
        .map(|block| {
            let mut acc = vec![0.0; n];
            let mut ws = BrandesWorkspace::new(n);
            for &s in block {
                ws.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();

    let mut scores = vec![0.0; n];
    for part in &partials {
        for (total, x) in scores.iter_mut().zip(part) {
            *total += x;
        }
    }
    for x in &mut scores {
        *x *= 0.5;
    }
    CentralityVector::new(Measure::Betweenness, scores)
}

struct BrandesWorkspace {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl BrandesWorkspace {
    fn new(n: usize) -> Self {
        BrandesWorkspace {
            dist: vec![UNSEEN; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1;
            for &(w, _) in g.neighbors(v) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = next;
                    self.queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }

        // Predecessors of w are exactly its neighbors one hop closer to s.
        for &w in self.order.iter().rev() {
            let dw = self.dist[w];
            if dw > 0 {
                let coeff = (1.0 + self.delta[w]) / self.sigma[w];
                for &(v, _) in g.neighbors(w) {
                    if self.dist[v] + 1 == dw {
                        self.delta[v] += self.sigma[v] * coeff;
                    }
                }
                acc[w] += self.delta[w];
            }
        }

        for &v in &self.order {
            self.dist[v] = UNSEEN;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();
    }
}

/// Hop-count BFS from `s`; returns (reachable vertices including `s`, distance sum).
fn bfs_reach(g: &Graph, s: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> (usize, u64) {
    let mut touched = Vec::new();
    dist[s] = 0;
    queue.push_back(s);
    let mut total = 0u64;
    while let Some(v) = queue.pop_front() {
        touched.push(v);
        total += u64::from(dist[v]);
        for &(w, _) in g.neighbors(v) {
            if dist[w] == UNSEEN {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let reached = touched.len();
    for v in touched {
        dist[v] = UNSEEN;
    }
    (reached, total)
}

/// Component-scaled closeness: `((r-1)/Σd) · ((r-1)/(n-1))` where `r` counts
/// the vertices reachable from `u` (including `u`). On a connected graph this
/// is `(n-1)/Σd`. Isolated vertices score 0.
pub fn closeness_centrality(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let scores = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![UNSEEN; n], VecDeque::new()),
            |(dist, queue), u| {
                let (reached, total) = bfs_reach(g, u, dist, queue);
                if reached <= 1 || total == 0 {
                    return 0.0;
                }
                let r1 = (reached - 1) as f64;
                (r1 / total as f64) * (r1 / (n - 1) as f64)
            },
        )
        .collect();
    CentralityVector::new(Measure::Closeness, scores)
}

/// Number of edges among the neighbors of every vertex.
fn triangles(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut mark = vec![usize::MAX; n];
    (0..n)
        .map(|u| {
            for &(v, _) in g.neighbors(u) {
                mark[v] = u;
            }
            let mut twice = 0u64;
            for &(v, _) in g.neighbors(u) {
                twice += g
                    .neighbors(v)
                    .iter()
                    .filter(|&&(w, _)| mark[w] == u)
                    .count() as u64;
            }
            twice / 2
        })
        .collect()
}

/// Local clustering `2T(u) / (D(u)(D(u)-1))`; vertices of degree < 2 score 0.
pub fn clustering_coefficient(g: &Graph) -> CentralityVector {
    let scores = triangles(g)
        .into_iter()
        .enumerate()
        .map(|(u, t)| {
            let d = g.degree(u) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1.0))
            }
        })
        .collect();
    CentralityVector::new(Measure::Clustering, scores)
}

/// Global clustering (transitivity): closed triplets over connected triplets.
pub fn transitivity(g: &Graph) -> f64 {
    let closed: u64 = triangles(g).iter().sum();
    let triplets: u64 = (0..g.vertex_count())
        .map(|u| {
            let d = g.degree(u) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    if triplets == 0 {
        0.0
    } else {
        closed as f64 / triplets as f64
    }
}
