//! Seeded random graph models: Erdős–Rényi `G(v, p)`, Newman–Watts–Strogatz,
//! and Holme–Kim (preferential attachment with triad formation).

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::{rng_from_seed, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Er,
    Nws,
    BaTf,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Er => "er",
            Model::Nws => "nws",
            Model::BaTf => "ba_tf",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "er" => Ok(Model::Er),
            "nws" => Ok(Model::Nws),
            "ba_tf" => Ok(Model::BaTf),
            other => Err(Error::InvalidParameter(format!("unknown model {other:?}"))),
        }
    }
}

/// Parameters for one generated network.
///
/// `p` is the edge probability (ER), shortcut probability (NWS), or triad
/// formation probability (BA-TF). `k` is only read by NWS, `e` only by BA-TF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub v: usize,
    pub p: f64,
    pub k: usize,
    pub e: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn er(v: usize, p: f64, seed: u64) -> Self {
        GenSpec {
            model: Model::Er,
            v,
            p,
            k: 0,
            e: 0,
            seed,
        }
    }

    pub fn nws(v: usize, k: usize, p: f64, seed: u64) -> Self {
        GenSpec {
            model: Model::Nws,
            v,
            p,
            k,
            e: 0,
            seed,
        }
    }

    pub fn ba_tf(v: usize, e: usize, p: f64, seed: u64) -> Self {
        GenSpec {
            model: Model::BaTf,
            v,
            p,
            k: 0,
            e,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParameter(format!(
                "p must be in [0, 1], got {}",
                self.p
            )));
        }
        match self.model {
            Model::Er if self.v < 1 => Err(Error::InvalidParameter("ER needs v >= 1".into())),
            Model::Nws if self.k < 2 || self.v <= self.k => Err(Error::InvalidParameter(format!(
                "NWS needs v > k >= 2, got v={} k={}",
                self.v, self.k
            ))),
            Model::BaTf if self.e < 1 || self.v <= self.e => Err(Error::InvalidParameter(format!(
                "BA-TF needs v > e >= 1, got v={} e={}",
                self.v, self.e
            ))),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let mut rng = rng_from_seed(self.seed);
        Ok(match self.model {
            Model::Er => er(self.v, self.p, &mut rng),
            Model::Nws => nws(self.v, self.k, self.p, &mut rng),
            Model::BaTf => ba_tf(self.v, self.e, self.p, &mut rng),
        })
    }
}

/// Each of the `v(v-1)/2` pairs is an edge independently with probability `p`.
pub fn gen_er(v: usize, p: f64, seed: u64) -> Result<Graph> {
    GenSpec::er(v, p, seed).generate()
}

/// Ring lattice with `k` nearest neighbors (`k - 1` if `k` is odd), plus one
/// shortcut attempt with probability `p` per ring edge. Ring edges are never removed.
pub fn gen_nws(v: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    GenSpec::nws(v, k, p, seed).generate()
}

/// Holme–Kim growth from `e` isolated seed vertices; every new vertex adds `e` edges.
pub fn gen_ba_tf(v: usize, e: usize, p: f64, seed: u64) -> Result<Graph> {
    GenSpec::ba_tf(v, e, p, seed).generate()
}

fn er(v: usize, p: f64, rng: &mut SimRng) -> Graph {
    let mut g = Graph::new(v);
    if p <= 0.0 {
        return g;
    }
    for u in 0..v {
        for w in u + 1..v {
            if p >= 1.0 || rng.random::<f64>() < p {
                g.add_edge(u, w, 1.0).expect("valid pair");
            }
        }
    }
    g
}

fn nws(v: usize, k: usize, p: f64, rng: &mut SimRng) -> Graph {
    let mut g = Graph::new(v);
    let half = k / 2;
    let mut ring = Vec::with_capacity(v * half);
    for u in 0..v {
        for j in 1..=half {
            let w = (u + j) % v;
            g.add_edge(u, w, 1.0).expect("ring pair");
            ring.push(u);
        }
    }
    // One shortcut draw per ring edge; colliding endpoints drop the shortcut.
    for u in ring {
        if rng.random::<f64>() < p {
            let w = rng.random_range(0..v);
            if w != u && !g.has_edge(u, w) {
                g.add_edge(u, w, 1.0).expect("fresh pair");
            }
        }
    }
    g
}

fn ba_tf(v: usize, e: usize, p: f64, rng: &mut SimRng) -> Graph {
    let mut g = Graph::new(v);
    // Every edge endpoint once; uniform sampling from it is degree-proportional.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * e * (v - e));

    for u in e..v {
        // Until the first new vertex has attached, all degrees are zero.
        let uniform = endpoints.is_empty();
        let mut anchor = attach_pa(&mut g, u, uniform, &endpoints, rng);
        endpoints.push(anchor);

        for _ in 1..e {
            if rng.random::<f64>() < p {
                let open: Vec<usize> = g
                    .neighbors(anchor)
                    .iter()
                    .map(|&(w, _)| w)
                    .filter(|&w| w != u && !g.has_edge(u, w))
                    .collect();
                if !open.is_empty() {
                    let w = open[rng.random_range(0..open.len())];
                    g.add_edge(u, w, 1.0).expect("fresh triad edge");
                    endpoints.push(w);
                    continue;
                }
            }
            anchor = attach_pa(&mut g, u, uniform, &endpoints, rng);
            endpoints.push(anchor);
        }
        endpoints.extend(std::iter::repeat_n(u, e));
    }
    g
}

/// Adds one preferential-attachment edge from `u`, resampling until the
/// target is not already a neighbor. Returns the target.
fn attach_pa(
    g: &mut Graph,
    u: usize,
    uniform: bool,
    endpoints: &[usize],
    rng: &mut SimRng,
) -> usize {
    loop {
        let w = if uniform {
            rng.random_range(0..u)
        } else {
            endpoints[rng.random_range(0..endpoints.len())]
        };
        if w != u && !g.has_edge(u, w) {
            g.add_edge(u, w, 1.0).expect("fresh PA edge");
            return w;
        }
    }
}
