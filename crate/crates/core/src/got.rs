//! Game of Thieves: vertex and edge centrality from a swarm of path-retracing agents.
//!
//! Every vertex starts with `Φ₀` vdiamonds and a number of resident thieves.
//! In each epoch every thief makes exactly one move:
//!
//! * an **empty** thief steps to a neighbor chosen with probability
//!   proportional to edge weight, erases any loop this creates in its path, and
//!   picks up one vdiamond if the vertex it reached has any (its own home excepted);
//! * a **loaded** thief retraces its path one edge towards home, counting the
//!   traversal on that edge, and drops the vdiamond once it arrives.
//!
//! The vertex score is the time-averaged vdiamond count `Φ̄` (low means
//! central); the edge score is the time-averaged count of loaded traversals `Ψ̄`
//! (high means central).

use rand::Rng;

use crate::centrality::{CentralityVector, Measure};
use crate::graph::Graph;
use crate::seed::{rng_from_seed, SimRng};

/// `max(1, ⌊(ln n)³⌋)`.
pub fn default_epochs(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let l = (n as f64).ln();
    ((l * l * l).floor() as usize).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GotConfig {
    pub thieves_per_vertex: usize,
    /// `None` means `|V|` vdiamonds per vertex.
    pub initial_vdiamonds: Option<u64>,
    /// `None` means [`default_epochs`].
    pub epochs: Option<usize>,
    pub seed: u64,
}

impl Default for GotConfig {
    fn default() -> Self {
        GotConfig {
            thieves_per_vertex: 1,
            initial_vdiamonds: None,
            epochs: None,
            seed: 0,
        }
    }
}

impl GotConfig {
    pub fn with_seed(seed: u64) -> Self {
        GotConfig {
            seed,
            ..GotConfig::default()
        }
    }

    pub fn vdiamonds_for(&self, n: usize) -> u64 {
        self.initial_vdiamonds.unwrap_or(n as u64)
    }

    pub fn epochs_for(&self, n: usize) -> usize {
        self.epochs.unwrap_or_else(|| default_epochs(n)).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThiefState {
    Empty,
    Loaded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thief {
    pub home: usize,
    pub state: ThiefState,
    /// Loop-free route from home to the current location; `path[0] == home`.
    pub path: Vec<usize>,
}

impl Thief {
    pub fn new(home: usize) -> Self {
        Thief {
            home,
            state: ThiefState::Empty,
            path: vec![home],
        }
    }

    pub fn location(&self) -> usize {
        *self.path.last().expect("thief path is never empty")
    }

    pub fn is_loaded(&self) -> bool {
        self.state == ThiefState::Loaded
    }

    /// Checks the path invariants: rooted at home, simple, and walkable in `g`.
    pub fn path_is_valid(&self, g: &Graph) -> bool {
        if self.path.first() != Some(&self.home) {
            return false;
        }
        if self.path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        let mut seen = self.path.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// Flattened adjacency with an edge id per entry, so `Ψ` can live in a dense array.
#[derive(Debug, Clone)]
pub struct Topology {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_ids: Vec<usize>,
    /// Per-vertex running weight totals, present only for weighted graphs.
    cumulative: Option<Vec<f64>>,
    endpoints: Vec<(usize, usize)>,
}

impl Topology {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for v in 0..n {
            targets.extend(g.neighbors(v).iter().map(|&(u, _)| u));
            offsets.push(targets.len());
        }

        let mut edge_ids = vec![usize::MAX; targets.len()];
        let mut endpoints = Vec::with_capacity(g.edge_count());
        for v in 0..n {
            for slot in offsets[v]..offsets[v + 1] {
                let u = targets[slot];
                if v < u {
                    edge_ids[slot] = endpoints.len();
                    endpoints.push((v, u));
                } else {
                    let back = &targets[offsets[u]..offsets[u + 1]];
                    let pos = back.binary_search(&v).expect("symmetric adjacency");
                    edge_ids[slot] = edge_ids[offsets[u] + pos];
                }
            }
        }

        let cumulative = g.is_weighted().then(|| {
            let mut cum = Vec::with_capacity(targets.len());
            for v in 0..n {
                let mut total = 0.0;
                for &(_, w) in g.neighbors(v) {
                    total += w;
                    cum.push(total);
                }
            }
            cum
        });

        Topology {
            offsets,
            targets,
            edge_ids,
            cumulative,
            endpoints,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    /// Edge endpoints `(u, v)` with `u < v`, indexed by edge id.
    pub fn endpoints(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Picks an adjacency slot of `v` with probability `Ω_vu / Σ_w Ω_vw`.
    fn sample_slot(&self, v: usize, rng: &mut SimRng) -> usize {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        match &self.cumulative {
            None => rng.random_range(lo..hi),
            Some(cum) => {
                let row = &cum[lo..hi];
                let r = rng.random::<f64>() * row[row.len() - 1];
                lo + row.partition_point(|&c| c <= r).min(row.len() - 1)
            }
        }
    }

    fn edge_between(&self, v: usize, u: usize) -> usize {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        let pos = self.targets[lo..hi]
            .binary_search(&u)
            .unwrap_or_else(|_| panic!("thief path uses non-edge {v}-{u}"));
        self.edge_ids[lo + pos]
    }
}

/// Mutable game state between epochs.
#[derive(Debug, Clone)]
pub struct GotState {
    /// Vdiamonds currently at each vertex.
    pub phi: Vec<u64>,
    /// Loaded traversals per edge id during the current epoch.
    pub psi: Vec<u64>,
    pub thieves: Vec<Thief>,
    /// `Σ_{ep=0..epoch} Φ_ep`.
    pub phi_running_sum: Vec<u64>,
    /// `Σ_{ep=1..epoch} Ψ_ep`.
    pub psi_running_sum: Vec<u64>,
    pub epoch: usize,
    /// `|V| · Φ₀`, the conserved vdiamond total.
    pub vdiamond_total: u64,
    psi_touched: Vec<usize>,
}

impl GotState {
    pub fn new(topo: &Topology, thieves_per_vertex: usize, vdiamonds: u64) -> Self {
        let n = topo.vertex_count();
        let m = topo.edge_count();
        let thieves = (0..n)
            .flat_map(|v| std::iter::repeat_n(v, thieves_per_vertex))
            .map(Thief::new)
            .collect();
        GotState {
            phi: vec![vdiamonds; n],
            psi: vec![0; m],
            thieves,
            phi_running_sum: vec![vdiamonds; n],
            psi_running_sum: vec![0; m],
            epoch: 0,
            vdiamond_total: vdiamonds * n as u64,
            psi_touched: Vec::new(),
        }
    }

    pub fn loaded_thieves(&self) -> usize {
        self.thieves.iter().filter(|t| t.is_loaded()).count()
    }

    /// `Σ_v Φ[v] + #loaded == |V| · Φ₀`.
    pub fn conservation_holds(&self) -> bool {
        let resting: u64 = self.phi.iter().sum();
        resting + self.loaded_thieves() as u64 == self.vdiamond_total
    }

    fn record_traversal(&mut self, edge: usize) {
        if self.psi[edge] == 0 {
            self.psi_touched.push(edge);
        }
        self.psi[edge] += 1;
        self.psi_running_sum[edge] += 1;
    }

    fn clear_epoch_psi(&mut self) {
        for e in self.psi_touched.drain(..) {
            self.psi[e] = 0;
        }
    }
}

/// One move of an empty thief: wander, erase loops, maybe pick up a vdiamond.
///
/// A thief at a vertex without neighbors stays put. Vdiamonds are never taken
/// from the thief's own home.
pub fn step_empty_thief(
    thief: &mut Thief,
    state: &mut GotState,
    topo: &Topology,
    rng: &mut SimRng,
) {
    debug_assert_eq!(thief.state, ThiefState::Empty);
    let v = thief.location();
    if topo.degree(v) == 0 {
        return;
    }
    let u = topo.targets[topo.sample_slot(v, rng)];
    match thief.path.iter().position(|&x| x == u) {
        Some(pos) => thief.path.truncate(pos + 1),
        None => thief.path.push(u),
    }
    if u != thief.home && state.phi[u] > 0 {
        state.phi[u] -= 1;
        thief.state = ThiefState::Loaded;
    }
}

/// One move of a loaded thief: one edge back along its path, unloading at home.
///
/// # Panics
///
/// If the thief is loaded but already at home (a path of length one).
pub fn step_loaded_thief(thief: &mut Thief, state: &mut GotState, topo: &Topology) {
    debug_assert_eq!(thief.state, ThiefState::Loaded);
    assert!(
        thief.path.len() >= 2,
        "loaded thief with home {} has no route to retrace",
        thief.home
    );
    let v = thief.path.pop().expect("checked length");
    let u = thief.location();
    state.record_traversal(topo.edge_between(v, u));
    if u == thief.home {
        state.phi[u] += 1;
        thief.state = ThiefState::Empty;
    }
}

/// A running game bound to one graph.
pub struct Simulation {
    topo: Topology,
    state: GotState,
    rng: SimRng,
    epochs: usize,
}

impl Simulation {
    pub fn new(g: &Graph, cfg: &GotConfig) -> Self {
        let n = g.vertex_count();
        let topo = Topology::new(g);
        let state = GotState::new(&topo, cfg.thieves_per_vertex, cfg.vdiamonds_for(n));
        Simulation {
            topo,
            state,
            rng: rng_from_seed(cfg.seed),
            epochs: cfg.epochs_for(n),
        }
    }

    pub fn state(&self) -> &GotState {
        &self.state
    }

    pub fn topology(&self) -> &Topology {
        &self.topo
    }

    /// Epoch count `T` the simulation will run to.
    pub fn epochs(&self) -> usize {
        self.epochs
    }

    pub fn is_finished(&self) -> bool {
        self.state.epoch >= self.epochs
    }

    /// Moves every thief once, in ascending thief order, and folds the epoch
    /// into the running sums.
    pub fn step_epoch(&mut self) {
        self.state.clear_epoch_psi();
        let mut thieves = std::mem::take(&mut self.state.thieves);
        for thief in &mut thieves {
            match thief.state {
                ThiefState::Empty => {
                    step_empty_thief(thief, &mut self.state, &self.topo, &mut self.rng)
                }
                ThiefState::Loaded => step_loaded_thief(thief, &mut self.state, &self.topo),
            }
        }
        self.state.thieves = thieves;
        self.state.epoch += 1;
        for (sum, &phi) in self.state.phi_running_sum.iter_mut().zip(&self.state.phi) {
            *sum += phi;
        }
        debug_assert!(
            self.state.conservation_holds(),
            "vdiamond conservation violated at epoch {}",
            self.state.epoch
        );
    }

    pub fn run(mut self) -> GotOutput {
        while !self.is_finished() {
            self.step_epoch();
        }
        self.finish()
    }

    /// Scores for the epochs run so far, averaged over the configured `T`.
    pub fn finish(self) -> GotOutput {
        let t = self.epochs as f64;
        let vertex = self
            .state
            .phi_running_sum
            .iter()
            .map(|&s| s as f64 / t)
            .collect();
        let edges = self
            .topo
            .endpoints
            .iter()
            .zip(&self.state.psi_running_sum)
            .map(|(&(u, v), &s)| (u, v, s as f64 / t))
            .collect();
        GotOutput {
            vertex: CentralityVector::new(Measure::GotVertex, vertex),
            edges,
            epochs: self.epochs,
            thief_steps: (self.state.epoch * self.state.thieves.len()) as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GotOutput {
    /// `Φ̄` per vertex; lower is more central.
    pub vertex: CentralityVector,
    /// `(u, v, Ψ̄)` per edge with `u < v`, in edge order; higher is more central.
    pub edges: Vec<(usize, usize, f64)>,
    pub epochs: usize,
    /// Thief moves executed (epochs × thieves), including idle ones.
    pub thief_steps: u64,
}

pub fn run_got(g: &Graph, cfg: &GotConfig) -> GotOutput {
    Simulation::new(g, cfg).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, 1.0).unwrap();
        }
        g
    }

    #[test]
    fn default_epoch_counts() {
        assert_eq!(default_epochs(10), 12);
        assert_eq!(default_epochs(62), 70);
        assert_eq!(default_epochs(1000), 329);
        assert_eq!(default_epochs(15000), 889);
        assert_eq!(default_epochs(1), 1);
        assert_eq!(default_epochs(2), 1);
    }

    #[test]
    fn empty_thief_picks_up_on_forced_move() {
        let g = graph(2, &[(0, 1)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 2);
        let mut thief = Thief::new(0);
        let mut rng = rng_from_seed(0);
        step_empty_thief(&mut thief, &mut state, &topo, &mut rng);
        assert_eq!(thief.location(), 1);
        assert!(thief.is_loaded());
        assert_eq!(state.phi, vec![2, 1]);
        assert_eq!(thief.path, vec![0, 1]);
    }

    #[test]
    fn empty_thief_on_depleted_vertex_stays_empty() {
        let g = graph(2, &[(0, 1)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 0);
        let mut thief = Thief::new(0);
        step_empty_thief(&mut thief, &mut state, &topo, &mut rng_from_seed(0));
        assert_eq!(thief.state, ThiefState::Empty);
        assert_eq!(state.phi, vec![0, 0]);
        assert_eq!(thief.path, vec![0, 1]);
        // Walking back home erases the loop and never steals from home.
        state.phi[0] = 5;
        step_empty_thief(&mut thief, &mut state, &topo, &mut rng_from_seed(0));
        assert_eq!(thief.path, vec![0]);
        assert_eq!(thief.state, ThiefState::Empty);
        assert_eq!(state.phi[0], 5);
    }

    #[test]
    fn isolated_thief_does_nothing() {
        let g = Graph::new(1);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 3);
        let mut thief = Thief::new(0);
        step_empty_thief(&mut thief, &mut state, &topo, &mut rng_from_seed(1));
        assert_eq!(thief, Thief::new(0));
        assert_eq!(state.phi, vec![3]);
    }

    #[test]
    fn loop_erasure_truncates_after_revisited_vertex() {
        // Triangle 0-1-2 with tail 2-3; thief at 3 via 0,1,2.
        let g = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 0);
        let mut thief = Thief::new(0);
        thief.path = vec![0, 1, 2, 3];
        step_empty_thief(&mut thief, &mut state, &topo, &mut rng_from_seed(5));
        assert_eq!(thief.path, vec![0, 1, 2]);
        assert!(thief.path_is_valid(&g));
    }

    #[test]
    fn loaded_thief_unloads_at_home() {
        let g = graph(2, &[(0, 1)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 2);
        state.phi[1] = 1;
        let mut thief = Thief {
            home: 0,
            state: ThiefState::Loaded,
            path: vec![0, 1],
        };
        step_loaded_thief(&mut thief, &mut state, &topo);
        assert_eq!(thief.path, vec![0]);
        assert_eq!(thief.state, ThiefState::Empty);
        assert_eq!(state.phi, vec![3, 1]);
        assert_eq!(state.psi, vec![1]);
        assert_eq!(state.psi_running_sum, vec![1]);
    }

    #[test]
    fn loaded_thief_walks_home_without_unloading() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 1);
        let mut thief = Thief {
            home: 0,
            state: ThiefState::Loaded,
            path: vec![0, 1, 2],
        };
        step_loaded_thief(&mut thief, &mut state, &topo);
        assert_eq!(thief.path, vec![0, 1]);
        assert!(thief.is_loaded());
        assert_eq!(state.phi, vec![1, 1, 1]);
        assert_eq!(state.psi, vec![0, 1]);
    }

    #[test]
    #[should_panic(expected = "no route to retrace")]
    fn loaded_thief_at_home_is_a_logic_error() {
        let g = graph(2, &[(0, 1)]);
        let topo = Topology::new(&g);
        let mut state = GotState::new(&topo, 1, 1);
        let mut thief = Thief {
            home: 0,
            state: ThiefState::Loaded,
            path: vec![0],
        };
        step_loaded_thief(&mut thief, &mut state, &topo);
    }

    #[test]
    fn two_vertex_game_returns_home_after_two_epochs() {
        let g = graph(2, &[(0, 1)]);
        let cfg = GotConfig {
            initial_vdiamonds: Some(2),
            epochs: Some(2),
            ..GotConfig::default()
        };
        let mut sim = Simulation::new(&g, &cfg);
        sim.step_epoch();
        // Each thief crossed over and took one vdiamond from the other vertex.
        assert_eq!(sim.state().phi, vec![1, 1]);
        assert_eq!(sim.state().loaded_thieves(), 2);
        sim.step_epoch();
        let state = sim.state();
        assert_eq!(state.phi, vec![2, 2]);
        assert!(state
            .thieves
            .iter()
            .all(|t| t.path == vec![t.home] && !t.is_loaded()));
        assert_eq!(state.psi, vec![2]);
        // Φ̄ = (2 + 1 + 2) / 2, Ψ̄ = (0 + 2) / 2.
        let out = sim.finish();
        assert_eq!(out.vertex.scores, vec![2.5, 2.5]);
        assert_eq!(out.edges, vec![(0, 1, 1.0)]);
        assert_eq!(out.thief_steps, 4);
    }

    #[test]
    fn single_vertex_keeps_its_vdiamonds() {
        let g = Graph::new(1);
        let cfg = GotConfig {
            initial_vdiamonds: Some(4),
            epochs: Some(3),
            ..GotConfig::default()
        };
        let out = run_got(&g, &cfg);
        assert_eq!(out.vertex.scores, vec![4.0 * 4.0 / 3.0]);
        assert!(out.edges.is_empty());
    }

    fn sample_counts(g: &Graph, v: usize, draws: usize) -> Vec<usize> {
        let topo = Topology::new(g);
        let mut rng = rng_from_seed(42);
        let mut counts = vec![0usize; g.vertex_count()];
        for _ in 0..draws {
            counts[topo.targets[topo.sample_slot(v, &mut rng)]] += 1;
        }
        counts
    }

    #[test]
    fn uniform_neighbor_choice_passes_chi_square() {
        let g = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let counts = sample_counts(&g, 0, 100_000);
        let expected = 100_000.0 / 3.0;
        let chi2: f64 = counts[1..]
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // Upper 1% point of chi-square with 2 degrees of freedom.
        assert!(chi2 < 9.2103, "chi2 = {chi2}, counts {counts:?}");
    }

    #[test]
    fn weighted_neighbor_choice_follows_weights() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(0, 2, 3.0).unwrap();
        let counts = sample_counts(&g, 0, 100_000);
        let share = counts[2] as f64 / 100_000.0;
        assert!((share - 0.75).abs() < 0.01, "share {share}");
    }

    #[test]
    fn edge_ids_are_shared_by_both_directions() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let topo = Topology::new(&g);
        assert_eq!(topo.endpoints(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        for (id, &(u, v)) in topo.endpoints().iter().enumerate() {
            assert_eq!(topo.edge_between(u, v), id);
            assert_eq!(topo.edge_between(v, u), id);
        }
    }
}
