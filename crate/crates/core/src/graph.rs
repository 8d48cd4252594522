//! Undirected graph with dense vertex indices and optional positive edge weights.
//!
//! Vertices are `0..vertex_count()`. External identifiers (file tokens, GML ids)
//! live in a parallel label table and never leak into the algorithms.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    /// Per-vertex neighbor lists, sorted by neighbor index.
    adj: Vec<Vec<(usize, f64)>>,
    labels: Vec<String>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated vertices labelled `"0"`..`"n-1"`.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: (0..n).map(|i| i.to_string()).collect(),
            edge_count: 0,
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        Graph {
            adj: vec![Vec::new(); labels.len()],
            labels,
            edge_count: 0,
        }
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.adj.push(Vec::new());
        self.labels.push(label.into());
        self.adj.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                count: self.adj.len(),
            })
        }
    }

    /// Inserts the undirected edge `{u, v}`. Re-adding an existing edge replaces its weight.
    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidWeight(w));
        }
        let inserted = upsert(&mut self.adj[u], v, w);
        upsert(&mut self.adj[v], u, w);
        if inserted {
            self.edge_count += 1;
        }
        Ok(())
    }

    /// Neighbors of `v` with edge weights, in ascending neighbor order.
    pub fn adjacency(&self, v: usize) -> Result<&[(usize, f64)]> {
        self.check_vertex(v)?;
        Ok(&self.adj[v])
    }

    /// Unchecked variant of [`Graph::adjacency`] for hot loops; panics on a bad index.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(n, _)| n)
            .ok()
            .map(|i| list[i].1)
    }

    /// Every edge once as `(u, v, w)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| v > u)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// True when any stored weight differs from 1.0.
    pub fn is_weighted(&self) -> bool {
        self.adj.iter().flatten().any(|&(_, w)| w != 1.0)
    }

    /// Copy of the graph with every weight set to 1.0.
    pub fn binarized(&self) -> Graph {
        let mut g = self.clone();
        for list in &mut g.adj {
            for entry in list.iter_mut() {
                entry.1 = 1.0;
            }
        }
        g
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Partition of the vertices into maximal connected sets.
    ///
    /// Components are ordered by their smallest vertex; vertices within a
    /// component are ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(u, _) in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }
}

/// Returns true when a new entry was inserted, false when a weight was replaced.
fn upsert(list: &mut Vec<(usize, f64)>, v: usize, w: f64) -> bool {
    match list.binary_search_by_key(&v, |&(n, _)| n) {
        Ok(i) => {
            list[i].1 = w;
            false
        }
        Err(i) => {
            list.insert(i, (v, w));
            true
        }
    }
}
