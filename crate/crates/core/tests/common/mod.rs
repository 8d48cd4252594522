#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use thieves::seed::SimRng;
use thieves::Graph;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v, 1.0).unwrap();
    }
    g
}

pub fn random_graph(rng: &mut SimRng, max_n: usize) -> Graph {
    let n = rng.random_range(1..=max_n);
    let p: f64 = rng.random();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v, 1.0).unwrap();
            }
        }
    }
    g
}

/// Hop distances by Floyd-Warshall; `usize::MAX` for unreachable pairs.
pub fn all_pairs_hops(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut d = vec![vec![usize::MAX; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &(v, _) in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != usize::MAX && d[k][j] != usize::MAX && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Lists every shortest path between every unordered pair explicitly and
/// counts interior visits, weighted by the pair's path count.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let d = all_pairs_hops(g);
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == usize::MAX {
                continue;
            }
            let mut paths = Vec::new();
            let mut current = vec![s];
            enumerate_paths(g, t, d[s][t], &mut current, &mut paths);
            let total = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    score[v] += 1.0 / total;
                }
            }
        }
    }
    score
}

fn enumerate_paths(
    g: &Graph,
    t: usize,
    len: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let u = *current.last().unwrap();
    if current.len() - 1 == len {
        if u == t {
            out.push(current.clone());
        }
        return;
    }
    for &(v, _) in g.neighbors(u) {
        if !current.contains(&v) {
            current.push(v);
            enumerate_paths(g, t, len, current, out);
            current.pop();
        }
    }
}

/// Kendall tau by enumerating every pair.
pub fn brute_kendall(x: &[f64], y: &[f64], tau_b: bool) -> Option<f64> {
    let n = x.len();
    let (mut score, mut tied_x, mut tied_y, mut pairs) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            pairs += 1;
            let a = (x[i] - x[j]).partial_cmp(&0.0).unwrap() as i64;
            let b = (y[i] - y[j]).partial_cmp(&0.0).unwrap() as i64;
            if x[i] == x[j] {
                tied_x += 1;
            }
            if y[i] == y[j] {
                tied_y += 1;
            }
            score += a * b;
        }
    }
    if pairs == 0 || tied_x == pairs || tied_y == pairs {
        return None;
    }
    let denom = if tau_b {
        (((pairs - tied_x) as f64) * ((pairs - tied_y) as f64)).sqrt()
    } else {
        pairs as f64
    };
    Some(score as f64 / denom)
}
