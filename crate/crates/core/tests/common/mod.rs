#![allow(dead_code)]

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tesc::graph::{Graph, NodeId};

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as NodeId).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n as NodeId).map(|v| (v, (v + 1) % n as NodeId))).unwrap()
}

/// Plain adjacency lists rebuilt from the edge iterator.
pub fn adjacency(g: &Graph) -> Vec<Vec<NodeId>> {
    let mut adj = vec![Vec::new(); g.node_count()];
    for (u, v) in g.edges() {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    adj
}

/// Hop distances from `s`; `usize::MAX` when unreachable.
pub fn distances(adj: &[Vec<NodeId>], s: NodeId) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u as usize] {
            if d[v as usize] == usize::MAX {
                d[v as usize] = d[u as usize] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// All-pairs hop distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Nodes within `h` of any source, by brute force.
pub fn ball_oracle(adj: &[Vec<NodeId>], sources: &[NodeId], h: usize) -> Vec<NodeId> {
    let mut inside = vec![false; adj.len()];
    for &s in sources {
        for (v, &d) in distances(adj, s).iter().enumerate() {
            if d <= h {
                inside[v] = true;
            }
        }
    }
    (0..adj.len() as NodeId).filter(|&v| inside[v as usize]).collect()
}

/// Pearson chi-square homogeneity statistic for two count vectors over the
/// same categories, with its degrees of freedom.
pub fn chi_square_two_sample(x: &[u64], y: &[u64]) -> (f64, usize) {
    let nx: u64 = x.iter().sum();
    let ny: u64 = y.iter().sum();
    let mut stat = 0.0;
    let mut cats = 0usize;
    for (&a, &b) in x.iter().zip(y) {
        let tot = (a + b) as f64;
        if tot == 0.0 {
            continue;
        }
        cats += 1;
        let ea = tot * nx as f64 / (nx + ny) as f64;
        let eb = tot * ny as f64 / (nx + ny) as f64;
        stat += (a as f64 - ea).powi(2) / ea + (b as f64 - eb).powi(2) / eb;
    }
    (stat, cats.saturating_sub(1))
}

/// Goodness-of-fit chi-square of `counts` against probabilities `p`.
pub fn chi_square_fit(counts: &[u64], p: &[f64]) -> (f64, usize) {
    let total: u64 = counts.iter().sum();
    let mut stat = 0.0;
    for (&c, &q) in counts.iter().zip(p) {
        let e = q * total as f64;
        stat += (c as f64 - e).powi(2) / e;
    }
    (stat, counts.len() - 1)
}

pub fn chi_square_p(stat: f64, df: usize) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(df as f64).unwrap().sf(stat)
}
