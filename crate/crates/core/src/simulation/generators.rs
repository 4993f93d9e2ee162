//! Random graph generators.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::rng::rng_from_seed;
use crate::{Error, Result};

fn linked(adj: &[Vec<NodeId>], u: NodeId, v: NodeId) -> bool {
    adj[u as usize].contains(&v)
}

fn link(adj: &mut [Vec<NodeId>], u: NodeId, v: NodeId) {
    adj[u as usize].push(v);
    adj[v as usize].push(u);
}

fn unlink(adj: &mut [Vec<NodeId>], u: NodeId, v: NodeId) {
    let pos = adj[u as usize].iter().position(|&x| x == v).unwrap();
    adj[u as usize].swap_remove(pos);
    let pos = adj[v as usize].iter().position(|&x| x == u).unwrap();
    adj[v as usize].swap_remove(pos);
}

fn from_adjacency(n: usize, adj: &[Vec<NodeId>]) -> Result<Graph> {
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nb)| nb.iter().filter(move |&&v| (u as NodeId) < v).map(move |&v| (u as NodeId, v)));
    Graph::from_edges(n, edges)
}

/// Watts–Strogatz small world: a ring where each node links to its `k / 2`
/// nearest neighbours on either side, each edge rewired with probability
/// `beta` to a uniform endpoint.
pub fn watts_strogatz(n: usize, k: usize, beta: f64, seed: u64) -> Result<Graph> {
    if !k.is_multiple_of(2) || k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("need even 0 < k < n, got k = {k}, n = {n}")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta must lie in [0, 1], got {beta}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut adj: Vec<Vec<NodeId>> = vec![Vec::with_capacity(k + 2); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            link(&mut adj, u as NodeId, ((u + j) % n) as NodeId);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = ((u + j) % n) as NodeId;
            let u = u as NodeId;
            if !rng.random_bool(beta) || !linked(&adj, u, v) || adj[u as usize].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n as NodeId);
                if w != u && !linked(&adj, u, w) {
                    break w;
                }
            };
            unlink(&mut adj, u, v);
            link(&mut adj, u, w);
        }
    }
    from_adjacency(n, &adj)
}

/// Barabási–Albert preferential attachment: each new node attaches to `m`
/// distinct existing nodes chosen proportionally to degree, starting from a
/// clique on `m + 1` nodes.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("need 0 < m < n, got m = {m}, n = {n}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(n * m);
    let mut ends: Vec<NodeId> = Vec::with_capacity(2 * n * m);
    for u in 0..=m as NodeId {
        for v in u + 1..=m as NodeId {
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for u in (m + 1) as NodeId..n as NodeId {
        chosen.clear();
        while chosen.len() < m {
            let v = ends[rng.random_range(0..ends.len())];
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        for &v in &chosen {
            edges.push((v, u));
            ends.push(u);
            ends.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Erdős–Rényi `G(n, m)`: `m` distinct uniform edges.
pub fn erdos_renyi(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let possible = n as u128 * (n as u128).saturating_sub(1) / 2;
    if m as u128 > possible {
        return Err(Error::InvalidArgument(format!("{m} edges exceed the {possible} possible on {n} nodes")));
    }
    let mut rng = rng_from_seed(seed);
    if (m as u128) * 2 > possible {
        // dense: pick edge ranks directly
        let ranks = sample(&mut rng, possible as usize, m);
        let mut edges = Vec::with_capacity(m);
        for r in ranks {
            edges.push(unrank_pair(r as u64, n as u64));
        }
        return Graph::from_edges(n, edges);
    }
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n as NodeId);
        let v = rng.random_range(0..n as NodeId);
        if u == v {
            continue;
        }
        let (u, v) = (u.min(v), u.max(v));
        if seen.insert(((u as u64) << 32) | v as u64) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// Maps a rank in `0..n(n-1)/2` to the pair `(u, v)`, `u < v`, in
/// row-major order.
fn unrank_pair(mut r: u64, n: u64) -> (NodeId, NodeId) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if r < row {
            return (u as NodeId, (u + 1 + r) as NodeId);
        }
        r -= row;
        u += 1;
    }
}
