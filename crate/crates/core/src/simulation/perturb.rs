use std::collections::HashSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Adds (`fraction > 0`) or removes (`fraction < 0`) `round(|fraction| * |E|)`
/// uniform edges. Added edges are new, distinct and not self-loops.
pub fn perturb_graph(g: &Graph, fraction: f64, seed: u64) -> Result<Graph> {
    if !(-1.0..=1.0).contains(&fraction) || fraction.is_nan() {
        return Err(Error::InvalidArgument(format!("fraction must lie in [-1, 1], got {fraction}")));
    }
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    let k = (fraction.abs() * edges.len() as f64).round() as usize;
    let n = g.node_count();
    let mut rng = rng_from_seed(seed);
    if fraction < 0.0 {
        if k >= edges.len() {
            return Err(Error::InvalidArgument("removal would leave no edges".into()));
        }
        let mut drop = vec![false; edges.len()];
        for i in sample(&mut rng, edges.len(), k) {
            drop[i] = true;
        }
        let kept = edges.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&e, _)| e);
        return Graph::from_edges(n, kept);
    }
    let possible = n as u128 * (n as u128).saturating_sub(1) / 2;
    if (edges.len() + k) as u128 > possible {
        return Err(Error::Infeasible(format!("cannot add {k} edges: the graph would exceed {possible}")));
    }
    let key = |u: NodeId, v: NodeId| ((u.min(v) as u64) << 32) | u.max(v) as u64;
    let mut seen: HashSet<u64> = edges.iter().map(|&(u, v)| key(u, v)).collect();
    let mut out = edges;
    let target = out.len() + k;
    while out.len() < target {
        let u = rng.random_range(0..n as NodeId);
        let v = rng.random_range(0..n as NodeId);
        if u != v && seen.insert(key(u, v)) {
            out.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, out)
}
