//! Reference-node samplers.
//!
//! All samplers draw from `V_a∪b^h`, the nodes within `h` hops of at least
//! one event node, so no out-of-sight node is ever returned. Each sampler
//! is single threaded and fully determined by its seed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{BfsScratch, Graph, NodeId, NodeSet, VicinityIndex};
use crate::rng::{rng_from_seed, TescRng};
use crate::stats::Probability;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerKind {
    BatchBfs,
    Importance,
    WholeGraph,
}

impl SamplerKind {
    pub fn name(&self) -> &'static str {
        match self {
            SamplerKind::BatchBfs => "batch-bfs",
            SamplerKind::Importance => "importance",
            SamplerKind::WholeGraph => "whole-graph",
        }
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "batch-bfs" | "bfs" => Ok(SamplerKind::BatchBfs),
            "importance" => Ok(SamplerKind::Importance),
            "whole-graph" => Ok(SamplerKind::WholeGraph),
            other => Err(Error::InvalidArgument(format!("unknown sampler {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    Uniform,
    Importance,
}

/// Size of the full reference set, exact or estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceSize {
    pub value: f64,
    pub estimated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceSample {
    pub nodes: Vec<NodeId>,
    /// Multiplicities; all one in uniform mode.
    pub weights: Vec<u32>,
    /// Importance mode only; attached when densities are evaluated.
    pub probabilities: Option<Vec<Probability>>,
    pub mode: SampleMode,
    pub sampler: SamplerKind,
    pub seed: u64,
    pub h: u32,
    /// Total draws (`Σ weights`).
    pub n_prime: u64,
    pub n_sum: Option<u64>,
    /// The sample is the whole reference set.
    pub exhaustive: bool,
    pub reference_size: Option<ReferenceSize>,
    /// Whole-graph mode: examined nodes that were out of sight.
    pub discards: u64,
    /// h-hop searches performed while sampling.
    pub searches: u64,
    pub batch_k: u32,
}

impl ReferenceSample {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Attaches `p(r) = hits / N_sum` for every node, `hits[i]` being the
    /// number of event nodes in node `i`'s vicinity.
    pub fn attach_probabilities(&mut self, hits: &[u32]) -> Result<()> {
        let total = self.n_sum.ok_or_else(|| Error::InvalidArgument("sample has no N_sum".into()))?;
        if hits.len() != self.nodes.len() {
            return Err(Error::LengthMismatch { left: self.nodes.len(), right: hits.len() });
        }
        self.probabilities = Some(hits.iter().map(|&h| Probability { hits: h, total }).collect());
        Ok(())
    }
}

/// The full reference set `V_a∪b^h`, in BFS order.
pub fn reference_set(g: &Graph, union: &NodeSet, h: u32, scratch: &mut BfsScratch) -> Vec<NodeId> {
    scratch.multi_ball(g, union.nodes(), h).nodes().to_vec()
}

fn uniform_sample(sampler: SamplerKind, h: u32, seed: u64, nodes: Vec<NodeId>) -> ReferenceSample {
    let n = nodes.len();
    ReferenceSample {
        weights: vec![1; n],
        nodes,
        probabilities: None,
        mode: SampleMode::Uniform,
        sampler,
        seed,
        h,
        n_prime: n as u64,
        n_sum: None,
        exhaustive: false,
        reference_size: None,
        discards: 0,
        searches: 0,
        batch_k: 1,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sample size must be at least 2, got {n}")));
    }
    Ok(())
}

/// Enumerates `V_a∪b^h` with one multi-source BFS and draws `min(n, N)`
/// nodes without replacement. With `N <= n` the whole set is returned and
/// flagged exhaustive.
pub fn sample_batch_bfs(
    g: &Graph,
    union: &NodeSet,
    h: u32,
    n: usize,
    seed: u64,
    scratch: &mut BfsScratch,
) -> Result<ReferenceSample> {
    check_n(n)?;
    if union.is_empty() {
        return Err(Error::Empty("event union"));
    }
    let mut all = reference_set(g, union, h, scratch);
    let total = all.len();
    if total < 2 {
        return Err(Error::TooFewReferences(total));
    }
    let mut rng = rng_from_seed(seed);
    let exhaustive = total <= n;
    if !exhaustive {
        for i in 0..n {
            let j = rng.random_range(i..total);
            all.swap(i, j);
        }
        all.truncate(n);
    }
    let mut s = uniform_sample(SamplerKind::BatchBfs, h, seed, all);
    s.exhaustive = exhaustive;
    s.reference_size = Some(ReferenceSize { value: total as f64, estimated: false });
    s.searches = 1;
    Ok(s)
}

/// Picks event nodes with probability `|V_v^h| / N_sum` by binary search
/// over prefix sums of index entries.
#[derive(Debug, Clone)]
pub struct VicinityPrefix {
    nodes: Vec<NodeId>,
    cumulative: Vec<u64>,
}

impl VicinityPrefix {
    pub fn new(index: &VicinityIndex, h: u32, union: &NodeSet) -> Result<Self> {
        if union.is_empty() {
            return Err(Error::Empty("event union"));
        }
        let level = index.level(h)?;
        let mut acc = 0u64;
        let cumulative = union
            .nodes()
            .iter()
            .map(|&v| {
                acc += level[v as usize] as u64;
                acc
            })
            .collect();
        Ok(VicinityPrefix { nodes: union.nodes().to_vec(), cumulative })
    }

    /// `N_sum = Σ_{v ∈ V_a∪b} |V_v^h|`.
    pub fn n_sum(&self) -> u64 {
        *self.cumulative.last().unwrap()
    }

    pub fn draw(&self, rng: &mut TescRng) -> NodeId {
        let x = rng.random_range(0..self.n_sum());
        self.nodes[self.cumulative.partition_point(|&c| c <= x)]
    }
}

/// One rejection-sampling trial: pick an event node `v` proportional to
/// `|V_v^h|`, a uniform `u ∈ V_v^h`, and accept `u` with probability `1/c`
/// where `c = |V_u^h ∩ V_a∪b|`. Accepted nodes are uniform over the
/// reference set; a trial succeeds with probability `N / N_sum`.
pub fn reject_samp(
    g: &Graph,
    union: &NodeSet,
    prefix: &VicinityPrefix,
    h: u32,
    rng: &mut TescRng,
    scratch: &mut BfsScratch,
) -> Option<NodeId> {
    let v = prefix.draw(rng);
    let ball = scratch.ball(g, v, h);
    let u = ball.nodes()[rng.random_range(0..ball.len())];
    let c = scratch.ball(g, u, h).nodes().iter().filter(|&&x| union.contains(x)).count();
    debug_assert!(c >= 1);
    (rng.random_range(0..c) == 0).then_some(u)
}

/// Consecutive draws without a new node before the sampler checks whether
/// the reference set is exhausted.
fn stall_limit(target: usize) -> u64 {
    256 + 8 * target as u64
}

/// Importance sampling without rejection.
///
/// Each iteration picks an event node `v` proportional to `|V_v^h|`, runs
/// one `h`-hop BFS and draws `batch_k` distinct nodes uniformly from
/// `V_v^h`. Repeated draws increase a node's weight. Stops once `n`
/// distinct nodes are collected, or once the whole reference set has been
/// seen when it has fewer than `n` nodes.
#[allow(clippy::too_many_arguments)]
pub fn sample_importance(
    g: &Graph,
    union: &NodeSet,
    index: &VicinityIndex,
    h: u32,
    n: usize,
    batch_k: u32,
    seed: u64,
    scratch: &mut BfsScratch,
) -> Result<ReferenceSample> {
    check_n(n)?;
    if batch_k < 1 {
        return Err(Error::InvalidArgument("batch_k must be at least 1".into()));
    }
    index.check_graph(g)?;
    let prefix = VicinityPrefix::new(index, h, union)?;
    let mut rng = rng_from_seed(seed);

    let mut position: HashMap<NodeId, usize> = HashMap::with_capacity(n);
    let mut nodes = Vec::with_capacity(n);
    let mut weights: Vec<u32> = Vec::with_capacity(n);
    let mut n_prime = 0u64;
    let mut searches = 0u64;
    let mut stall = 0u64;
    let mut known_total: Option<usize> = None;
    let mut target = n;
    let mut buf: Vec<NodeId> = Vec::new();

    while nodes.len() < target {
        let v = prefix.draw(&mut rng);
        let ball = scratch.ball(g, v, h);
        searches += 1;
        buf.clear();
        buf.extend_from_slice(ball.nodes());
        let k = (batch_k as usize).min(buf.len());
        let before = nodes.len();
        for i in 0..k {
            let j = rng.random_range(i..buf.len());
            buf.swap(i, j);
            let r = buf[i];
            n_prime += 1;
            match position.get(&r) {
                Some(&p) => weights[p] += 1,
                None => {
                    position.insert(r, nodes.len());
                    nodes.push(r);
                    weights.push(1);
                }
            }
            if nodes.len() == target {
                break;
            }
        }
        if nodes.len() > before {
            stall = 0;
        } else {
            stall += 1;
        }
        if known_total.is_none() && stall > stall_limit(target) {
            let total = scratch.multi_ball(g, union.nodes(), h).len();
            if total < 2 {
                return Err(Error::TooFewReferences(total));
            }
            known_total = Some(total);
            target = target.min(total);
        }
    }

    Ok(ReferenceSample {
        nodes,
        weights,
        probabilities: None,
        mode: SampleMode::Importance,
        sampler: SamplerKind::Importance,
        seed,
        h,
        n_prime,
        n_sum: Some(prefix.n_sum()),
        exhaustive: known_total.is_some_and(|t| t == target),
        reference_size: known_total.map(|t| ReferenceSize { value: t as f64, estimated: false }),
        discards: 0,
        searches,
        batch_k,
    })
}

/// Visits nodes of the whole graph in uniformly random order (without
/// replacement) and keeps those whose `h`-vicinity contains an event node,
/// until `n` are kept or the graph is exhausted.
pub fn sample_whole_graph(
    g: &Graph,
    union: &NodeSet,
    h: u32,
    n: usize,
    seed: u64,
    scratch: &mut BfsScratch,
) -> Result<ReferenceSample> {
    check_n(n)?;
    if union.is_empty() {
        return Err(Error::Empty("event union"));
    }
    let total = g.node_count();
    let mut rng = rng_from_seed(seed);
    // sparse Fisher-Yates: only displaced positions are stored
    let mut displaced: HashMap<u32, u32> = HashMap::new();
    let mut kept = Vec::with_capacity(n.min(total));
    let mut examined = 0usize;
    while kept.len() < n && examined < total {
        let k = examined as u32;
        let j = rng.random_range(k..total as u32);
        let at_j = *displaced.get(&j).unwrap_or(&j);
        let at_k = *displaced.get(&k).unwrap_or(&k);
        displaced.insert(j, at_k);
        displaced.remove(&k);
        examined += 1;
        let v = at_j;
        if scratch.reaches(g, v, h, |u| union.contains(u)) {
            kept.push(v);
        }
    }
    if kept.len() < 2 {
        return Err(Error::TooFewReferences(kept.len()));
    }
    let exhausted = kept.len() < n;
    let found = kept.len();
    let mut s = uniform_sample(SamplerKind::WholeGraph, h, seed, kept);
    s.discards = (examined - found) as u64;
    s.searches = examined as u64;
    s.exhaustive = exhausted || examined == total;
    s.reference_size = Some(if s.exhaustive {
        ReferenceSize { value: found as f64, estimated: false }
    } else {
        ReferenceSize { value: total as f64 * found as f64 / examined as f64, estimated: true }
    });
    Ok(s)
}

/// Expected out-of-sight nodes examined by whole-graph sampling, treating
/// draws as with replacement: `n |V| / N - n`.
pub fn expected_discards(n: usize, node_count: usize, reference_size: usize) -> f64 {
    n as f64 * node_count as f64 / reference_size as f64 - n as f64
}
