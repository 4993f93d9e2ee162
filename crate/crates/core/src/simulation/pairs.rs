//! Simulated event pairs with known correlation.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::graph::{BfsScratch, EventSet, Graph, NodeId, NodeSet};
use crate::rng::{derive_seed, derive_seed_path, rng_from_seed, TescRng};
use crate::stats::normal_sf;
use crate::{Error, Result};

const NOISE_TAG: u64 = 0x6e6f697365;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    /// Both events uniform and unrelated; a null control.
    Independent,
}

impl Polarity {
    pub fn name(&self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Independent => "independent",
        }
    }

    fn tag(&self) -> u64 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => 2,
            Polarity::Independent => 3,
        }
    }
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" | "positive" => Ok(Polarity::Positive),
            "neg" | "negative" => Ok(Polarity::Negative),
            "ind" | "independent" => Ok(Polarity::Independent),
            _ => Err(Error::InvalidArgument(format!("unknown polarity {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimPairSpec {
    pub m: usize,
    pub h: u32,
    pub polarity: Polarity,
    pub noise_p: f64,
    pub seed: u64,
}

impl SimPairSpec {
    pub fn validate(&self, node_count: usize) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        if self.m > node_count {
            return Err(Error::Infeasible(format!("m = {} exceeds the {node_count} graph nodes", self.m)));
        }
        if self.h < 1 {
            return Err(Error::InvalidArgument("h must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.noise_p) {
            return Err(Error::InvalidArgument(format!("noise must lie in [0, 1], got {}", self.noise_p)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairStats {
    /// Positive pairs: draws whose distance had an empty frontier.
    pub fallbacks: usize,
    /// Positive pairs: realised a-to-b hop distances.
    pub depth_counts: Vec<usize>,
    /// b placements moved by noise.
    pub relocated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimPair {
    pub polarity: Polarity,
    pub h: u32,
    pub seed: u64,
    pub a: EventSet,
    pub b: EventSet,
    /// One b placement per draw, before set deduplication. For positive
    /// pairs slot `i` is linked to `links[i]`.
    pub b_slots: Vec<NodeId>,
    pub links: Option<Vec<NodeId>>,
    pub stats: PairStats,
}

impl SimPair {
    fn rebuild_b(&mut self, node_count: usize) -> Result<()> {
        self.b = EventSet::from_unsorted("b", self.b_slots.clone(), node_count)?;
        Ok(())
    }
}

/// Probability of each clipped distance `0..=h` for
/// `d = min(round(|x|), h)`, `x ~ Normal(0, h)`.
pub fn distance_probabilities(h: u32) -> Vec<f64> {
    let sd = (h as f64).sqrt();
    // P(|x| >= t)
    let tail = |t: f64| if t <= 0.0 { 1.0 } else { 2.0 * normal_sf(t / sd) };
    (0..=h)
        .map(|d| {
            let lo = d as f64 - 0.5;
            if d == h {
                tail(lo)
            } else {
                tail(lo) - tail(d as f64 + 0.5)
            }
        })
        .collect()
}

/// Draws `min(round(|x|), h)` with `x ~ Normal(0, h)`.
pub fn draw_distance(rng: &mut TescRng, h: u32) -> u32 {
    let x: f64 = Normal::new(0.0, (h as f64).sqrt()).expect("positive sd").sample(rng);
    (x.abs().round() as u64).min(h as u64) as u32
}

fn uniform_nodes(rng: &mut TescRng, node_count: usize, m: usize) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = sample(rng, node_count, m).into_iter().map(|i| i as NodeId).collect();
    v.sort_unstable();
    v
}

fn exterior(g: &Graph, a: &[NodeId], h: u32, scratch: &mut BfsScratch) -> Vec<NodeId> {
    let ball = scratch.multi_ball(g, a, h).nodes().to_vec();
    NodeSet::new(ball, g.node_count()).complement(g.node_count())
}

/// `m` uniform a-nodes, each with one b-node placed at a clipped
/// half-normal hop distance.
pub fn gen_positive_pair(g: &Graph, spec: &SimPairSpec, scratch: &mut BfsScratch) -> Result<SimPair> {
    spec.validate(g.node_count())?;
    let mut rng = rng_from_seed(spec.seed);
    let a = uniform_nodes(&mut rng, g.node_count(), spec.m);
    let mut stats = PairStats { depth_counts: vec![0; spec.h as usize + 1], ..PairStats::default() };
    let mut slots = Vec::with_capacity(a.len());
    for &v in &a {
        let d = draw_distance(&mut rng, spec.h) as usize;
        let ball = scratch.ball(g, v, d as u32);
        let depth = d.min(ball.depth());
        if depth < d {
            stats.fallbacks += 1;
        }
        let frontier = ball.at_depth(depth);
        slots.push(frontier[rng.random_range(0..frontier.len())]);
        stats.depth_counts[depth] += 1;
    }
    let mut pair = SimPair {
        polarity: Polarity::Positive,
        h: spec.h,
        seed: spec.seed,
        a: EventSet::new("a", a.clone(), g.node_count())?,
        b: EventSet::new("b", vec![], g.node_count())?,
        b_slots: slots,
        links: Some(a),
        stats,
    };
    pair.rebuild_b(g.node_count())?;
    Ok(pair)
}

/// `m` uniform a-nodes and `m` uniform b-nodes at least `h + 1` hops from
/// every a-node.
pub fn gen_negative_pair(g: &Graph, spec: &SimPairSpec, scratch: &mut BfsScratch) -> Result<SimPair> {
    spec.validate(g.node_count())?;
    let mut rng = rng_from_seed(spec.seed);
    let a = uniform_nodes(&mut rng, g.node_count(), spec.m);
    let outside = exterior(g, &a, spec.h, scratch);
    if outside.len() < spec.m {
        return Err(Error::Infeasible(format!(
            "only {} nodes lie outside the {}-vicinity of a; need {}",
            outside.len(),
            spec.h,
            spec.m
        )));
    }
    let b: Vec<NodeId> = sample(&mut rng, outside.len(), spec.m).into_iter().map(|i| outside[i]).collect();
    let mut pair = SimPair {
        polarity: Polarity::Negative,
        h: spec.h,
        seed: spec.seed,
        a: EventSet::new("a", a, g.node_count())?,
        b: EventSet::new("b", vec![], g.node_count())?,
        b_slots: b,
        links: None,
        stats: PairStats::default(),
    };
    pair.rebuild_b(g.node_count())?;
    Ok(pair)
}

/// Two independent uniform `m`-sets.
pub fn gen_independent_pair(g: &Graph, spec: &SimPairSpec) -> Result<SimPair> {
    spec.validate(g.node_count())?;
    let mut rng = rng_from_seed(spec.seed);
    let a = uniform_nodes(&mut rng, g.node_count(), spec.m);
    let b = uniform_nodes(&mut rng, g.node_count(), spec.m);
    Ok(SimPair {
        polarity: Polarity::Independent,
        h: spec.h,
        seed: spec.seed,
        a: EventSet::new("a", a, g.node_count())?,
        b: EventSet::new("b", b.clone(), g.node_count())?,
        b_slots: b,
        links: None,
        stats: PairStats::default(),
    })
}

/// Breaks (positive) or attaches (negative) each b placement independently
/// with probability `p`. Every placement draws its uniform and its
/// candidate target from its own stream, so for a fixed seed the set of
/// moved placements grows monotonically with `p`. Independent pairs are
/// returned unchanged.
pub fn add_noise(g: &Graph, pair: &SimPair, p: f64, seed: u64, scratch: &mut BfsScratch) -> Result<SimPair> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("noise must lie in [0, 1], got {p}")));
    }
    let mut out = pair.clone();
    if p == 0.0 || pair.polarity == Polarity::Independent {
        return Ok(out);
    }
    match pair.polarity {
        Polarity::Positive => {
            let outside = exterior(g, pair.a.nodes(), pair.h, scratch);
            for (i, slot) in out.b_slots.iter_mut().enumerate() {
                let mut rng = rng_from_seed(derive_seed_path(seed, &[i as u64]));
                let u: f64 = rng.random();
                let pick: f64 = rng.random();
                if u < p {
                    if outside.is_empty() {
                        return Err(Error::Infeasible(format!("no node lies outside the {}-vicinity of a", pair.h)));
                    }
                    *slot = outside[((pick * outside.len() as f64) as usize).min(outside.len() - 1)];
                    out.stats.relocated += 1;
                }
            }
        }
        Polarity::Negative => {
            let a = pair.a.nodes();
            for (j, slot) in out.b_slots.iter_mut().enumerate() {
                let mut rng = rng_from_seed(derive_seed_path(seed, &[j as u64]));
                let u: f64 = rng.random();
                let anchor = a[rng.random_range(0..a.len())];
                let pick: f64 = rng.random();
                if u < p {
                    let ball = scratch.ball(g, anchor, pair.h);
                    let nodes = ball.nodes();
                    *slot = nodes[((pick * nodes.len() as f64) as usize).min(nodes.len() - 1)];
                    out.stats.relocated += 1;
                }
            }
        }
        Polarity::Independent => unreachable!(),
    }
    out.rebuild_b(g.node_count())?;
    Ok(out)
}

/// Generates the pair for `spec` and applies its noise level. The noise
/// stream is derived from the spec seed, so the noise-free pair is the
/// same for every noise level.
pub fn generate_pair(g: &Graph, spec: &SimPairSpec, scratch: &mut BfsScratch) -> Result<SimPair> {
    let base = match spec.polarity {
        Polarity::Positive => gen_positive_pair(g, spec, scratch)?,
        Polarity::Negative => gen_negative_pair(g, spec, scratch)?,
        Polarity::Independent => gen_independent_pair(g, spec)?,
    };
    add_noise(g, &base, spec.noise_p, noise_seed(spec.seed), scratch)
}

pub fn noise_seed(pair_seed: u64) -> u64 {
    derive_seed(pair_seed, NOISE_TAG)
}

/// Seed of pair `index` within a cell at level `h` for `polarity`.
pub fn pair_seed(master: u64, h: u32, polarity: Polarity, index: u64) -> u64 {
    derive_seed_path(master, &[h as u64, polarity.tag(), index])
}

/// Smallest hop distance from any a-node to any b-node, searched up to
/// `limit`; `None` if farther.
pub fn min_distance(g: &Graph, a: &EventSet, b: &EventSet, limit: u32, scratch: &mut BfsScratch) -> Option<u32> {
    let ball = scratch.multi_ball(g, a.nodes(), limit);
    (0..=ball.depth()).find(|&d| ball.at_depth(d).iter().any(|&v| b.contains(v))).map(|d| d as u32)
}

/// Checks the noise-free construction guarantee: every a-node of a
/// positive pair has a b-node within `h`, and no b-node of a negative pair
/// lies within `h` of an a-node.
pub fn verify_pair(g: &Graph, pair: &SimPair, scratch: &mut BfsScratch) -> bool {
    match pair.polarity {
        Polarity::Positive => pair.a.nodes().iter().all(|&v| scratch.reaches(g, v, pair.h, |x| pair.b.contains(x))),
        Polarity::Negative => min_distance(g, &pair.a, &pair.b, pair.h, scratch).is_none(),
        Polarity::Independent => true,
    }
}
