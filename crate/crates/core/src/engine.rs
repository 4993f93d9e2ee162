//! End-to-end correlation test.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{vicinity_counts, EventMask, EventSet, Graph, NodeSet, ScratchPool, VicinityCounts, VicinityIndex};
use crate::rng::derive_seed;
use crate::sampling::{
    sample_batch_bfs, sample_importance, sample_whole_graph, ReferenceSample, ReferenceSize, SampleMode, SamplerKind,
};
use crate::stats::{kendall_t, null_variance, ratio_to_f64, tie_profile, weighted_t, Significance, Tail, TieProfile};
use crate::{Error, Result};

/// Which sampler a test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerChoice {
    /// Batch BFS for small event unions (or without an index), importance
    /// sampling otherwise.
    #[default]
    Auto,
    BatchBfs,
    Importance,
    WholeGraph,
}

impl std::str::FromStr for SamplerChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(SamplerChoice::Auto);
        }
        Ok(match s.parse::<SamplerKind>()? {
            SamplerKind::BatchBfs => SamplerChoice::BatchBfs,
            SamplerKind::Importance => SamplerChoice::Importance,
            SamplerKind::WholeGraph => SamplerChoice::WholeGraph,
        })
    }
}

/// Batch size used by importance sampling when none is configured:
/// 1, 3 and 6 nodes per explored vicinity for `h` = 1, 2 and 3+.
pub fn default_batch_k(h: u32) -> u32 {
    match h {
        0 | 1 => 1,
        2 => 3,
        _ => 6,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestConfig {
    pub h: u32,
    pub n: usize,
    pub alpha: f64,
    pub tail: Tail,
    pub sampler: SamplerChoice,
    /// `None` picks [`default_batch_k`].
    pub batch_k: Option<u32>,
    pub seed: u64,
    /// `Auto` uses batch BFS while `|V_a∪b|` is at most this.
    pub auto_batch_bfs_max_union: usize,
    /// Whole-graph sampling warns below this estimated `N / |V|`.
    pub whole_graph_min_coverage: f64,
    /// Evaluate densities on the rayon pool.
    pub parallel: bool,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            h: 1,
            n: 900,
            alpha: 0.05,
            tail: Tail::One,
            sampler: SamplerChoice::Auto,
            batch_k: None,
            seed: 0,
            auto_batch_bfs_max_union: 10_000,
            whole_graph_min_coverage: 0.2,
            parallel: true,
        }
    }
}

impl TestConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h < 1 {
            return Err(Error::InvalidArgument("h must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, 0.5), got {}", self.alpha)));
        }
        if self.batch_k == Some(0) {
            return Err(Error::InvalidArgument("batch_k must be at least 1".into()));
        }
        Ok(())
    }

    pub fn batch_k_for(&self, h: u32) -> u32 {
        self.batch_k.unwrap_or_else(|| default_batch_k(h))
    }

    pub fn with_h(&self, h: u32) -> Self {
        TestConfig { h, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Positive,
    Negative,
    Independent,
}

/// Summary of one density vector's tie structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TieSummary {
    pub groups: usize,
    /// Groups with more than one member.
    pub tied_groups: usize,
    pub largest: u64,
    /// Sizes of groups with more than one member, largest first.
    pub tied_sizes: Vec<u64>,
}

impl TieSummary {
    fn new(sizes: &[u64]) -> Self {
        let mut tied: Vec<u64> = sizes.iter().copied().filter(|&u| u > 1).collect();
        tied.sort_unstable_by(|a, b| b.cmp(a));
        TieSummary {
            groups: sizes.len(),
            tied_groups: tied.len(),
            largest: sizes.iter().copied().max().unwrap_or(0),
            tied_sizes: tied,
        }
    }
}

/// Wall-clock time of the three phases. Not reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PhaseTiming {
    pub sampling_ms: f64,
    pub density_ms: f64,
    pub statistic_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TescResult {
    pub h: u32,
    pub sampler: SamplerKind,
    pub mode: SampleMode,
    pub master_seed: u64,
    /// Seed of the sampling stream, derived from the master seed and `h`.
    pub seed: u64,
    pub batch_k: u32,
    /// Distinct reference nodes.
    pub n: usize,
    /// Total draws.
    pub n_prime: u64,
    pub n_sum: Option<u64>,
    pub reference_size: Option<ReferenceSize>,
    /// The whole reference set was used, so the statistic is the
    /// population value.
    pub exact: bool,
    pub discards: u64,
    /// `t` (uniform samples) or the weighted estimate (importance).
    pub statistic: f64,
    pub weighted: bool,
    /// Concordance sum (uniform samples).
    pub s: Option<i64>,
    /// `t` as a reduced fraction `num/den` (uniform samples).
    pub t_exact: Option<String>,
    pub weighted_numerator: Option<f64>,
    pub ties_a: TieSummary,
    pub ties_b: TieSummary,
    /// Null variance of the concordance sum, as a reduced fraction.
    pub sigma_c_sq: String,
    /// Null standard deviation of the statistic.
    pub sigma: f64,
    pub z: f64,
    pub p_one_tailed: f64,
    pub p_two_tailed: f64,
    pub tail: Tail,
    pub p: f64,
    pub alpha: f64,
    pub decision: Decision,
    pub variance_basis: String,
    pub warnings: Vec<String>,
    pub timing: PhaseTiming,
}

/// A test result with the sample and per-node counts behind it.
#[derive(Debug, Clone)]
pub struct TestRun {
    pub result: TescResult,
    pub sample: ReferenceSample,
    pub counts: Vec<VicinityCounts>,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Shared graph, optional index and per-worker BFS scratch.
#[derive(Debug)]
pub struct Engine<'g> {
    graph: &'g Graph,
    index: Option<&'g VicinityIndex>,
    pool: ScratchPool,
}

impl<'g> Engine<'g> {
    pub fn new(graph: &'g Graph, index: Option<&'g VicinityIndex>) -> Result<Self> {
        if let Some(idx) = index {
            idx.check_graph(graph)?;
        }
        Ok(Engine { graph, index, pool: ScratchPool::new(graph.node_count()) })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn index(&self) -> Option<&'g VicinityIndex> {
        self.index
    }

    pub fn scratch_pool(&self) -> &ScratchPool {
        &self.pool
    }

    pub fn resolve_sampler(&self, cfg: &TestConfig, union_len: usize) -> Result<SamplerKind> {
        Ok(match cfg.sampler {
            SamplerChoice::BatchBfs => SamplerKind::BatchBfs,
            SamplerChoice::WholeGraph => SamplerKind::WholeGraph,
            SamplerChoice::Importance => {
                if self.index.is_none() {
                    return Err(Error::InvalidArgument("importance sampling requires a vicinity index".into()));
                }
                SamplerKind::Importance
            }
            SamplerChoice::Auto => match self.index {
                Some(idx) if union_len > cfg.auto_batch_bfs_max_union && cfg.h <= idx.h_max() => {
                    SamplerKind::Importance
                }
                _ => SamplerKind::BatchBfs,
            },
        })
    }

    /// Draws reference nodes for `union` without evaluating densities.
    pub fn sample(&self, union: &NodeSet, cfg: &TestConfig) -> Result<ReferenceSample> {
        let kind = self.resolve_sampler(cfg, union.len())?;
        let seed = derive_seed(cfg.seed, cfg.h as u64);
        let g = self.graph;
        self.pool.with(|scratch| match kind {
            SamplerKind::BatchBfs => sample_batch_bfs(g, union, cfg.h, cfg.n, seed, scratch),
            SamplerKind::WholeGraph => sample_whole_graph(g, union, cfg.h, cfg.n, seed, scratch),
            SamplerKind::Importance => {
                let idx = self.index.expect("resolved importance without index");
                sample_importance(g, union, idx, cfg.h, cfg.n, cfg.batch_k_for(cfg.h), seed, scratch)
            }
        })
    }

    /// Event counts at every reference node, one BFS per node, in sample
    /// order.
    pub fn evaluate(&self, nodes: &[crate::NodeId], h: u32, mask: &EventMask, parallel: bool) -> Vec<VicinityCounts> {
        let g = self.graph;
        if parallel && nodes.len() >= 64 {
            nodes.par_iter().with_min_len(16).map(|&r| self.pool.with(|s| vicinity_counts(s, g, r, h, mask))).collect()
        } else {
            self.pool.with(|s| nodes.iter().map(|&r| vicinity_counts(s, g, r, h, mask)).collect())
        }
    }

    pub fn test(&self, a: &EventSet, b: &EventSet, cfg: &TestConfig) -> Result<TescResult> {
        Ok(self.run(a, b, cfg)?.result)
    }

    pub fn run(&self, a: &EventSet, b: &EventSet, cfg: &TestConfig) -> Result<TestRun> {
        cfg.validate()?;
        if a.is_empty() {
            return Err(Error::Empty("event set a"));
        }
        if b.is_empty() {
            return Err(Error::Empty("event set b"));
        }
        let g = self.graph;
        let nc = g.node_count();
        for e in [a, b] {
            if let Some(&last) = e.nodes().last() {
                if last as usize >= nc {
                    return Err(Error::NodeOutOfRange { node: last as u64, node_count: nc });
                }
            }
        }
        let mut warnings = Vec::new();
        let union = NodeSet::new(a.union(b), nc);
        let mask = EventMask::new(nc, a, b);

        let t0 = Instant::now();
        let mut sample = self.sample(&union, cfg)?;
        let sampling_ms = ms(t0);

        let t1 = Instant::now();
        let counts = self.evaluate(&sample.nodes, cfg.h, &mask, cfg.parallel);
        let density_ms = ms(t1);

        let t2 = Instant::now();
        let va: Vec<_> = counts.iter().map(|c| c.density_a()).collect();
        let vb: Vec<_> = counts.iter().map(|c| c.density_b()).collect();
        let n = va.len();
        let ties = TieProfile::new(tie_profile(&va), tie_profile(&vb));
        let variance = null_variance(n as u64, &ties)?;
        let sigma_c = ratio_to_f64(&variance.sigma_c_sq).sqrt();
        let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;

        let weighted = sample.mode == SampleMode::Importance && !sample.exhaustive;
        let (statistic, s, t_exact, weighted_numerator, z, basis);
        if weighted {
            let hits: Vec<u32> = counts.iter().map(|c| c.any).collect();
            sample.attach_probabilities(&hits)?;
            let probs = sample.probabilities.as_ref().unwrap();
            let w = weighted_t(&sample.weights, probs, &va, &vb)?;
            statistic = w.value;
            s = None;
            t_exact = None;
            weighted_numerator = Some(w.numerator);
            z = w.value * pairs / sigma_c;
            basis = "tie-adjusted, n distinct nodes, weights ignored";
            if sample.reference_size.is_none() {
                let n_sum = sample.n_sum.unwrap_or(0) as f64;
                let inv: f64 = sample.weights.iter().zip(probs).map(|(&w, p)| w as f64 * n_sum / p.hits as f64).sum();
                sample.reference_size = Some(ReferenceSize { value: inv / sample.n_prime as f64, estimated: true });
            }
            if sample.batch_k > 1 {
                warnings.push(format!(
                    "batch_k = {} draws correlated nodes; the null variance is not corrected for it",
                    sample.batch_k
                ));
            }
        } else {
            let k = kendall_t(&va, &vb)?;
            statistic = k.value();
            s = Some(k.s);
            let t = k.t();
            t_exact = Some(format!("{}/{}", t.numer(), t.denom()));
            weighted_numerator = None;
            z = k.s as f64 / sigma_c;
            basis = "tie-adjusted";
        }
        let sig = Significance::from_z(z);
        let p = sig.p(cfg.tail);
        let decision = if p < cfg.alpha && z > 0.0 {
            Decision::Positive
        } else if p < cfg.alpha && z < 0.0 {
            Decision::Negative
        } else {
            Decision::Independent
        };
        let statistic_ms = ms(t2);

        if n <= 30 {
            warnings.push(format!("n = {n} <= 30: the normal approximation may be unreliable"));
        }
        if sample.exhaustive && n < cfg.n {
            warnings.push(format!("reference set has only {n} nodes; using all of them"));
        }
        if sample.sampler == SamplerKind::WholeGraph {
            if let Some(rs) = sample.reference_size {
                let coverage = rs.value / nc as f64;
                if coverage < cfg.whole_graph_min_coverage {
                    warnings.push(format!(
                        "whole-graph sampling with estimated coverage {coverage:.3} < {}: many discarded draws",
                        cfg.whole_graph_min_coverage
                    ));
                }
            }
        }

        let result = TescResult {
            h: cfg.h,
            sampler: sample.sampler,
            mode: sample.mode,
            master_seed: cfg.seed,
            seed: sample.seed,
            batch_k: sample.batch_k,
            n,
            n_prime: sample.n_prime,
            n_sum: sample.n_sum,
            reference_size: sample.reference_size,
            exact: sample.exhaustive,
            discards: sample.discards,
            statistic,
            weighted,
            s,
            t_exact,
            weighted_numerator,
            ties_a: TieSummary::new(&ties.a),
            ties_b: TieSummary::new(&ties.b),
            sigma_c_sq: format!("{}/{}", variance.sigma_c_sq.numer(), variance.sigma_c_sq.denom()),
            sigma: sigma_c / pairs,
            z,
            p_one_tailed: sig.p_one_tailed,
            p_two_tailed: sig.p_two_tailed,
            tail: cfg.tail,
            p,
            alpha: cfg.alpha,
            decision,
            variance_basis: basis.to_string(),
            warnings,
            timing: PhaseTiming { sampling_ms, density_ms, statistic_ms },
        };
        Ok(TestRun { result, sample, counts })
    }

    /// One independent test per level, ordered by `h`. Each level's
    /// sampling stream is derived from the master seed and `h`.
    pub fn sweep(
        &self,
        a: &EventSet,
        b: &EventSet,
        cfg: &TestConfig,
        levels: &[u32],
    ) -> Vec<(u32, Result<TescResult>)> {
        let mut levels = levels.to_vec();
        levels.sort_unstable();
        levels.dedup();
        levels.into_iter().map(|h| (h, self.test(a, b, &cfg.with_h(h)))).collect()
    }
}

/// Runs one test. See [`Engine::test`].
pub fn test_correlation(
    g: &Graph,
    a: &EventSet,
    b: &EventSet,
    index: Option<&VicinityIndex>,
    cfg: &TestConfig,
) -> Result<TescResult> {
    Engine::new(g, index)?.test(a, b, cfg)
}

/// Runs one test per level. See [`Engine::sweep`].
pub fn sweep_levels(
    g: &Graph,
    a: &EventSet,
    b: &EventSet,
    index: Option<&VicinityIndex>,
    cfg: &TestConfig,
    levels: &[u32],
) -> Result<Vec<(u32, Result<TescResult>)>> {
    Ok(Engine::new(g, index)?.sweep(a, b, cfg, levels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques() -> Graph {
        // cliques {0..5} and {5..10} sharing no nodes, bridged by 4-5
        let mut edges = Vec::new();
        for base in [0u32, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((4, 5));
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn config_validation() {
        let ok = TestConfig::default();
        ok.validate().unwrap();
        for bad in [
            TestConfig { alpha: 0.5, ..ok.clone() },
            TestConfig { alpha: 0.0, ..ok.clone() },
            TestConfig { n: 1, ..ok.clone() },
            TestConfig { h: 0, ..ok.clone() },
            TestConfig { batch_k: Some(0), ..ok.clone() },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn batch_k_defaults() {
        assert_eq!([1, 2, 3, 4].map(default_batch_k), [1, 3, 6, 6]);
    }

    #[test]
    fn empty_events_rejected() {
        let g = two_cliques();
        let a = EventSet::new("a", vec![0], 10).unwrap();
        let e = EventSet::new("e", vec![], 10).unwrap();
        let cfg = TestConfig::default();
        assert!(matches!(test_correlation(&g, &a, &e, None, &cfg), Err(Error::Empty(_))));
        assert!(matches!(test_correlation(&g, &e, &a, None, &cfg), Err(Error::Empty(_))));
    }

    #[test]
    fn importance_requires_index() {
        let g = two_cliques();
        let a = EventSet::new("a", vec![0], 10).unwrap();
        let cfg = TestConfig { sampler: SamplerChoice::Importance, ..TestConfig::default() };
        assert!(matches!(test_correlation(&g, &a, &a, None, &cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn identical_events_are_positive() {
        let g = two_cliques();
        let a = EventSet::new("a", vec![0, 1, 2], 10).unwrap();
        let r = test_correlation(&g, &a, &a, None, &TestConfig { n: 50, ..TestConfig::default() }).unwrap();
        // tied pairs contribute 0, every untied pair is concordant
        let untied =
            (r.n * (r.n - 1) / 2) as i64 - r.ties_a.tied_sizes.iter().map(|&u| (u * (u - 1) / 2) as i64).sum::<i64>();
        assert_eq!(r.s, Some(untied));
        assert!(r.exact);
        assert!(r.z > 0.0);
    }

    #[test]
    fn full_tie_is_undetermined() {
        let g = two_cliques();
        // a everywhere: every density is 1
        let a = EventSet::new("a", (0..10).collect(), 10).unwrap();
        let b = EventSet::new("b", vec![0, 7], 10).unwrap();
        let err = test_correlation(&g, &a, &b, None, &TestConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn sweep_orders_and_dedups_levels() {
        let g = two_cliques();
        let a = EventSet::new("a", vec![0, 1], 10).unwrap();
        let b = EventSet::new("b", vec![1, 8], 10).unwrap();
        let cfg = TestConfig { n: 100, ..TestConfig::default() };
        let out = sweep_levels(&g, &a, &b, None, &cfg, &[2, 1, 2]).unwrap();
        assert_eq!(out.iter().map(|(h, _)| *h).collect::<Vec<_>>(), vec![1, 2]);
        assert!(sweep_levels(&g, &a, &b, None, &cfg, &[]).unwrap().is_empty());
    }
}
