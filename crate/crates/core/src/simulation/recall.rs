use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{Decision, Engine, TestConfig};
use crate::rng::derive_seed;
use crate::Result;

use super::pairs::{add_noise, generate_pair, noise_seed, pair_seed, Polarity, SimPairSpec};

const TEST_TAG: u64 = 0x74657374;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallGrid {
    pub levels: Vec<u32>,
    pub noise: Vec<f64>,
    pub polarities: Vec<Polarity>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallConfig {
    pub m: usize,
    pub pairs_per_cell: usize,
    pub grid: RecallGrid,
    /// `h` is overridden per cell; `seed` per pair.
    pub test: TestConfig,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallCell {
    pub h: u32,
    pub noise: f64,
    pub polarity: Polarity,
    pub pairs: usize,
    /// Pairs whose generation failed.
    pub generation_failures: usize,
    /// Completed statistical tests.
    pub tested: usize,
    /// Degenerate or failed tests.
    pub undetermined: usize,
    pub detected_positive: usize,
    pub detected_negative: usize,
    /// Correct-polarity detections over generated pairs. For the
    /// independent control, the rejection rate in either direction.
    pub recall: Option<f64>,
    pub fallbacks: usize,
    pub errors: Vec<String>,
}

impl RecallCell {
    fn new(h: u32, noise: f64, polarity: Polarity, pairs: usize) -> Self {
        RecallCell {
            h,
            noise,
            polarity,
            pairs,
            generation_failures: 0,
            tested: 0,
            undetermined: 0,
            detected_positive: 0,
            detected_negative: 0,
            recall: None,
            fallbacks: 0,
            errors: Vec::new(),
        }
    }

    fn finish(&mut self) {
        let generated = self.pairs - self.generation_failures;
        if generated == 0 {
            return;
        }
        let hits = match self.polarity {
            Polarity::Positive => self.detected_positive,
            Polarity::Negative => self.detected_negative,
            Polarity::Independent => self.detected_positive + self.detected_negative,
        };
        self.recall = Some(hits as f64 / generated as f64);
    }

    fn note(&mut self, err: String) {
        if self.errors.len() < 8 {
            self.errors.push(err);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecallTable {
    pub config: RecallConfig,
    pub cells: Vec<RecallCell>,
}

impl RecallTable {
    pub fn cell(&self, h: u32, noise: f64, polarity: Polarity) -> Option<&RecallCell> {
        self.cells.iter().find(|c| c.h == h && c.noise == noise && c.polarity == polarity)
    }

    pub fn recall(&self, h: u32, noise: f64, polarity: Polarity) -> Option<f64> {
        self.cell(h, noise, polarity).and_then(|c| c.recall)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(
            "h\tnoise\tpolarity\tpairs\tgeneration_failures\ttested\tundetermined\tdetected_positive\tdetected_negative\trecall\tfallbacks\n",
        );
        for c in &self.cells {
            let recall = c.recall.map(|r| format!("{r:.4}")).unwrap_or_else(|| "NA".into());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                c.h,
                c.noise,
                c.polarity,
                c.pairs,
                c.generation_failures,
                c.tested,
                c.undetermined,
                c.detected_positive,
                c.detected_negative,
                recall,
                c.fallbacks
            ));
        }
        out
    }
}

enum Outcome {
    GenFailed(String),
    Tested(Decision),
    Undetermined(String),
}

/// Runs every cell of the grid. Pair `i` of a (level, polarity) cell is the
/// same noise-free pair at every noise level, perturbed with nested noise
/// and tested with the same sampling seed, so noise levels are compared on
/// common random numbers. Pairs run in parallel; the aggregation is in
/// grid order.
pub fn recall_experiment(engine: &Engine<'_>, cfg: &RecallConfig) -> Result<RecallTable> {
    recall_experiment_on(engine, engine, cfg)
}

/// As [`recall_experiment`], but pairs are generated on `generator`'s graph
/// and tested on `tester`'s, e.g. a perturbed copy with the same nodes.
pub fn recall_experiment_on(generator: &Engine<'_>, tester: &Engine<'_>, cfg: &RecallConfig) -> Result<RecallTable> {
    cfg.test.validate()?;
    let g = generator.graph();
    if tester.graph().node_count() != g.node_count() {
        return Err(crate::Error::LengthMismatch { left: g.node_count(), right: tester.graph().node_count() });
    }
    let engine = tester;
    let pool = generator.scratch_pool();
    let mut cells = Vec::new();
    for &h in &cfg.grid.levels {
        for &polarity in &cfg.grid.polarities {
            let test_cfg = TestConfig { h, parallel: false, ..cfg.test.clone() };
            let per_pair: Vec<(usize, Vec<Outcome>)> = (0..cfg.pairs_per_cell as u64)
                .into_par_iter()
                .map(|i| {
                    let seed = pair_seed(cfg.seed, h, polarity, i);
                    let spec = SimPairSpec { m: cfg.m, h, polarity, noise_p: 0.0, seed };
                    let base = match pool.with(|s| generate_pair(g, &spec, s)) {
                        Ok(p) => p,
                        Err(e) => {
                            let msg = e.to_string();
                            return (0, cfg.grid.noise.iter().map(|_| Outcome::GenFailed(msg.clone())).collect());
                        }
                    };
                    let tcfg = TestConfig { seed: derive_seed(seed, TEST_TAG), ..test_cfg.clone() };
                    let outcomes = cfg
                        .grid
                        .noise
                        .iter()
                        .map(|&p| {
                            let pair = match pool.with(|s| add_noise(g, &base, p, noise_seed(seed), s)) {
                                Ok(pair) => pair,
                                Err(e) => return Outcome::GenFailed(e.to_string()),
                            };
                            match engine.test(&pair.a, &pair.b, &tcfg) {
                                Ok(r) => Outcome::Tested(r.decision),
                                Err(e) => Outcome::Undetermined(e.to_string()),
                            }
                        })
                        .collect();
                    (base.stats.fallbacks, outcomes)
                })
                .collect();
            for (k, &noise) in cfg.grid.noise.iter().enumerate() {
                let mut cell = RecallCell::new(h, noise, polarity, cfg.pairs_per_cell);
                for (fallbacks, outcomes) in &per_pair {
                    cell.fallbacks += fallbacks;
                    match &outcomes[k] {
                        Outcome::GenFailed(e) => {
                            cell.generation_failures += 1;
                            cell.note(e.clone());
                        }
                        Outcome::Undetermined(e) => {
                            cell.undetermined += 1;
                            cell.note(e.clone());
                        }
                        Outcome::Tested(d) => {
                            cell.tested += 1;
                            match d {
                                Decision::Positive => cell.detected_positive += 1,
                                Decision::Negative => cell.detected_negative += 1,
                                Decision::Independent => {}
                            }
                        }
                    }
                }
                cell.finish();
                cells.push(cell);
            }
        }
    }
    Ok(RecallTable { config: cfg.clone(), cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::simulation::watts_strogatz;

    fn config(pairs: usize) -> RecallConfig {
        RecallConfig {
            m: 30,
            pairs_per_cell: pairs,
            grid: RecallGrid { levels: vec![1], noise: vec![0.0, 1.0], polarities: vec![Polarity::Positive] },
            test: TestConfig { n: 200, ..TestConfig::default() },
            seed: 4,
        }
    }

    #[test]
    fn empty_cell() {
        let g = watts_strogatz(500, 4, 0.1, 1).unwrap();
        let e = Engine::new(&g, None).unwrap();
        let t = recall_experiment(&e, &config(0)).unwrap();
        assert_eq!(t.cells.len(), 2);
        assert!(t.cells.iter().all(|c| c.recall.is_none() && c.tested == 0));
        assert_eq!(t.to_tsv().lines().count(), 3);
    }

    #[test]
    fn clean_positive_pairs_are_found() {
        let g = watts_strogatz(3000, 6, 0.05, 1).unwrap();
        let e = Engine::new(&g, None).unwrap();
        let t = recall_experiment(&e, &config(6)).unwrap();
        assert!(t.recall(1, 0.0, Polarity::Positive).unwrap() >= 0.8);
        assert!(t.recall(1, 1.0, Polarity::Positive).unwrap() <= 0.2);
        assert_eq!(t, recall_experiment(&e, &config(6)).unwrap());
    }

    #[test]
    fn infeasible_generation_is_counted() {
        let g = Graph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let e = Engine::new(&g, None).unwrap();
        let mut cfg = config(3);
        cfg.m = 2;
        cfg.grid.levels = vec![2];
        cfg.grid.polarities = vec![Polarity::Negative];
        let t = recall_experiment(&e, &cfg).unwrap();
        assert!(t.cells.iter().all(|c| c.generation_failures == 3 && c.recall.is_none()));
    }
}
