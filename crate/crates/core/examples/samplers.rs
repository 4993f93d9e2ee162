//! The three reference-node samplers on one event union, with their
//! costs and the statistic each one leads to.

use tesc::engine::{Engine, SamplerChoice, TestConfig};
use tesc::graph::{BfsScratch, NodeSet, VicinityIndex};
use tesc::sampling::{expected_discards, reference_set};
use tesc::simulation::{generate_pair, watts_strogatz, Polarity, SimPairSpec};

fn main() -> tesc::Result<()> {
    let g = watts_strogatz(100_000, 12, 0.1, 4)?;
    let idx = VicinityIndex::build(&g, 2)?;
    let engine = Engine::new(&g, Some(&idx))?;
    let mut scratch = BfsScratch::new(g.node_count());
    let pair = generate_pair(
        &g,
        &SimPairSpec { m: 2000, h: 2, polarity: Polarity::Positive, noise_p: 0.3, seed: 5 },
        &mut scratch,
    )?;
    let union = NodeSet::new(pair.a.union(&pair.b), g.node_count());
    let big_n = reference_set(&g, &union, 2, &mut scratch).len();
    println!("|V_a∪b| = {}, N = |V_a∪b^2| = {big_n}", union.len());
    println!("whole-graph sampling expects {:.0} discards for n = 900", expected_discards(900, g.node_count(), big_n));

    for sampler in [SamplerChoice::BatchBfs, SamplerChoice::Importance, SamplerChoice::WholeGraph] {
        let cfg = TestConfig { h: 2, sampler, seed: 1, ..TestConfig::default() };
        let run = engine.run(&pair.a, &pair.b, &cfg)?;
        let (r, s) = (&run.result, &run.sample);
        println!(
            "{:<12} n={} n'={} searches={:<6} discards={:<6} sampling {:>7.2} ms  statistic {:.4}  z {:>6.2}  {:?}",
            r.sampler.name(),
            r.n,
            r.n_prime,
            s.searches,
            r.discards,
            r.timing.sampling_ms,
            r.statistic,
            r.z,
            r.decision
        );
    }
    Ok(())
}
