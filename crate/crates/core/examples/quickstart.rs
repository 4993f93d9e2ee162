//! Tests a simulated positively correlated pair on a small-world graph.
//!
//! ```text
//! cargo run --release --example quickstart
//! ```

use tesc::engine::{test_correlation, TestConfig};
use tesc::graph::BfsScratch;
use tesc::simulation::{generate_pair, watts_strogatz, Polarity, SimPairSpec};

fn main() -> tesc::Result<()> {
    let g = watts_strogatz(20_000, 10, 0.1, 1)?;
    let mut scratch = BfsScratch::new(g.node_count());
    let spec = SimPairSpec { m: 300, h: 2, polarity: Polarity::Positive, noise_p: 0.0, seed: 11 };
    let pair = generate_pair(&g, &spec, &mut scratch)?;

    let cfg = TestConfig { h: 2, seed: 3, ..TestConfig::default() };
    let r = test_correlation(&g, &pair.a, &pair.b, None, &cfg)?;
    println!("graph: {} nodes, {} edges", g.node_count(), g.edge_count());
    println!("sampler {} drew n = {} reference nodes", r.sampler.name(), r.n);
    println!("t = {:.4}, z = {:.2}, p = {:.2e}, decision: {:?}", r.statistic, r.z, r.p, r.decision);
    Ok(())
}
