//! One pair tested at every vicinity level the index covers, with the
//! per-level JSON report the CLI writes.

use tesc::engine::{sweep_levels, SamplerChoice, TestConfig};
use tesc::graph::{BfsScratch, VicinityIndex};
use tesc::report::LevelReport;
use tesc::simulation::{generate_pair, watts_strogatz, Polarity, SimPairSpec};

fn main() -> tesc::Result<()> {
    let g = watts_strogatz(30_000, 8, 0.05, 12)?;
    let idx = VicinityIndex::build(&g, 3)?;
    let mut scratch = BfsScratch::new(g.node_count());
    let pair = generate_pair(
        &g,
        &SimPairSpec { m: 400, h: 3, polarity: Polarity::Negative, noise_p: 0.0, seed: 1 },
        &mut scratch,
    )?;

    let cfg = TestConfig { sampler: SamplerChoice::Auto, seed: 21, ..TestConfig::default() };
    let levels = sweep_levels(&g, &pair.a, &pair.b, Some(&idx), &cfg, &[1, 2, 3])?;
    for (h, result) in &levels {
        match result {
            Ok(r) => println!("h = {h}: {:<10} z = {:>7.2} {:?}", r.sampler.name(), r.z, r.decision),
            Err(e) => println!("h = {h}: {e}"),
        }
    }
    let (h, result) = levels.into_iter().last().unwrap();
    let report = LevelReport::from_result(h, result);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
