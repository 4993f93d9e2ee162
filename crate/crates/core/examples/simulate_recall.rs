//! A small recall table over vicinity levels, noise and polarity.

use tesc::engine::{Engine, SamplerChoice, TestConfig};
use tesc::simulation::{recall_experiment, watts_strogatz, Polarity, RecallConfig, RecallGrid};

fn main() -> tesc::Result<()> {
    let g = watts_strogatz(20_000, 16, 0.1, 9)?;
    let engine = Engine::new(&g, None)?;
    let cfg = RecallConfig {
        m: 200,
        pairs_per_cell: 10,
        grid: RecallGrid {
            levels: vec![1, 2],
            noise: vec![0.0, 0.25, 0.5, 0.75],
            polarities: vec![Polarity::Positive, Polarity::Negative],
        },
        test: TestConfig { sampler: SamplerChoice::BatchBfs, ..TestConfig::default() },
        seed: 2,
    };
    let table = recall_experiment(&engine, &cfg)?;
    print!("{}", table.to_tsv());
    Ok(())
}
