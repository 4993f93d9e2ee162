//! Pairs generated on a graph and tested after randomly removing or
//! adding edges.

use tesc::engine::{Engine, SamplerChoice, TestConfig};
use tesc::simulation::{perturb_graph, recall_experiment_on, watts_strogatz, Polarity, RecallConfig, RecallGrid};

fn main() -> tesc::Result<()> {
    let g = watts_strogatz(20_000, 16, 0.1, 3)?;
    let generator = Engine::new(&g, None)?;
    let cfg = RecallConfig {
        m: 200,
        pairs_per_cell: 10,
        grid: RecallGrid {
            levels: vec![1, 2],
            noise: vec![0.0, 0.25],
            polarities: vec![Polarity::Positive, Polarity::Negative],
        },
        test: TestConfig { sampler: SamplerChoice::BatchBfs, ..TestConfig::default() },
        seed: 6,
    };
    println!("edges\th\tnoise\tpolarity\trecall");
    for fraction in [-0.4, -0.2, 0.0, 0.2, 0.4] {
        let perturbed = perturb_graph(&g, fraction, 8)?;
        let tester = Engine::new(&perturbed, None)?;
        for cell in recall_experiment_on(&generator, &tester, &cfg)?.cells {
            let recall = cell.recall.map_or("-".to_string(), |r| format!("{r:.2}"));
            println!("{}\t{}\t{}\t{}\t{recall}", perturbed.edge_count(), cell.h, cell.noise, cell.polarity);
        }
    }
    Ok(())
}
