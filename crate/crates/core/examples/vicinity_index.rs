//! Builds the vicinity-size index, saves it, loads it back and reads
//! `N_sum` for an event set.

use tesc::graph::{BfsScratch, VicinityIndex};
use tesc::simulation::barabasi_albert;

fn main() -> tesc::Result<()> {
    let g = barabasi_albert(50_000, 4, 2)?;
    let idx = VicinityIndex::build(&g, 3)?;
    for h in 1..=idx.h_max() {
        println!("h = {h}: mean |V_v^h| = {:.1}", idx.mean_size(h)?);
    }

    let path = std::env::temp_dir().join("tesc-example.idx");
    idx.save(&path)?;
    let loaded = VicinityIndex::load(&path)?;
    loaded.check_graph(&g)?;
    assert_eq!(loaded, idx);
    println!("index round trip through {}: {} bytes", path.display(), std::fs::metadata(&path)?.len());

    let events: Vec<_> = (0..50_000).step_by(500).collect();
    let mut scratch = BfsScratch::new(g.node_count());
    for h in 1..=3 {
        let n = scratch.multi_ball(&g, &events, h).len();
        println!("h = {h}: N_sum = {:>7}, |V_a^h| = {n:>6}", loaded.n_sum(h, &events)?);
    }
    std::fs::remove_file(path)?;
    Ok(())
}
