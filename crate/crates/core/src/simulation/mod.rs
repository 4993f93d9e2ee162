//! Synthetic graphs and correlated event pairs, and the recall harness.

mod generators;
mod pairs;
mod perturb;
mod recall;

pub use generators::{barabasi_albert, erdos_renyi, watts_strogatz};
pub use pairs::{
    add_noise, distance_probabilities, draw_distance, gen_independent_pair, gen_negative_pair, gen_positive_pair,
    generate_pair, min_distance, noise_seed, pair_seed, verify_pair, PairStats, Polarity, SimPair, SimPairSpec,
};
pub use perturb::perturb_graph;
pub use recall::{recall_experiment, recall_experiment_on, RecallCell, RecallConfig, RecallGrid, RecallTable};
