//! Rank-correlation statistics with exact tie handling.
//!
//! Counts, numerators and null variances are exact (integers and big
//! rationals). Floating point enters only for z-scores, tail
//! probabilities and the importance-weighted estimator.

mod kendall;
mod permutation;
mod significance;
mod transaction;
mod variance;
mod weighted;

pub use kendall::{concordance, dense_ranks, kendall_t, tie_profile, KendallT};
pub use permutation::permutation_null_z;
pub use significance::{normal_quantile, normal_sf, z_and_p, Significance, Tail};
pub use transaction::{tau_b_from_contingency, tau_b_transaction, Contingency, TauB};
pub use variance::{null_variance, ratio_to_f64, NullVariance, TieProfile};
pub use weighted::{weighted_t, Probability, WeightedT};
