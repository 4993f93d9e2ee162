use rand::seq::SliceRandom;

use super::kendall::{kendall_t, tie_profile};
use super::variance::{null_variance, TieProfile};
use crate::rng::rng_from_seed;
use crate::Result;

/// Monte Carlo null distribution of the z-score: `vb` is shuffled against
/// a fixed `va` `reps` times. The tie profile, and hence the null
/// variance, is invariant under the shuffle.
pub fn permutation_null_z<T: Ord + Clone>(va: &[T], vb: &[T], reps: usize, seed: u64) -> Result<Vec<f64>> {
    let ties = TieProfile::new(tie_profile(va), tie_profile(vb));
    let sigma_c = null_variance(va.len() as u64, &ties)?.sigma_c();
    let mut rng = rng_from_seed(seed);
    let mut shuffled = vb.to_vec();
    let mut out = Vec::with_capacity(reps);
    for _ in 0..reps {
        shuffled.shuffle(&mut rng);
        out.push(kendall_t(va, &shuffled)?.s as f64 / sigma_c);
    }
    Ok(out)
}
