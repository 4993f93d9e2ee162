use serde::Serialize;

use super::kendall::dense_ranks;
use crate::{Error, Result};

/// Selection probability `hits / total` of a reference node under
/// importance sampling, where `hits = |V_r^h ∩ V_a∪b|` and
/// `total = N_sum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Probability {
    pub hits: u32,
    pub total: u64,
}

impl Probability {
    pub fn value(&self) -> f64 {
        self.hits as f64 / self.total as f64
    }
}

/// Importance-weighted concordance ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedT {
    pub value: f64,
    /// Weighted concordance sum, in units where the largest
    /// `w_i / p(r_i)` is one.
    pub numerator: f64,
    pub denominator: f64,
}

/// `Σ_{i<j} c_ij q_i q_j / Σ_{i<j} q_i q_j` with `q_i = w_i / p(r_i)`.
///
/// The `q_i` are rescaled by their maximum before summing; equal `q_i`
/// therefore become exactly one and the result equals the unweighted
/// statistic bit for bit.
pub fn weighted_t<T: Ord>(weights: &[u32], probs: &[Probability], va: &[T], vb: &[T]) -> Result<WeightedT> {
    let n = va.len();
    if vb.len() != n {
        return Err(Error::LengthMismatch { left: n, right: vb.len() });
    }
    if weights.len() != n || probs.len() != n {
        return Err(Error::LengthMismatch { left: n, right: weights.len().min(probs.len()) });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two observations, got {n}")));
    }
    for p in probs {
        if p.hits == 0 || p.total == 0 || p.hits as u64 > p.total {
            return Err(Error::InvalidArgument(format!("selection probability {}/{} not in (0, 1]", p.hits, p.total)));
        }
    }
    if let Some(w) = weights.iter().find(|&&w| w == 0) {
        return Err(Error::InvalidArgument(format!("weight {w} must be at least 1")));
    }
    // totals differ only if callers mix samples; compare on a common scale
    let q: Vec<f64> = weights.iter().zip(probs).map(|(&w, p)| w as f64 * p.total as f64 / p.hits as f64).collect();
    let qmax = q.iter().cloned().fold(0.0f64, f64::max);
    let q: Vec<f64> = q.iter().map(|&x| x / qmax).collect();

    let ra = dense_ranks(va);
    let rb = dense_ranks(vb);
    let mut numerator = 0.0;
    let mut suffix = 0.0;
    let mut denominator = 0.0;
    for i in (0..n).rev() {
        let (ai, bi) = (ra[i], rb[i]);
        let mut row = 0.0;
        for j in i + 1..n {
            let da = (ai > ra[j]) as i32 - (ai < ra[j]) as i32;
            let db = (bi > rb[j]) as i32 - (bi < rb[j]) as i32;
            match da * db {
                1 => row += q[j],
                -1 => row -= q[j],
                _ => {}
            }
        }
        numerator += q[i] * row;
        denominator += q[i] * suffix;
        suffix += q[i];
    }
    Ok(WeightedT { value: numerator / denominator, numerator, denominator })
}
