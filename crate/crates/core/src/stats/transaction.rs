use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::variance::{null_variance, ratio_to_f64, TieProfile};
use crate::{Error, Result};

/// 2×2 contingency of two binary node indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Contingency {
    pub n11: u64,
    pub n10: u64,
    pub n01: u64,
    pub n00: u64,
}

impl Contingency {
    pub fn from_indicators(a: &[bool], b: &[bool]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
        }
        let mut c = Contingency { n11: 0, n10: 0, n01: 0, n00: 0 };
        for (&x, &y) in a.iter().zip(b) {
            match (x, y) {
                (true, true) => c.n11 += 1,
                (true, false) => c.n10 += 1,
                (false, true) => c.n01 += 1,
                (false, false) => c.n00 += 1,
            }
        }
        Ok(c)
    }

    pub fn total(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }
}

/// Transaction correlation: Kendall's τ_b of the indicators and the
/// z-score of its numerator under the tie-adjusted null.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauB {
    pub contingency: Contingency,
    /// Concordant minus discordant pairs, `n11 n00 - n10 n01`.
    pub numerator: i128,
    pub tau_b: f64,
    pub z: f64,
}

fn pairs(k: u64) -> u128 {
    k as u128 * k.saturating_sub(1) as u128 / 2
}

/// `τ_b = (P - Q) / sqrt((n0 - T_a)(n0 - T_b))` where `n0 = N(N-1)/2` and
/// `T_a`, `T_b` count pairs tied on each indicator.
pub fn tau_b_from_contingency(c: Contingency) -> Result<TauB> {
    let n = c.total();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two nodes, got {n}")));
    }
    let a1 = c.n11 + c.n10;
    let b1 = c.n11 + c.n01;
    if a1 == 0 || a1 == n || b1 == 0 || b1 == n {
        return Err(Error::Degenerate("constant indicator".into()));
    }
    let concordant = c.n11 as i128 * c.n00 as i128;
    let discordant = c.n10 as i128 * c.n01 as i128;
    let numerator = concordant - discordant;
    let n0 = pairs(n);
    let untied_a = n0 - pairs(a1) - pairs(n - a1);
    let untied_b = n0 - pairs(b1) - pairs(n - b1);
    let tau_b = numerator as f64 / ((untied_a as f64) * (untied_b as f64)).sqrt();

    let ties = TieProfile::new(vec![a1, n - a1], vec![b1, n - b1]);
    let var = null_variance(n, &ties)?;
    let num = BigRational::from_integer(BigInt::from(numerator));
    let z = ratio_to_f64(&num) / ratio_to_f64(&var.sigma_c_sq).sqrt();
    Ok(TauB { contingency: c, numerator, tau_b, z })
}

pub fn tau_b_transaction(a: &[bool], b: &[bool]) -> Result<TauB> {
    tau_b_from_contingency(Contingency::from_indicators(a, b)?)
}
