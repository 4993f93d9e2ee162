use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::{Error, Result};

/// Tail convention for the test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// One-tailed, direction given by the sign of the statistic.
    #[default]
    One,
    Two,
}

/// z-score with its tail probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Significance {
    pub z: f64,
    pub p_one_tailed: f64,
    pub p_two_tailed: f64,
}

impl Significance {
    pub fn from_z(z: f64) -> Self {
        let one = normal_sf(z.abs());
        Significance { z, p_one_tailed: one, p_two_tailed: (2.0 * one).min(1.0) }
    }

    pub fn p(&self, tail: Tail) -> f64 {
        match tail {
            Tail::One => self.p_one_tailed,
            Tail::Two => self.p_two_tailed,
        }
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// Upper tail `P(Z > z)` of the standard normal.
pub fn normal_sf(z: f64) -> f64 {
    standard_normal().sf(z)
}

pub fn normal_quantile(p: f64) -> f64 {
    standard_normal().inverse_cdf(p)
}

/// `z = t / sigma` and the p-value for `tail`. One-tailed p-values use the
/// upper tail for positive z and the lower tail for negative z.
pub fn z_and_p(t: f64, sigma: f64, tail: Tail) -> Result<(f64, f64)> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let s = Significance::from_z(t / sigma);
    Ok((s.z, s.p(tail)))
}
