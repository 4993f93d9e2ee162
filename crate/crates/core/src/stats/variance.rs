use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Tie-group sizes of both density vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TieProfile {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl TieProfile {
    pub fn new(a: Vec<u64>, b: Vec<u64>) -> Self {
        TieProfile { a, b }
    }

    /// Groups of size one.
    pub fn untied(n: u64) -> Self {
        TieProfile { a: vec![1; n as usize], b: vec![1; n as usize] }
    }
}

/// Null variance of the concordance sum (`sigma_c_sq`) and of `t`
/// (`sigma_sq = sigma_c_sq / (n(n-1)/2)^2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullVariance {
    pub n: u64,
    pub sigma_c_sq: BigRational,
    pub sigma_sq: BigRational,
}

impl NullVariance {
    pub fn sigma_c(&self) -> f64 {
        ratio_to_f64(&self.sigma_c_sq).sqrt()
    }

    pub fn sigma(&self) -> f64 {
        ratio_to_f64(&self.sigma_sq).sqrt()
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        return x;
    }
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn check_groups(side: &str, sizes: &[u64], n: u64) -> Result<()> {
    if sizes.contains(&0) {
        return Err(Error::InvalidArgument(format!("empty tie group on side {side}")));
    }
    let total: u64 = sizes.iter().sum();
    if total != n {
        return Err(Error::InvalidArgument(format!("tie sizes on side {side} sum to {total}, expected {n}")));
    }
    if sizes.contains(&n) {
        return Err(Error::Degenerate(format!("all {n} values on side {side} are tied")));
    }
    Ok(())
}

/// Tie-corrected null variance of the concordance sum:
///
/// ```text
/// σ_c² = [n(n-1)(2n+5) - Σ u(u-1)(2u+5) - Σ v(v-1)(2v+5)] / 18
///      + [Σ u(u-1)(u-2)] [Σ v(v-1)(v-2)] / (9 n(n-1)(n-2))
///      + [Σ u(u-1)] [Σ v(v-1)] / (2 n(n-1))
/// ```
///
/// Without ties this is `n(n-1)(2n+5)/18`, the untied variance
/// `2(2n+5) / (9n(n-1))` of `t` scaled by `(n(n-1)/2)^2`.
pub fn null_variance(n: u64, ties: &TieProfile) -> Result<NullVariance> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    check_groups("a", &ties.a, n)?;
    check_groups("b", &ties.b, n)?;

    let cubic = |u: u64| -> BigInt { big(u) * big(u.saturating_sub(1)) * big(2 * u + 5) };
    let falling3 = |u: u64| -> BigInt { big(u) * big(u.saturating_sub(1)) * big(u.saturating_sub(2)) };
    let falling2 = |u: u64| -> BigInt { big(u) * big(u.saturating_sub(1)) };

    let total_cubic = cubic(n);
    let ties_a: BigInt = ties.a.iter().map(|&u| cubic(u)).sum();
    let ties_b: BigInt = ties.b.iter().map(|&v| cubic(v)).sum();
    let mut var = BigRational::new(total_cubic - ties_a - ties_b, big(18));

    if n >= 3 {
        let fa: BigInt = ties.a.iter().map(|&u| falling3(u)).sum();
        let fb: BigInt = ties.b.iter().map(|&v| falling3(v)).sum();
        if !fa.is_zero() && !fb.is_zero() {
            let den = big(9) * big(n) * big(n - 1) * big(n - 2);
            var += BigRational::new(fa * fb, den);
        }
    }
    let pa: BigInt = ties.a.iter().map(|&u| falling2(u)).sum();
    let pb: BigInt = ties.b.iter().map(|&v| falling2(v)).sum();
    if !pa.is_zero() && !pb.is_zero() {
        var += BigRational::new(pa * pb, big(2) * big(n) * big(n - 1));
    }

    let pairs = big(n) * big(n - 1) / big(2);
    let sigma_sq = var.clone() / BigRational::from_integer(pairs.clone() * pairs);
    Ok(NullVariance { n, sigma_c_sq: var, sigma_sq })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn untied_n10() {
        let v = null_variance(10, &TieProfile::untied(10)).unwrap();
        assert_eq!(v.sigma_sq, q(50, 810));
    }

    #[test]
    fn untied_n4_reduction() {
        let v = null_variance(4, &TieProfile::untied(4)).unwrap();
        assert_eq!(v.sigma_c_sq, q(156, 18));
        assert_eq!(v.sigma_c_sq, q(26, 108) * q(36, 1));
    }

    #[test]
    fn one_pair_tied() {
        let ties = TieProfile::new(vec![2, 1, 1], vec![1, 1, 1, 1]);
        assert_eq!(null_variance(4, &ties).unwrap().sigma_c_sq, q(138, 18));
    }

    #[test]
    fn full_tie_is_degenerate() {
        let ties = TieProfile::new(vec![4], vec![1, 1, 1, 1]);
        assert!(matches!(null_variance(4, &ties), Err(Error::Degenerate(_))));
        let ties = TieProfile::new(vec![1, 1, 1, 1], vec![4]);
        assert!(matches!(null_variance(4, &ties), Err(Error::Degenerate(_))));
    }

    #[test]
    fn groups_must_partition_n() {
        let ties = TieProfile::new(vec![2, 1], vec![1, 1, 1, 1]);
        assert!(matches!(null_variance(4, &ties), Err(Error::InvalidArgument(_))));
        assert!(null_variance(1, &TieProfile::untied(1)).is_err());
    }

    #[test]
    fn n2_untied() {
        // S is +1 or -1 with equal probability
        assert_eq!(null_variance(2, &TieProfile::untied(2)).unwrap().sigma_c_sq, q(1, 1));
    }

    #[test]
    fn large_binary_ties_stay_exact() {
        let n = 1_000_000u64;
        let ties = TieProfile::new(vec![400_000, 600_000], vec![10, n - 10]);
        let v = null_variance(n, &ties).unwrap();
        assert!(ratio_to_f64(&v.sigma_c_sq) > 0.0);
    }
}
