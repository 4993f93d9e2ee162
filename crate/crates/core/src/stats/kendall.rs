use num_rational::Ratio;

use crate::{Error, Result};

/// Sign of `(a_i - a_j)(b_i - b_j)`: `1` concordant, `-1` discordant,
/// `0` tied on either side.
pub fn concordance<T: Ord>(a_i: &T, a_j: &T, b_i: &T, b_j: &T) -> i8 {
    (a_i.cmp(a_j) as i8) * (b_i.cmp(b_j) as i8)
}

/// Concordance sum over all pairs and the number of pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KendallT {
    /// `S = Σ_{i<j} c(i, j)`
    pub s: i64,
    /// `n (n - 1) / 2`
    pub pairs: i64,
}

impl KendallT {
    pub fn t(&self) -> Ratio<i64> {
        Ratio::new(self.s, self.pairs)
    }

    pub fn value(&self) -> f64 {
        self.s as f64 / self.pairs as f64
    }
}

/// Dense ranks (0-based) under `Ord`; equal values share a rank.
pub fn dense_ranks<T: Ord>(v: &[T]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&i, &j| v[i].cmp(&v[j]));
    let mut ranks = vec![0u32; v.len()];
    let mut rank = 0u32;
    for k in 0..order.len() {
        if k > 0 && v[order[k]] != v[order[k - 1]] {
            rank += 1;
        }
        ranks[order[k]] = rank;
    }
    ranks
}

/// Sizes of the maximal groups of equal values, in increasing value
/// order. Singletons are included.
pub fn tie_profile<T: Ord>(v: &[T]) -> Vec<u64> {
    let mut sorted: Vec<&T> = v.iter().collect();
    sorted.sort();
    let mut sizes = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let mut e = k + 1;
        while e < sorted.len() && sorted[e] == sorted[k] {
            e += 1;
        }
        sizes.push((e - k) as u64);
        k = e;
    }
    sizes
}

/// Kendall's concordance sum over all pairs, by the direct pair loop.
pub fn kendall_t<T: Ord>(va: &[T], vb: &[T]) -> Result<KendallT> {
    if va.len() != vb.len() {
        return Err(Error::LengthMismatch { left: va.len(), right: vb.len() });
    }
    let n = va.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least two observations, got {n}")));
    }
    // ranks preserve every pairwise comparison and make the loop integer-only
    let ra = dense_ranks(va);
    let rb = dense_ranks(vb);
    let mut s = 0i64;
    for i in 0..n {
        let (ai, bi) = (ra[i], rb[i]);
        let mut row = 0i64;
        for j in i + 1..n {
            let da = (ai > ra[j]) as i64 - (ai < ra[j]) as i64;
            let db = (bi > rb[j]) as i64 - (bi < rb[j]) as i64;
            row += da * db;
        }
        s += row;
    }
    let n = n as i64;
    Ok(KendallT { s, pairs: n * (n - 1) / 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Density;

    fn d(x: u32) -> Density {
        Density::new(x, 10)
    }

    #[test]
    fn concordance_cases() {
        assert_eq!(concordance(&d(3), &d(1), &d(6), &d(4)), 1);
        assert_eq!(concordance(&d(3), &d(1), &d(4), &d(6)), -1);
        assert_eq!(concordance(&d(3), &d(3), &d(4), &d(6)), 0);
    }

    #[test]
    fn perfect_agreement_and_reversal() {
        let a = [d(1), d(2), d(3)];
        let k = kendall_t(&a, &a).unwrap();
        assert_eq!((k.s, k.t()), (3, Ratio::from_integer(1)));
        let b = [d(3), d(2), d(1)];
        assert_eq!(kendall_t(&a, &b).unwrap().t(), Ratio::from_integer(-1));
    }

    #[test]
    fn four_point_example() {
        // pairs: (12)- (13)+ (14)+ (23)+ (24)+ (34)-  => S = 2
        let a = [d(1), d(2), d(3), d(4)];
        let b = [d(2), d(1), d(4), d(3)];
        let k = kendall_t(&a, &b).unwrap();
        assert_eq!(k.s, 2);
        assert_eq!(k.t(), Ratio::new(1, 3));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(matches!(kendall_t(&[d(1)], &[d(1), d(2)]), Err(Error::LengthMismatch { .. })));
        assert!(kendall_t(&[d(1)], &[d(1)]).is_err());
    }

    #[test]
    fn tie_groups() {
        assert_eq!(tie_profile(&[d(2), d(2), d(5)]), vec![2, 1]);
        assert_eq!(tie_profile(&[d(0), d(0), d(0), d(0)]), vec![4]);
        let mixed = [Density::new(1, 2), Density::new(2, 4), Density::new(3, 10)];
        let mut sizes = tie_profile(&mixed);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn ranks_are_dense() {
        assert_eq!(dense_ranks(&[5, 1, 5, 3]), vec![2, 0, 2, 1]);
    }
}
