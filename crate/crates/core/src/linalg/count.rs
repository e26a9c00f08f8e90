use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::Prime;
use crate::{Error, Result};

/// Number of `m x n` matrices over F_q of rank exactly `r`:
/// `prod_{i<r} (q^m - q^i)(q^n - q^i) / (q^r - q^i)`.
pub fn count_rank_matrices(m: usize, n: usize, r: usize, q: Prime) -> Result<BigUint> {
    if r > m.min(n) {
        return Err(Error::invalid(format!("rank {r} out of range for a {m}x{n} matrix")));
    }
    let q = BigUint::from(q.get());
    let pow = |e: usize| -> BigUint { Pow::pow(&q, e as u32) };
    let (qm, qn, qr) = (pow(m), pow(n), pow(r));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        let qi = pow(i);
        num *= (&qm - &qi) * (&qn - &qi);
        den *= &qr - &qi;
    }
    debug_assert!((&num % &den) == BigUint::from(0u8));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn two_by_two_over_f2() {
        assert_eq!(count_rank_matrices(2, 2, 0, q(2)).unwrap(), BigUint::from(1u8));
        assert_eq!(count_rank_matrices(2, 2, 1, q(2)).unwrap(), BigUint::from(9u8));
        assert_eq!(count_rank_matrices(2, 2, 2, q(2)).unwrap(), BigUint::from(6u8));
    }

    #[test]
    fn rank_out_of_range() {
        assert!(count_rank_matrices(2, 3, 3, q(2)).is_err());
    }

    #[test]
    fn counts_partition_all_matrices() {
        for p in [2u64, 3, 5, 101] {
            for m in 1..5 {
                for n in 1..5 {
                    let total: BigUint = (0..=m.min(n))
                        .map(|r| count_rank_matrices(m, n, r, q(p)).unwrap())
                        .sum();
                    assert_eq!(total, Pow::pow(&BigUint::from(p), (m * n) as u32));
                }
            }
        }
    }
}
