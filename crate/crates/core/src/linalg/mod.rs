//! Exact arithmetic: big numbers, prime fields, exact matrix rank, and
//! counts of fixed-rank matrices over finite fields.

mod count;
mod fp;
mod log;
mod prime;
mod qmatrix;

pub use count::count_rank_matrices;
pub(crate) use fp::rank_in_place;
pub use fp::{fp_rank, FpMatrix, FpScalar};
pub use log::{ln_fixed, log_base, LOG_FRAC_BITS};
pub use prime::{is_prime, primes_in, Prime};
pub use qmatrix::{q_rank, QMatrix};

pub use num_bigint::{BigInt, BigUint as BigNat};
pub use num_rational::BigRational as Rational;

use num_traits::One;

/// Whether a rational is an integer (denominator 1).
pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Parses `"n"` or `"a/b"` into a reduced rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(crate::Error::invalid(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"n"` or `"a/b"` (always lowest terms, positive denominator).
pub fn format_rational(q: &Rational) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
