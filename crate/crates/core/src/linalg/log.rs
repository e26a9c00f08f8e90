use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Fractional bits carried by the fixed-point logarithm.
pub const LOG_FRAC_BITS: u32 = 128;
const GUARD_BITS: u32 = 16;

/// `2 * atanh(num/den)` scaled by `2^bits`, for `0 <= num/den <= 1/3`.
fn two_atanh_fixed(num: &BigUint, den: &BigUint, bits: u32) -> BigUint {
    let one = BigUint::from(1u8) << bits;
    let s = (&one * num) / den;
    let s2 = (&s * &s) >> bits;
    let mut power = s;
    let mut sum = BigUint::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = (&power * &s2) >> bits;
        k += 2;
    }
    sum << 1
}

/// `ln(n) * 2^LOG_FRAC_BITS`, rounded toward zero.
pub fn ln_fixed(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::invalid("logarithm of zero"));
    }
    let bits = LOG_FRAC_BITS + GUARD_BITS;
    let k = n.bits() - 1;
    // n = 2^k * m with m in [1, 2); m as a fixed-point value
    let m = if k as u32 >= bits {
        n >> (k as u32 - bits)
    } else {
        n << (bits - k as u32)
    };
    let one = BigUint::from(1u8) << bits;
    // ln m = 2 atanh((m - 1) / (m + 1)), and (m-1)/(m+1) <= 1/3
    let ln_m = two_atanh_fixed(&(&m - &one), &(&m + &one), bits);
    let ln2 = two_atanh_fixed(&BigUint::from(1u8), &BigUint::from(3u8), bits);
    Ok((ln2 * BigUint::from(k) + ln_m) >> GUARD_BITS)
}

/// `log_p(n)` evaluated in fixed point before a single rounding to `f64`.
pub fn log_base(n: &BigUint, p: u64) -> Result<f64> {
    if p < 2 {
        return Err(Error::invalid(format!("logarithm base {p}")));
    }
    if let Some(k) = exact_power(n, p) {
        return Ok(k as f64);
    }
    let num = ln_fixed(n)?;
    let den = ln_fixed(&BigUint::from(p))?;
    let q = BigInt::from((num << 64u32) / den);
    let v = q.to_f64().unwrap_or(f64::INFINITY);
    Ok(v / 2f64.powi(64))
}

/// `k` with `n = p^k`, if any.
fn exact_power(n: &BigUint, p: u64) -> Option<u64> {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while n > BigUint::from(1u8) {
        if !(&n % &p).is_zero() {
            return None;
        }
        n /= &p;
        k += 1;
    }
    (!n.is_zero()).then_some(k)
}
