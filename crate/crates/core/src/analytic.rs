//! Exact point counts of `V(T_p) = {(x, y) : T_p(x, y, .) = 0}` over F_p and
//! the analytic rank `AR(T_p) = n1 + n2 - log_p |V(T_p)(F_p)|`.
//!
//! The stratified counter enumerates one axis and sums `p^corank` of the
//! contracted slice matrix. Because `bias(T)` is the same average whichever
//! axis the character sum is collapsed over, counts taken over any axis pair
//! rescale exactly to the `(x, y)` count.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{count_rank_matrices, log_base, Prime, Rational};
use crate::tensor::Tensor3;
use crate::{Error, Result};

/// Enumeration limits. Both are overridable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountBudget {
    /// Vectors enumerated by the stratified counter.
    pub max_vectors: u64,
    /// Points enumerated by the brute-force oracles.
    pub max_points: u64,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            max_vectors: 100_000_000,
            max_points: 10_000_000,
        }
    }
}

/// `|V(T_p)(F_p)|` together with the derived analytic rank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCount {
    pub prime: u64,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub count: BigUint,
    pub ambient: usize,
    pub ar: f64,
}

impl PointCount {
    pub fn new(prime: Prime, count: BigUint, ambient: usize) -> Result<Self> {
        let p = prime.get();
        if count.is_zero() || count > Pow::pow(&BigUint::from(p), ambient) {
            return Err(Error::InvariantViolation(format!(
                "point count {count} outside [1, {p}^{ambient}]"
            )));
        }
        let ar = ambient as f64 - log_base(&count, p)?;
        Ok(PointCount {
            prime: p,
            count,
            ambient,
            ar,
        })
    }

    /// `count / p^ambient`.
    pub fn bias(&self) -> Rational {
        let den = Pow::pow(&BigUint::from(self.prime), self.ambient);
        Rational::new(self.count.clone().into(), den.into())
    }

    /// Nearest integer to `log_p count`, the per-prime dimension estimate.
    pub fn dimension_estimate(&self) -> usize {
        (self.ambient as f64 - self.ar).round().max(0.0) as usize
    }
}

fn pow_checked(p: u64, e: usize) -> Option<u64> {
    p.checked_pow(u32::try_from(e).ok()?)
}

fn within(p: u64, e: usize, limit: u64, what: &str) -> Result<u64> {
    match pow_checked(p, e) {
        Some(n) if n <= limit => Ok(n),
        _ => Err(Error::budget(format!("{what}: {p}^{e} exceeds the limit of {limit}"))),
    }
}

fn small_prime(p: Prime) -> Result<u64> {
    let v = p.get();
    if v >= 1 << 32 {
        return Err(Error::invalid(format!("prime {v} too large for enumeration")));
    }
    Ok(v)
}

/// Auto axis: the smallest dimension, lowest index on ties.
pub fn auto_enum_axis(t: &Tensor3) -> usize {
    let d = t.dims();
    (0..3).min_by_key(|&a| (d[a], a)).expect("three axes")
}

/// Exact `|V(T_p)(F_p)|` by corank stratification over `enum_axis`
/// (`None` picks the smallest axis).
pub fn point_count_stratified(
    t: &Tensor3,
    p: Prime,
    enum_axis: Option<usize>,
    budget: &CountBudget,
) -> Result<PointCount> {
    let axis = enum_axis.unwrap_or_else(|| auto_enum_axis(t));
    if axis > 2 {
        return Err(Error::invalid(format!("axis {axis} out of range 0..3")));
    }
    let res = t.residues_mod(p)?;
    let pv = small_prime(p)?;
    let dims = t.dims();
    within(pv, dims[axis], budget.max_vectors, "stratified enumeration")?;

    // variety over (axis, partner); the remaining axis is eliminated
    let partner = if axis == 2 { 0 } else { 1 - axis };
    let elim = 3 - axis - partner;
    let (na, nb, nc) = (dims[axis], dims[partner], dims[elim]);

    // slab[t] is the nb x nc matrix at index t along the enumerated axis
    let stride = |idx: [usize; 3]| (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2];
    let mut slabs = vec![0u64; na * nb * nc];
    for s in 0..na {
        for b in 0..nb {
            for c in 0..nc {
                let mut idx = [0; 3];
                idx[axis] = s;
                idx[partner] = b;
                idx[elim] = c;
                slabs[(s * nb + b) * nc + c] = res[stride(idx)];
            }
        }
    }

    let hist = corank_histogram(&slabs, na, nb, nc, pv);
    let p_big = BigUint::from(pv);
    let count_ab: BigUint = hist
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(rank, &n)| BigUint::from(n) * Pow::pow(&p_big, nb - rank))
        .sum();

    // rescale the (axis, partner) count to the (0, 1) count
    let target = dims[0] + dims[1];
    let have = na + nb;
    let count = if target >= have {
        count_ab * Pow::pow(&p_big, target - have)
    } else {
        let den = Pow::pow(&p_big, have - target);
        if !(&count_ab % &den).is_zero() {
            return Err(Error::InvariantViolation(format!(
                "axis-{axis} count {count_ab} not divisible by {pv}^{}",
                have - target
            )));
        }
        count_ab / den
    };
    PointCount::new(p, count, target)
}

/// Histogram of ranks of `sum_t u_t slab_t` over all `u` in F_p^na.
fn corank_histogram(slabs: &[u64], na: usize, nb: usize, nc: usize, p: u64) -> Vec<u64> {
    let cells = nb * nc;
    let chunk = |lead: u64| -> Vec<u64> {
        let mut hist = vec![0u64; nb.min(nc) + 1];
        let mut acc: Vec<u64> = slabs[..cells].iter().map(|&v| v * lead % p).collect();
        let mut scratch = vec![0u64; cells];
        let mut digits = vec![0u64; na];
        loop {
            scratch.copy_from_slice(&acc);
            hist[crate::linalg::rank_in_place(&mut scratch, nb, nc, p)] += 1;
            // odometer over coordinates 1..na; every step adds one slab per touched digit
            let mut pos = 1;
            loop {
                if pos >= na {
                    return hist;
                }
                let slab = &slabs[pos * cells..(pos + 1) * cells];
                for (a, &s) in acc.iter_mut().zip(slab) {
                    *a += s;
                    if *a >= p {
                        *a -= p;
                    }
                }
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    };
    (0..p).into_par_iter().map(chunk).reduce(
        || vec![0u64; nb.min(nc) + 1],
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Counts `(x, y)` with `T_p(x, y, .) = 0` by direct enumeration.
pub fn point_count_bruteforce(t: &Tensor3, p: Prime, budget: &CountBudget) -> Result<PointCount> {
    let res = t.residues_mod(p)?;
    let pv = small_prime(p)?;
    let [n1, n2, n3] = t.dims();
    let total = within(pv, n1 + n2, budget.max_points, "brute-force enumeration")?;
    let mut point = vec![0u64; n1 + n2];
    let mut count = 0u64;
    for code in 0..total {
        let mut c = code;
        for v in point.iter_mut() {
            *v = c % pv;
            c /= pv;
        }
        let (x, y) = point.split_at(n1);
        let vanishes = (0..n3).all(|k| {
            let mut s: u128 = 0;
            for i in 0..n1 {
                for j in 0..n2 {
                    s += res[(i * n2 + j) * n3 + k] as u128 * x[i] as u128 * y[j] as u128;
                }
            }
            s.is_multiple_of(pv as u128)
        });
        if vanishes {
            count += 1;
        }
    }
    PointCount::new(p, BigUint::from(count), n1 + n2)
}

/// `E_{x,y,z} exp(2 pi i T(x,y,z) / p)`, evaluated as an exact character sum.
///
/// Tallies how often `T(x,y,z)` takes each residue. Scaling `z` permutes the
/// nonzero residues, so all nonzero residues occur equally often and the sum of
/// roots of unity collapses to `c_0 - c_1`.
pub fn bias_bruteforce(t: &Tensor3, p: Prime, budget: &CountBudget) -> Result<Rational> {
    let res = t.residues_mod(p)?;
    let pv = small_prime(p)?;
    let [n1, n2, n3] = t.dims();
    let n = n1 + n2 + n3;
    let total = within(pv, n, budget.max_points, "character-sum enumeration")?;
    let mut tally = vec![0u64; pv as usize];
    let mut point = vec![0u64; n];
    for code in 0..total {
        let mut c = code;
        for v in point.iter_mut() {
            *v = c % pv;
            c /= pv;
        }
        let (x, rest) = point.split_at(n1);
        let (y, z) = rest.split_at(n2);
        let mut s: u128 = 0;
        for ([i, j, k], _) in t.nonzeros() {
            s += res[(i * n2 + j) * n3 + k] as u128 * x[i] as u128 * y[j] as u128 * z[k] as u128;
        }
        tally[(s % pv as u128) as usize] += 1;
    }
    if tally[1..].windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InvariantViolation(
            "nonzero residues of a trilinear form are not equidistributed".into(),
        ));
    }
    let c0 = tally[0] as i128;
    let c1 = tally.get(1).copied().unwrap_or(0) as i128;
    Ok(Rational::new((c0 - c1).into(), (total as i128).into()))
}

/// `AR(T_p) = -log_p bias(T_p)`.
pub fn analytic_rank(t: &Tensor3, p: Prime, budget: &CountBudget) -> Result<f64> {
    Ok(point_count_stratified(t, p, None, budget)?.ar)
}

/// One row of a prime scan; budget failures are kept per row.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub prime: u64,
    pub result: Result<PointCount>,
}

/// Point counts over a list of primes, sorted by prime.
pub fn liminf_scan(t: &Tensor3, primes: &[Prime], budget: &CountBudget) -> Vec<ScanRow> {
    let mut ps = primes.to_vec();
    ps.sort();
    ps.dedup();
    ps.into_iter()
        .map(|p| ScanRow {
            prime: p.get(),
            result: point_count_stratified(t, p, None, budget),
        })
        .collect()
}

/// `|{(X, Y) : XY = 0}|` for `X: e x h`, `Y: h x l` over F_p, which is the
/// point count of `<e,h,l>`: `sum_r N_r(e, h; p) * p^((h - r) l)`.
pub fn matmul_point_count(e: usize, h: usize, l: usize, p: Prime) -> Result<PointCount> {
    if e == 0 || h == 0 || l == 0 {
        return Err(Error::invalid(format!("<{e},{h},{l}> needs positive sizes")));
    }
    let pb = BigUint::from(p.get());
    let mut count = BigUint::zero();
    for r in 0..=e.min(h) {
        count += count_rank_matrices(e, h, r, p)? * Pow::pow(&pb, (h - r) * l);
    }
    PointCount::new(p, count, e * h + h * l)
}
