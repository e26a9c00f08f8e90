//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use num_traits::ToPrimitive;
use rand::Rng;
use trl::linalg::Rational;
use trl::tensor::Tensor3;

/// Rank over F_q of a row-major matrix with entries in `0..q`.
pub fn rank_mod(mut a: Vec<u64>, rows: usize, cols: usize, q: u64) -> usize {
    let inv = |v: u64| (1..q).find(|w| v * w % q == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(rank * cols + j, piv * cols + j);
        }
        let s = inv(a[rank * cols + c]);
        for j in 0..cols {
            a[rank * cols + j] = a[rank * cols + j] * s % q;
        }
        for r in 0..rows {
            let f = a[r * cols + c];
            if r != rank && f != 0 {
                for j in 0..cols {
                    a[r * cols + j] = (a[r * cols + j] + (q - f) * a[rank * cols + j]) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of `m x n` matrices over F_q of each rank, by enumeration.
pub fn rank_histogram(m: usize, n: usize, q: u64) -> Vec<u64> {
    let mut hist = vec![0; m.min(n) + 1];
    let total = q.pow((m * n) as u32);
    for code in 0..total {
        let mut c = code;
        let a: Vec<u64> = (0..m * n)
            .map(|_| {
                let d = c % q;
                c /= q;
                d
            })
            .collect();
        hist[rank_mod(a, m, n, q)] += 1;
    }
    hist
}

fn residue(v: &Rational, p: u64) -> u64 {
    assert!(v.is_integer());
    v.to_integer().to_i64().unwrap().rem_euclid(p as i64) as u64
}

/// `#{(x, y) in F_p^n1 x F_p^n2 : T(x, y, e_k) = 0 for all k}`.
pub fn point_count(t: &Tensor3, p: u64) -> u64 {
    let [n1, n2, n3] = t.dims();
    let coef: Vec<u64> = t.entries().iter().map(|v| residue(v, p)).collect();
    let n = n1 + n2;
    let mut pt = vec![0u64; n];
    let mut count = 0;
    loop {
        let zero = (0..n3).all(|k| {
            let mut s = 0;
            for i in 0..n1 {
                for j in 0..n2 {
                    s = (s + coef[(i * n2 + j) * n3 + k] * pt[i] % p * pt[n1 + j]) % p;
                }
            }
            s == 0
        });
        count += zero as u64;
        let mut d = 0;
        loop {
            if d == n {
                return count;
            }
            pt[d] += 1;
            if pt[d] < p {
                break;
            }
            pt[d] = 0;
            d += 1;
        }
    }
}

pub fn random_tensor<R: Rng>(rng: &mut R, max_dims: [usize; 3], lo: i64, hi: i64) -> Tensor3 {
    let dims = max_dims.map(|m| rng.gen_range(1..=m));
    trl::tensor::random_integer_tensor(dims, lo, hi, rng).unwrap()
}

pub fn random_cubic<R: Rng>(rng: &mut R, max_n: usize, lo: i64, hi: i64) -> Tensor3 {
    let n = rng.gen_range(1..=max_n);
    trl::tensor::random_integer_tensor([n; 3], lo, hi, rng).unwrap()
}

/// Random `rows x cols` matrix with entries `a/b`, `|a| <= 3`, `1 <= b <= 3`.
pub fn random_rational_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> trl::linalg::QMatrix {
    let entries = (0..rows * cols)
        .map(|_| Rational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into()))
        .collect();
    trl::linalg::QMatrix::from_vec(rows, cols, entries).unwrap()
}
