use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::prime::{mul_mod, pow_mod, Prime};
use crate::{Error, Result};

/// An element of the prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    residue: u64,
    modulus: Prime,
}

impl FpScalar {
    pub fn new(value: u64, modulus: Prime) -> Self {
        FpScalar {
            residue: value % modulus.get(),
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: Prime) -> Self {
        let p = modulus.get() as i128;
        let r = (value as i128).rem_euclid(p);
        FpScalar {
            residue: r as u64,
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpScalar { residue: 0, modulus }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.residue == 0 {
            return None;
        }
        let p = self.modulus.get();
        Some(FpScalar {
            residue: pow_mod(self.residue, p - 2, p),
            modulus: self.modulus,
        })
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli in F_p arithmetic");
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        let p = self.modulus.get();
        let s = self.residue as u128 + rhs.residue as u128;
        FpScalar {
            residue: (s % p as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.modulus.get();
        FpScalar {
            residue: (p - self.residue) % p,
            modulus: self.modulus,
        }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FpScalar {
            residue: mul_mod(self.residue, rhs.residue, self.modulus.get()),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Dense row-major matrix over F_p. Entries are stored as reduced residues
/// sharing the single modulus of the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    modulus: Prime,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Prime) -> Self {
        FpMatrix {
            rows,
            cols,
            modulus,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: Prime) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = 1 % modulus.get();
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(rows: &[Vec<i64>], modulus: Prime) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::mismatch("ragged rows"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| FpScalar::from_i64(v, modulus).residue())
            .collect();
        Ok(FpMatrix {
            rows: r,
            cols: c,
            modulus,
            entries,
        })
    }

    pub fn from_residues(rows: usize, cols: usize, modulus: Prime, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::mismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let p = modulus.get();
        let entries = entries.into_iter().map(|v| v % p).collect();
        Ok(FpMatrix {
            rows,
            cols,
            modulus,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            residue: self.entries[i * self.cols + j],
            modulus: self.modulus,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: FpScalar) {
        assert_eq!(v.modulus(), self.modulus);
        self.entries[i * self.cols + j] = v.residue();
    }

    pub fn residues(&self) -> &[u64] {
        &self.entries
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows || self.modulus != rhs.modulus {
            return Err(Error::mismatch("matrix product shapes or moduli"));
        }
        let p = self.modulus.get();
        let mut out = FpMatrix::zeros(self.rows, rhs.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = (out.entries[idx] + mul_mod(a, rhs.entries[k * rhs.cols + j], p)) % p;
                }
            }
        }
        Ok(out)
    }
}

/// Rank of a matrix over F_p.
pub fn fp_rank(m: &FpMatrix) -> usize {
    let mut buf = m.entries.clone();
    rank_in_place(&mut buf, m.rows, m.cols, m.modulus.get())
}

/// Gaussian elimination on a row-major residue buffer, destroying it.
pub(crate) fn rank_in_place(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = pow_mod(a[rank * cols + col], p - 2, p);
        for r in rank + 1..rows {
            let lead = a[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = mul_mod(lead, inv, p);
            for j in col..cols {
                let sub = mul_mod(factor, a[rank * cols + j], p);
                let v = a[r * cols + j];
                a[r * cols + j] = if v >= sub { v - sub } else { v + p - sub };
            }
        }
        rank += 1;
    }
    rank
}
