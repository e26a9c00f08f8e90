use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::{Error, Result};

/// Dense row-major matrix over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::mismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::mismatch("ragged rows"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        Ok(QMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Builds a matrix from `(numerator, denominator)` pairs.
    pub fn from_fraction_rows(rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::mismatch("ragged rows"));
        }
        let mut entries = Vec::with_capacity(r * c);
        for &(n, d) in rows.iter().flatten() {
            if d == 0 {
                return Err(Error::invalid("zero denominator"));
            }
            entries.push(Rational::new(n.into(), d.into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::mismatch("vector length"));
        }
        Ok((0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect())
    }

    /// Each row scaled by the lcm of its denominators, giving an integer matrix
    /// with the same row space.
    fn integer_rows(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.entries.len());
        for row in self.entries.chunks(self.cols.max(1)).take(self.rows) {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            out.extend(row.iter().map(|q| q.numer() * (&l / q.denom())));
        }
        out
    }
}

/// Exact rank over Q by fraction-free (Bareiss) elimination.
pub fn q_rank(m: &QMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.integer_rows();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let piv = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + col].clone();
            for j in col..cols {
                let v = &piv * &a[r * cols + j] - &lead * &a[rank * cols + j];
                debug_assert!((&v % &prev).is_zero());
                a[r * cols + j] = v / &prev;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}
