use std::cmp::Ordering;
use std::fmt;

/// Largest number of ring variables supported (support masks are 64-bit).
pub const MAX_VARS: usize = 64;

/// A monomial `x^a` over a fixed variable list; compared in graded reverse
/// lexicographic order with `x0 > x1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
    support: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
            support: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0u16; nvars];
        exps[i] = 1;
        Self::from_exponents(exps)
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let degree = exps.iter().map(|&e| e as u32).sum();
        let support = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
            support,
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
            support: self.support | other.support,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.support & !other.support == 0
            && self.degree <= other.degree
            && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_exponents(
            other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support & other.support == 0
    }

    /// Same exponents in a ring with `nvars >= self.nvars()` variables.
    pub fn extend(&self, nvars: usize) -> Monomial {
        assert!(nvars >= self.nvars());
        let mut exps = self.exps.to_vec();
        exps.resize(nvars, 0);
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_order() {
        // x0 > x1 > x2
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0 x2 < x1^2 in grevlex (differs from lex)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert_eq!(m(&[1, 1, 0]).cmp(&m(&[1, 1, 0])), Ordering::Equal);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 1])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
        assert_eq!(a.mul(&b).degree(), 8);
        assert_eq!(a.to_string(), "x0*x1^2");
    }
}
