use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use crate::linalg::{format_rational, Rational};

/// A polynomial over Q, terms kept in strictly decreasing grevlex order with
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        MultiPoly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), Rational::one())],
        }
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial from a different ring");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    pub(crate) fn from_map(nvars: usize, acc: BTreeMap<Monomial, Rational>) -> Self {
        MultiPoly {
            nvars,
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Trusted constructor: terms already strictly decreasing and nonzero.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly { nvars, terms }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Scaled so the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.combine(other, true)
    }

    fn combine(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Rational| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b.0.clone(), sign(&b.1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + sign(&b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                *acc.entry(m.mul(n)).or_insert_with(Rational::zero) += a * b;
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-Rational::one())
    }

    /// Same polynomial in a ring with more variables appended.
    pub fn extend(&self, nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.extend(nvars), c.clone())).collect(),
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect();
            match (mag.is_one(), vars.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&vars.join("*")),
                (false, true) => s.push_str(&format_rational(&mag)),
                (false, false) => s.push_str(&format!("{}*{}", format_rational(&mag), vars.join("*"))),
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic() {
        let (a, b) = (x(2, 0), x(2, 1));
        let s = a.add(&b);
        let d = a.sub(&b);
        // (a+b)(a-b) = a^2 - b^2
        let p = s.mul(&d);
        assert_eq!(p.to_string(), "x0^2 - x1^2");
        assert!(s.sub(&s).is_zero());
        assert_eq!(p.leading_monomial().unwrap().to_string(), "x0^2");
        assert_eq!(
            s.scale(&Rational::new(1.into(), 2.into())).to_string(),
            "1/2*x0 + 1/2*x1"
        );
    }

    #[test]
    fn from_terms_collects() {
        let m = Monomial::var(2, 1);
        let p = MultiPoly::from_terms(
            2,
            [
                (m.clone(), Rational::one()),
                (m.clone(), -Rational::one()),
                (Monomial::one(2), Rational::from_integer(3.into())),
            ],
        );
        assert!(p.is_unit());
        assert_eq!(p.to_string(), "3");
    }

    #[test]
    fn evaluation() {
        let p = x(2, 0).mul(&x(2, 1)).add(&MultiPoly::one(2));
        let v = p.eval(&[Rational::from_integer(2.into()), Rational::from_integer((-3).into())]);
        assert_eq!(v, Rational::from_integer((-5).into()));
    }
}
