use std::collections::BTreeSet;

use num_traits::One;

use super::Tensor3;
use crate::linalg::Rational;
use crate::{Error, Result};

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// A 3-uniform hypergraph on `0..n` given as ordered triples, closed under
/// all coordinate permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: BTreeSet<[usize; 3]>,
}

impl Hypergraph3 {
    /// Validates that `edges` is in range and symmetric.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        check_range(n, &edges)?;
        for e in &edges {
            for p in PERMUTATIONS {
                if !edges.contains(&[e[p[0]], e[p[1]], e[p[2]]]) {
                    return Err(Error::invalid(format!("edge set is not symmetric at {e:?}")));
                }
            }
        }
        Ok(Hypergraph3 { n, edges })
    }

    /// The smallest symmetric hypergraph containing `generators`.
    pub fn symmetric_closure(n: usize, generators: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let gens: BTreeSet<_> = generators.into_iter().collect();
        check_range(n, &gens)?;
        let edges = gens
            .iter()
            .flat_map(|e| PERMUTATIONS.map(|p| [e[p[0]], e[p[1]], e[p[2]]]))
            .collect();
        Ok(Hypergraph3 { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<[usize; 3]> {
        &self.edges
    }
}

fn check_range(n: usize, edges: &BTreeSet<[usize; 3]>) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("hypergraph needs n >= 1"));
    }
    match edges.iter().find(|e| e.iter().any(|&v| v >= n)) {
        Some(e) => Err(Error::invalid(format!("edge {e:?} out of range for n = {n}"))),
        None => Ok(()),
    }
}

/// The tensor supported on the edges plus the full diagonal, all coefficients 1.
pub fn hypergraph_tensor(h: &Hypergraph3) -> Tensor3 {
    let support: BTreeSet<[usize; 3]> = h.edges.iter().copied().chain((0..h.n).map(|i| [i, i, i])).collect();
    Tensor3::from_sparse([h.n; 3], support.into_iter().map(|idx| (idx, Rational::one()))).expect("in-range support")
}
