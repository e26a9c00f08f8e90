use super::buchberger::GroebnerBasis;
use crate::{Error, Result};

/// Variable-count limit for the independent-set search.
pub const MAX_DIMENSION_VARS: usize = 24;

/// Affine dimension of `V(I)` from a Groebner basis of `I`: the largest set of
/// variables `U` such that no leading monomial is supported inside `U`.
///
/// Returns `Ok(None)` for the unit ideal (empty variety).
pub fn ideal_dimension(g: &GroebnerBasis) -> Result<Option<usize>> {
    let n = g.nvars();
    if n > MAX_DIMENSION_VARS {
        return Err(Error::invalid(format!(
            "dimension search limited to {MAX_DIMENSION_VARS} variables, got {n}"
        )));
    }
    if g.is_unit_ideal() {
        return Ok(None);
    }
    let supports = minimal_supports(g.leading_monomials().map(|m| m.support()).collect());
    // U is independent iff its complement meets every support
    Ok(Some(n - min_hitting_set(&supports)))
}

fn minimal_supports(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u64> = Vec::new();
    for s in sets {
        if !out.iter().any(|&t| t & !s == 0) {
            out.push(s);
        }
    }
    out
}

/// Size of the smallest variable set meeting every set in `sets`.
fn min_hitting_set(sets: &[u64]) -> usize {
    let mut best = usize::MAX;
    search(sets, 0, 0, &mut best);
    best
}

/// Lower bound: greedily pick pairwise disjoint unhit sets.
fn disjoint_bound(sets: &[u64], chosen: u64) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &s in sets {
        if s & chosen == 0 && s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

fn search(sets: &[u64], chosen: u64, size: usize, best: &mut usize) {
    // branch on the smallest unhit set
    let Some(&pivot) = sets.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones()) else {
        *best = (*best).min(size);
        return;
    };
    if size + disjoint_bound(sets, chosen) >= *best {
        return;
    }
    let mut rest = pivot;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        search(sets, chosen | (1 << v), size + 1, best);
    }
}
