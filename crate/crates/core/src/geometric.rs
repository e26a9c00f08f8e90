//! Geometric rank: exact computation through Groebner bases, the axis
//! symmetry cross-check, the multi-prime point-counting estimator, and
//! verification of ZR witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::analytic::{matmul_point_count, point_count_stratified, CountBudget, PointCount};
use crate::groebner::{buchberger, ideal_dimension, radical_membership, BuchbergerConfig, Monomial, MultiPoly};
use crate::linalg::Prime;
use crate::tensor::{other_axes, Tensor3};
use crate::{Error, Result};

/// Primes used by the modular estimator when none are given.
pub const DEFAULT_PRIMES: [u64; 5] = [53, 59, 61, 67, 71];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrMethod {
    /// Groebner dimension with the given axis eliminated.
    Exact(usize),
    /// Point counts over several primes.
    Modular,
}

impl fmt::Display for GrMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrMethod::Exact(a) => write!(f, "exact-axis-{a}"),
            GrMethod::Modular => write!(f, "modular"),
        }
    }
}

impl Serialize for GrMethod {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Per-prime evidence attached to a modular estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeEvidence {
    #[serde(flatten)]
    pub count: PointCount,
    pub dim_estimate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrResult {
    pub gr: usize,
    pub method: GrMethod,
    /// Number of variables of the variety.
    pub ambient: usize,
    pub dim: usize,
    /// Per-prime values (modular only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<PrimeEvidence>,
    /// False when the primes disagree on the dimension estimate.
    pub consistent: bool,
}

/// The bilinear forms `T(u, v, e_k)` for every index `k` of `axis`, in the
/// variables of the two remaining axes (lower axis first). Zero forms dropped.
pub fn slice_forms(t: &Tensor3, axis: usize) -> Result<(Vec<MultiPoly>, usize)> {
    if axis > 2 {
        return Err(Error::invalid(format!("axis {axis} out of range 0..3")));
    }
    let dims = t.dims();
    let (a, b) = other_axes(axis);
    let nvars = dims[a] + dims[b];
    let mut forms: Vec<BTreeMap<Monomial, crate::linalg::Rational>> = vec![BTreeMap::new(); dims[axis]];
    for (idx, v) in t.nonzeros() {
        let mut exps = vec![0u16; nvars];
        exps[idx[a]] += 1;
        exps[dims[a] + idx[b]] += 1;
        forms[idx[axis]].insert(Monomial::from_exponents(exps), v.clone());
    }
    let polys = forms
        .into_iter()
        .map(|m| MultiPoly::from_terms(nvars, m))
        .filter(|p| !p.is_zero())
        .collect();
    Ok((polys, nvars))
}

/// `GR(T) = codim {(u, v) : T(u, v, .) = 0}`, eliminating `axis`.
pub fn gr_exact(t: &Tensor3, axis: usize, config: &BuchbergerConfig) -> Result<GrResult> {
    let (forms, ambient) = slice_forms(t, axis)?;
    let dim = if forms.is_empty() {
        ambient
    } else {
        let g = buchberger(&forms, ambient, config)?;
        ideal_dimension(&g)?
            .ok_or_else(|| Error::InvariantViolation("bilinear ideal generated the unit ideal".into()))?
    };
    Ok(GrResult {
        gr: ambient - dim,
        method: GrMethod::Exact(axis),
        ambient,
        dim,
        evidence: Vec::new(),
        consistent: true,
    })
}

/// The axis whose elimination leaves the fewest variables (largest axis,
/// highest index on ties).
pub fn cheapest_axis(t: &Tensor3) -> usize {
    let d = t.dims();
    (0..3).max_by_key(|&a| (d[a], a)).expect("three axes")
}

/// GR computed with each of the three axes eliminated.
pub fn gr_symmetry_check(t: &Tensor3, config: &BuchbergerConfig) -> Result<[usize; 3]> {
    Ok([
        gr_exact(t, 0, config)?.gr,
        gr_exact(t, 1, config)?.gr,
        gr_exact(t, 2, config)?.gr,
    ])
}

/// Consensus of per-prime point counts: the most frequent rounded dimension,
/// ties resolved toward the value seen at the largest prime.
pub fn gr_from_counts(counts: Vec<PointCount>) -> Result<GrResult> {
    let Some(first) = counts.first() else {
        return Err(Error::invalid("modular estimate needs at least one prime"));
    };
    let ambient = first.ambient;
    if counts.iter().any(|c| c.ambient != ambient) {
        return Err(Error::mismatch("point counts over different ambient spaces"));
    }
    let mut evidence: Vec<PrimeEvidence> = counts
        .into_iter()
        .map(|c| PrimeEvidence {
            dim_estimate: c.dimension_estimate(),
            count: c,
        })
        .collect();
    evidence.sort_by_key(|e| e.count.prime);
    let mut votes: BTreeMap<usize, (usize, u64)> = BTreeMap::new();
    for e in &evidence {
        let v = votes.entry(e.dim_estimate).or_insert((0, 0));
        v.0 += 1;
        v.1 = v.1.max(e.count.prime);
    }
    let (&dim, _) = votes
        .iter()
        .max_by_key(|(_, &(n, largest))| (n, largest))
        .expect("nonempty");
    let dim = dim.min(ambient);
    Ok(GrResult {
        gr: ambient - dim,
        method: GrMethod::Modular,
        ambient,
        dim,
        consistent: votes.len() == 1,
        evidence,
    })
}

/// Multi-prime estimate of GR for an integer tensor.
pub fn gr_modular(t: &Tensor3, primes: &[Prime], budget: &CountBudget) -> Result<GrResult> {
    if !t.is_integer() {
        return Err(Error::NonInteger);
    }
    let counts = primes
        .iter()
        .map(|&p| point_count_stratified(t, p, None, budget))
        .collect::<Result<Vec<_>>>()?;
    gr_from_counts(counts)
}

/// Multi-prime estimate for `<e,h,l>` through the closed-form point count.
pub fn gr_modular_matmul(e: usize, h: usize, l: usize, primes: &[Prime]) -> Result<GrResult> {
    let counts = primes
        .iter()
        .map(|&p| matmul_point_count(e, h, l, p))
        .collect::<Result<Vec<_>>>()?;
    gr_from_counts(counts)
}

/// `(x-degree, y-degree)` if every term has the same bidegree.
fn bidegree(f: &MultiPoly, nx: usize) -> Option<(u32, u32)> {
    let mut out = None;
    for (m, _) in f.terms() {
        let e = m.exponents();
        let d = (
            e[..nx].iter().map(|&v| v as u32).sum(),
            e[nx..].iter().map(|&v| v as u32).sum(),
        );
        match out {
            None => out = Some(d),
            Some(prev) if prev != d => return None,
            _ => {}
        }
    }
    out
}

/// Checks that `V(witnesses)` lies inside `V(T)`: each witness must be
/// bihomogeneous of bidegree (0,1), (1,0) or (1,1) in the `x` (first `n1`)
/// and `y` (next `n2`) variables, and every slice form of `T` along the third
/// axis must vanish on the witnesses' common zeros. A `true` result certifies
/// `ZR(T) <= witnesses.len()`.
pub fn zr_witness_check(t: &Tensor3, witnesses: &[MultiPoly], config: &BuchbergerConfig) -> Result<bool> {
    let [n1, n2, _] = t.dims();
    let nvars = n1 + n2;
    for (k, w) in witnesses.iter().enumerate() {
        if w.nvars() != nvars {
            return Err(Error::mismatch(format!(
                "witness {k} has {} variables, expected {nvars}",
                w.nvars()
            )));
        }
        match bidegree(w, n1) {
            Some((0, 1)) | Some((1, 0)) | Some((1, 1)) => {}
            _ => {
                return Err(Error::invalid(format!(
                    "witness {k} ({w}) is not bihomogeneous of bidegree (0,1), (1,0) or (1,1)"
                )))
            }
        }
    }
    let (forms, _) = slice_forms(t, 2)?;
    for f in &forms {
        if !radical_membership(f, witnesses, config)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Variable `x_i` (0-based) in the `x, y` ring of `t`.
pub fn x_var(t: &Tensor3, i: usize) -> MultiPoly {
    let [n1, n2, _] = t.dims();
    MultiPoly::var(n1 + n2, i)
}

/// Variable `y_j` (0-based) in the `x, y` ring of `t`.
pub fn y_var(t: &Tensor3, j: usize) -> MultiPoly {
    let [n1, n2, _] = t.dims();
    MultiPoly::var(n1 + n2, n1 + j)
}
