//! Flattening ranks, slice-rank and subrank bounds, hypergraph independence
//! numbers, the closed form for matrix multiplication, and the assembled
//! chain `subrank lower <= GR <= slice-rank upper <= min flattening rank`.

use serde::Serialize;

use crate::analytic::{liminf_scan, CountBudget, PointCount};
use crate::geometric::{cheapest_axis, gr_exact, gr_modular, gr_modular_matmul, GrResult, DEFAULT_PRIMES};
use crate::groebner::BuchbergerConfig;
use crate::linalg::{q_rank, Prime};
use crate::tensor::{matmul_shape, Hypergraph3, Tensor3};
use crate::{Error, Result};

/// Size limit for the exact subset searches.
pub const MAX_SEARCH_N: usize = 20;

/// Exact ranks of the three flattenings over Q.
pub fn flattening_ranks(t: &Tensor3) -> [usize; 3] {
    [0, 1, 2].map(|a| q_rank(&t.flatten(a).expect("valid axis")))
}

/// `min` flattening rank, an upper bound on slice rank.
pub fn slice_rank_upper(t: &Tensor3) -> usize {
    flattening_ranks(t).into_iter().min().expect("three ranks")
}

/// Largest subset of `0..n` containing none of the `forbidden` sets.
fn max_set_avoiding(n: usize, forbidden: &[u32]) -> usize {
    let mut forbidden = forbidden.to_vec();
    forbidden.sort_unstable();
    forbidden.dedup();
    // high-degree vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(forbidden.iter().filter(|&&f| f >> v & 1 == 1).count()));
    let mut best = 0;
    search(&order, &forbidden, 0, 0, 0, &mut best);
    best
}

fn search(order: &[usize], forbidden: &[u32], pos: usize, chosen: u32, size: usize, best: &mut usize) {
    if size + (order.len() - pos) <= *best {
        return;
    }
    if pos == order.len() {
        *best = size;
        return;
    }
    let v = order[pos];
    let with = chosen | 1 << v;
    if !forbidden.iter().any(|&f| f >> v & 1 == 1 && f & !with == 0) {
        search(order, forbidden, pos + 1, with, size + 1, best);
    }
    search(order, forbidden, pos + 1, chosen, size, best);
}

fn check_search_size(n: usize) -> Result<()> {
    if n > MAX_SEARCH_N {
        return Err(Error::invalid(format!(
            "exact search limited to n <= {MAX_SEARCH_N}, got {n}"
        )));
    }
    Ok(())
}

/// Lower bound on the subrank: the largest `S` with `T|_{S x S x S}` diagonal
/// with nonzero diagonal, and at least 1 for any nonzero tensor.
pub fn subrank_diag_lower(t: &Tensor3) -> Result<usize> {
    let [n1, n2, n3] = t.dims();
    if n1 != n2 || n2 != n3 {
        return Err(Error::invalid(format!(
            "diagonal search needs a cubic tensor, got {:?}",
            t.dims()
        )));
    }
    check_search_size(n1)?;
    let mut forbidden: Vec<u32> = (0..n1)
        .filter(|&i| num_traits::Zero::is_zero(t.get([i, i, i])))
        .map(|i| 1 << i)
        .collect();
    forbidden.extend(
        t.nonzeros()
            .filter(|([a, b, c], _)| !(a == b && b == c))
            .map(|([a, b, c], _)| 1u32 << a | 1 << b | 1 << c),
    );
    let diag = max_set_avoiding(n1, &forbidden);
    Ok(if t.is_zero() { 0 } else { diag.max(1) })
}

/// `max |S|` with no edge inside `S x S x S`.
pub fn independence_number(h: &Hypergraph3) -> Result<usize> {
    check_search_size(h.n())?;
    let forbidden: Vec<u32> = h.edges().iter().map(|&[a, b, c]| 1u32 << a | 1 << b | 1 << c).collect();
    Ok(max_set_avoiding(h.n(), &forbidden))
}

/// `GR(<e,h,l>)`: with `e <= h <= l` sorted, `eh - floor((e+h-l)^2 / 4)` when
/// `e + h >= l`, else `eh`.
pub fn matmul_gr_formula(e: usize, h: usize, l: usize) -> usize {
    let mut s = [e, h, l];
    s.sort_unstable();
    let [e, h, l] = s;
    if e + h >= l {
        let delta = e + h - l;
        e * h - delta * delta / 4
    } else {
        e * h
    }
}

/// Strassen's lower bound on the border subrank of `<e,h,l>`.
pub fn strassen_border_lower(e: usize, h: usize, l: usize) -> usize {
    let mut s = [e as i64, h as i64, l as i64];
    s.sort_unstable();
    let [e, h, l] = s;
    let delta = e + h - l;
    let v = if delta >= 0 {
        e * h - (delta * delta).div_euclid(4)
    } else {
        e * h
    };
    v as usize
}

/// `alpha(E)` together with the GR of the hypergraph tensor, checking
/// `alpha(E) <= GR`.
pub fn independence_vs_gr(h: &Hypergraph3, config: &BuchbergerConfig) -> Result<(usize, GrResult)> {
    let alpha = independence_number(h)?;
    let t = crate::tensor::hypergraph_tensor(h);
    let g = gr_exact(&t, cheapest_axis(&t), config)?;
    if alpha > g.gr {
        return Err(Error::InvariantViolation(format!(
            "independence number {alpha} exceeds GR {} on {} vertices",
            g.gr,
            h.n()
        )));
    }
    Ok((alpha, g))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatmulOracle {
    pub shape: [usize; 3],
    pub gr_formula: usize,
    pub strassen_lower: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArFailure {
    pub prime: u64,
    pub error: String,
}

/// The assembled bound chain. Fields that could not be computed are `None`
/// with the reason recorded in `missing`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub dims: [usize; 3],
    pub subrank_diag_lower: Option<usize>,
    pub gr: Option<GrResult>,
    pub sr_upper: usize,
    pub flattening_ranks: [usize; 3],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ar_samples: Vec<PointCount>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ar_failures: Vec<ArFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matmul: Option<MatmulOracle>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing: Vec<String>,
    /// Known values recorded for reference; not computed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

impl ChainReport {
    /// Checks `lower <= GR <= sr_upper <= min flattening` on the fields present.
    pub fn check(&self) -> Result<()> {
        let min_flat = self.flattening_ranks.iter().copied().min().expect("three ranks");
        let mut chain: Vec<(&str, usize)> = Vec::new();
        if let Some(l) = self.subrank_diag_lower {
            chain.push(("subrank_diag_lower", l));
        }
        if let Some(g) = &self.gr {
            chain.push(("gr", g.gr));
        }
        chain.push(("sr_upper", self.sr_upper));
        chain.push(("min_flattening", min_flat));
        for w in chain.windows(2) {
            if w[0].1 > w[1].1 {
                return Err(Error::InvariantViolation(format!(
                    "chain broken for dims {:?}: {} = {} > {} = {}",
                    self.dims, w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        if let (Some(m), Some(g)) = (&self.matmul, &self.gr) {
            if matches!(g.method, crate::geometric::GrMethod::Exact(_)) && g.gr != m.gr_formula {
                return Err(Error::InvariantViolation(format!(
                    "exact GR {} of <{},{},{}> differs from the closed form {}",
                    g.gr, m.shape[0], m.shape[1], m.shape[2], m.gr_formula
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct ChainConfig {
    pub groebner: BuchbergerConfig,
    pub budget: CountBudget,
}

/// Computes every bound for `t`, with optional AR samples at `primes`.
pub fn chain_report(t: &Tensor3, primes: Option<&[Prime]>, config: &ChainConfig) -> Result<ChainReport> {
    let mut missing = Vec::new();
    let flattening_ranks = flattening_ranks(t);
    let sr_upper = flattening_ranks.iter().copied().min().expect("three ranks");

    let subrank_diag_lower = match subrank_diag_lower(t) {
        Ok(v) => Some(v),
        Err(e) => {
            missing.push(format!("subrank_diag_lower: {e}"));
            None
        }
    };

    let matmul = matmul_shape(t).map(|(e, h, l)| MatmulOracle {
        shape: [e, h, l],
        gr_formula: matmul_gr_formula(e, h, l),
        strassen_lower: strassen_border_lower(e, h, l),
    });

    let gr = match gr_exact(t, cheapest_axis(t), &config.groebner) {
        Ok(g) => Some(g),
        Err(Error::BudgetExceeded(why)) => {
            missing.push(format!("exact gr: budget exceeded ({why}); modular fallback"));
            let fallback_primes: Vec<Prime> = DEFAULT_PRIMES.iter().map(|&p| Prime::new(p).expect("prime")).collect();
            let modular = match &matmul {
                Some(m) => gr_modular_matmul(m.shape[0], m.shape[1], m.shape[2], &fallback_primes),
                None => gr_modular(t, &fallback_primes, &config.budget),
            };
            match modular {
                Ok(g) => Some(g),
                Err(e) => {
                    missing.push(format!("gr: {e}"));
                    None
                }
            }
        }
        Err(e) => return Err(e),
    };

    let mut annotations = Vec::new();
    if *t == crate::tensor::w_tensor() {
        annotations.push("W: true subrank and border subrank are 1 (known value, not computed)".to_string());
    }

    let mut ar_samples = Vec::new();
    let mut ar_failures = Vec::new();
    if let Some(ps) = primes {
        for row in liminf_scan(t, ps, &config.budget) {
            match row.result {
                Ok(c) => ar_samples.push(c),
                Err(e) => ar_failures.push(ArFailure {
                    prime: row.prime,
                    error: e.to_string(),
                }),
            }
        }
    }

    let report = ChainReport {
        id: None,
        dims: t.dims(),
        subrank_diag_lower,
        gr,
        sr_upper,
        flattening_ranks,
        ar_samples,
        ar_failures,
        matmul,
        missing,
        annotations,
    };
    report.check()?;
    Ok(report)
}
