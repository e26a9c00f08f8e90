use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::MultiPoly;
use crate::linalg::Rational;
use crate::{Error, Result};

/// Order in which critical pairs are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Smallest lcm (grevlex) first, ties by index.
    #[default]
    Normal,
    /// Pairs in creation order.
    Fifo,
}

#[derive(Debug, Clone)]
pub struct BuchbergerConfig {
    /// Maximum number of S-polynomials reduced.
    pub max_pairs: u64,
    pub time_limit: Option<Duration>,
    pub strategy: PairStrategy,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig {
            max_pairs: 1_000_000,
            time_limit: None,
            strategy: PairStrategy::Normal,
        }
    }
}

impl BuchbergerConfig {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

/// Counters reported after a successful run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub pairs_created: u64,
}

pub(crate) struct Ticker {
    deadline: Option<Instant>,
    steps: u64,
}

impl Ticker {
    pub(crate) fn new(limit: Option<Duration>) -> Self {
        Ticker {
            deadline: limit.map(|d| Instant::now() + d),
            steps: 0,
        }
    }

    pub(crate) fn unlimited() -> Self {
        Ticker {
            deadline: None,
            steps: 0,
        }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::budget("Groebner basis wall-clock limit reached"));
                }
            }
        }
        Ok(())
    }
}

/// Full reduction of `f` by `divisors` (multivariate division remainder).
pub(crate) fn reduce(f: &MultiPoly, divisors: &[&MultiPoly], ticker: &mut Ticker) -> Result<MultiPoly> {
    let nvars = f.nvars();
    let mut work: BTreeMap<Monomial, Rational> = f.terms().iter().cloned().collect();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((lm, c)) = work.pop_last() {
        ticker.tick()?;
        let hit = divisors
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gl| gl.divides(&lm)));
        let Some(g) = hit else {
            rem.push((lm, c));
            continue;
        };
        let (gl, gc) = &g.terms()[0];
        let q = gl.quotient_of(&lm).expect("divides");
        let factor = if gc.is_one() { c } else { c / gc };
        for (m, a) in &g.terms()[1..] {
            let key = m.mul(&q);
            let delta = &factor * a;
            match work.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
    }
    Ok(MultiPoly::from_sorted(nvars, rem))
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = &f.terms()[0];
    let (gm, gc) = &g.terms()[0];
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).expect("lcm"), &gc.clone());
    let b = g.mul_term(&gm.quotient_of(&l).expect("lcm"), &fc.clone());
    a.sub(&b)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: u64,
}

/// A reduced Groebner basis under grevlex: monic, auto-reduced, sorted by
/// increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    polys: Vec<MultiPoly>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True iff the ideal is the whole ring (basis `{1}`).
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.polys.iter().filter_map(MultiPoly::leading_monomial)
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        assert_eq!(f.nvars(), self.nvars, "polynomial from a different ring");
        let divs: Vec<&MultiPoly> = self.polys.iter().collect();
        reduce(f, &divs, &mut Ticker::unlimited()).expect("unlimited reduction")
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks Buchberger's criterion (every S-polynomial reduces to zero) and
    /// that the basis is monic and auto-reduced.
    pub fn verify(&self) -> bool {
        for (a, f) in self.polys.iter().enumerate() {
            if f.leading_coeff().is_some_and(|c| !c.is_one()) {
                return false;
            }
            for (b, g) in self.polys.iter().enumerate() {
                if a == b {
                    continue;
                }
                let gl = g.leading_monomial().expect("nonzero basis element");
                if f.terms().iter().any(|(m, _)| gl.divides(m)) {
                    return false;
                }
                if a < b {
                    let fl = f.leading_monomial().expect("nonzero basis element");
                    if !fl.is_coprime(gl) && !self.normal_form(&s_polynomial(f, g)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Runs Buchberger's algorithm with the Gebauer-Moeller criteria.
pub fn buchberger(gens: &[MultiPoly], nvars: usize, config: &BuchbergerConfig) -> Result<GroebnerBasis> {
    buchberger_with_stats(gens, nvars, config).map(|(g, _)| g)
}

pub fn buchberger_with_stats(
    gens: &[MultiPoly],
    nvars: usize,
    config: &BuchbergerConfig,
) -> Result<(GroebnerBasis, BuchbergerStats)> {
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::mismatch(format!(
            "generator in {} variables, ring has {nvars}",
            g.nvars()
        )));
    }
    let mut state = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        seq: 0,
        stats: BuchbergerStats::default(),
    };
    let mut ticker = Ticker::new(config.time_limit);

    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.is_unit() {
            return Ok((unit_basis(nvars), state.stats));
        }
        state.update(g.monic());
    }

    while let Some(pair) = state.next_pair(config.strategy) {
        if state.stats.pairs_reduced >= config.max_pairs {
            return Err(Error::budget(format!(
                "Groebner basis exceeded {} S-pair reductions",
                config.max_pairs
            )));
        }
        state.stats.pairs_reduced += 1;
        let s = s_polynomial(&state.polys[pair.i], &state.polys[pair.j]);
        let divs: Vec<&MultiPoly> = state.active.iter().map(|&k| &state.polys[k]).collect();
        let h = reduce(&s, &divs, &mut ticker)?;
        if h.is_zero() {
            state.stats.zero_reductions += 1;
            continue;
        }
        if h.is_unit() {
            return Ok((unit_basis(nvars), state.stats));
        }
        state.update(h.monic());
    }

    let basis = state.finish(nvars, &mut ticker)?;
    Ok((basis, state.stats))
}

fn unit_basis(nvars: usize) -> GroebnerBasis {
    GroebnerBasis {
        nvars,
        polys: vec![MultiPoly::one(nvars)],
    }
}

struct State {
    polys: Vec<MultiPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    seq: u64,
    stats: BuchbergerStats,
}

impl State {
    fn lm(&self, k: usize) -> &Monomial {
        self.polys[k].leading_monomial().expect("nonzero")
    }

    fn next_pair(&mut self, strategy: PairStrategy) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let best = match strategy {
            PairStrategy::Normal => (0..self.pairs.len()).min_by(|&a, &b| {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                p.lcm.cmp(&q.lcm).then(p.j.cmp(&q.j)).then(p.i.cmp(&q.i))
            }),
            PairStrategy::Fifo => (0..self.pairs.len()).min_by_key(|&a| self.pairs[a].seq),
        }?;
        Some(self.pairs.swap_remove(best))
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: MultiPoly) {
        let hk = self.polys.len();
        self.polys.push(h);
        let hl = self.lm(hk).clone();

        let cands: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, hl.lcm(self.lm(g)))).collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = hl.is_coprime(self.lm(*g));
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        // product criterion
        let new_pairs: Vec<(usize, Monomial)> = kept.into_iter().filter(|(g, _)| !hl.is_coprime(self.lm(*g))).collect();

        // drop old pairs made redundant by h
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let keep = !hl.divides(&p.lcm) || hl.lcm(self.lm(p.i)) == p.lcm || hl.lcm(self.lm(p.j)) == p.lcm;
            if keep {
                self.pairs.push(p);
            }
        }
        for (g, lcm) in new_pairs {
            self.seq += 1;
            self.stats.pairs_created += 1;
            self.pairs.push(Pair {
                i: g,
                j: hk,
                lcm,
                seq: self.seq,
            });
        }

        let polys = &self.polys;
        self.active
            .retain(|&g| !hl.divides(polys[g].leading_monomial().expect("nonzero")));
        self.active.push(hk);
    }

    /// Minimal, auto-reduced, monic basis sorted by leading monomial.
    fn finish(&self, nvars: usize, ticker: &mut Ticker) -> Result<GroebnerBasis> {
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| self.lm(a).cmp(self.lm(b)).then(a.cmp(&b)));
        let mut minimal: Vec<usize> = Vec::new();
        for &k in &idx {
            if !minimal.iter().any(|&m| self.lm(m).divides(self.lm(k))) {
                minimal.push(k);
            }
        }
        let mut polys: Vec<MultiPoly> = minimal.iter().map(|&k| self.polys[k].monic()).collect();
        for a in 0..polys.len() {
            let head = MultiPoly::from_sorted(nvars, vec![polys[a].terms()[0].clone()]);
            let tail = MultiPoly::from_sorted(nvars, polys[a].terms()[1..].to_vec());
            let others: Vec<&MultiPoly> = polys
                .iter()
                .enumerate()
                .filter(|(b, _)| *b != a)
                .map(|(_, p)| p)
                .collect();
            let reduced_tail = reduce(&tail, &others, ticker)?;
            polys[a] = head.add(&reduced_tail);
        }
        Ok(GroebnerBasis { nvars, polys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn gb(gens: &[MultiPoly], n: usize) -> GroebnerBasis {
        let g = buchberger(gens, n, &BuchbergerConfig::default()).unwrap();
        assert!(g.verify());
        g
    }

    #[test]
    fn single_variable() {
        let g = gb(&[x(1, 0)], 1);
        assert_eq!(g.polys(), &[x(1, 0)]);
    }

    #[test]
    fn already_a_basis() {
        let (xx, y, z) = (x(3, 0), x(3, 1), x(3, 2));
        let g = gb(&[xx.mul(&y), xx.mul(&z)], 3);
        let mut got: Vec<String> = g.polys().iter().map(ToString::to_string).collect();
        got.sort();
        assert_eq!(got, vec!["x0*x1", "x0*x2"]);
    }

    #[test]
    fn w_tensor_ideal() {
        // x1 y1, x2 y1 + x1 y2 with variables (x1, x2, y1, y2)
        let v: Vec<_> = (0..4).map(|i| x(4, i)).collect();
        let f1 = v[0].mul(&v[2]);
        let f2 = v[1].mul(&v[2]).add(&v[0].mul(&v[3]));
        let g = gb(&[f1.clone(), f2.clone()], 4);
        assert!(g.contains(&f1) && g.contains(&f2));
        // x1^2 y2 = x1 * f2 - x2 * f1
        assert!(g.contains(&v[0].mul(&v[0]).mul(&v[3])));
        assert!(!g.contains(&v[0]));
    }

    #[test]
    fn unit_ideal() {
        let (a, b) = (x(2, 0), x(2, 1));
        let g = gb(&[a.sub(&MultiPoly::one(2)), a.clone(), b], 2);
        assert!(g.is_unit_ideal());
    }

    #[test]
    fn linear_system() {
        // x + y - 3, x - y - 1  ->  x - 2, y - 1
        let (a, b) = (x(2, 0), x(2, 1));
        let c = |v: i64| MultiPoly::constant(2, Rational::from_integer(v.into()));
        let g = gb(&[a.add(&b).sub(&c(3)), a.sub(&b).sub(&c(1))], 2);
        let got: Vec<String> = g.polys().iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["x1 - 1", "x0 - 2"]);
    }

    #[test]
    fn normal_form_examples() {
        let (a, b) = (x(2, 0), x(2, 1));
        let g = gb(&[a.mul(&b)], 2);
        assert!(g.normal_form(&a.mul(&a).mul(&b)).is_zero());
        assert_eq!(g.normal_form(&MultiPoly::one(2)), MultiPoly::one(2));
        let g1 = gb(std::slice::from_ref(&a), 2);
        assert_eq!(g1.normal_form(&MultiPoly::one(2)), MultiPoly::one(2));
        assert!(g1.normal_form(&a).is_zero());
    }

    #[test]
    fn strategies_agree() {
        // twisted cubic
        let v: Vec<_> = (0..4).map(|i| x(4, i)).collect();
        let gens = [
            v[0].mul(&v[2]).sub(&v[1].mul(&v[1])),
            v[1].mul(&v[3]).sub(&v[2].mul(&v[2])),
            v[0].mul(&v[3]).sub(&v[1].mul(&v[2])),
        ];
        let a = gb(&gens, 4);
        let cfg = BuchbergerConfig {
            strategy: PairStrategy::Fifo,
            ..Default::default()
        };
        let b = buchberger(&gens, 4, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let v: Vec<_> = (0..4).map(|i| x(4, i)).collect();
        let gens = [
            v[0].mul(&v[2]).sub(&v[1].mul(&v[1])),
            v[1].mul(&v[3]).sub(&v[2].mul(&v[2])),
            v[0].mul(&v[3]).sub(&v[1].mul(&v[2])),
        ];
        let cfg = BuchbergerConfig {
            max_pairs: 0,
            ..Default::default()
        };
        assert!(matches!(buchberger(&gens, 4, &cfg), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn ring_mismatch() {
        assert!(buchberger(&[x(2, 0)], 3, &BuchbergerConfig::default()).is_err());
    }
}
