//! Existence and extraction of decompositions `p = q_1 * ... * q_m`.
//!
//! The zero coordinates of `p` are distributed among the factors (one
//! factor is forced to vanish at each zero of `p`; which one is a case
//! split). Every factor is dehomogenized at the first nonzero coordinate
//! `j0` of `p`, which no factor can vanish at. The scale `lambda` is kept
//! nonzero through `lambda * u = 1`.

use super::solve::{solve_affine, solve_affine_rational, Solution};
use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{evaluate, hadamard_product_all, Ideal, Polynomial, ProjPoint, Scalar};
use crate::groebner::ops::max_independent_set;
use crate::groebner::{reduced_basis, GbOptions, GroebnerBasis};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// For each factor, the coordinates it is forced to vanish at.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZeroPattern {
    pub forced: Vec<Vec<usize>>,
}

impl ZeroPattern {
    pub fn factors(&self) -> usize {
        self.forced.len()
    }
}

/// Distributions of the zero set of `p` over `m` unlabeled factors.
pub fn zero_patterns(zeros: &[usize], m: usize) -> Vec<ZeroPattern> {
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(zeros.len());
    fn go(k: usize, zeros: &[usize], m: usize, labels: &mut Vec<usize>, out: &mut Vec<ZeroPattern>) {
        if k == zeros.len() {
            let mut forced = vec![Vec::new(); m];
            for (i, &l) in labels.iter().enumerate() {
                forced[l].push(zeros[i]);
            }
            out.push(ZeroPattern { forced });
            return;
        }
        let used = labels.iter().copied().max().map_or(0, |x| x + 1);
        for l in 0..=used.min(m - 1) {
            labels.push(l);
            go(k + 1, zeros, m, labels, out);
            labels.pop();
        }
    }
    if m > 0 {
        go(0, zeros, m, &mut labels, &mut out);
    }
    out
}

/// Variable layout of a pattern system.
#[derive(Debug, Clone)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
    pub j0: usize,
}

impl Layout {
    pub fn nvars(&self) -> usize {
        self.m * (self.n - 1) + 2
    }

    pub fn lambda(&self) -> usize {
        self.m * (self.n - 1)
    }

    /// Variable holding coordinate `i` of factor `k`, or `None` for `j0`.
    pub fn var(&self, k: usize, i: usize) -> Option<usize> {
        use std::cmp::Ordering::*;
        match i.cmp(&self.j0) {
            Less => Some(k * (self.n - 1) + i),
            Equal => None,
            Greater => Some(k * (self.n - 1) + i - 1),
        }
    }

    fn coord(&self, k: usize, i: usize) -> Polynomial {
        match self.var(k, i) {
            Some(v) => Polynomial::var(self.nvars(), v),
            None => Polynomial::one(self.nvars()),
        }
    }

    /// Factors read off an affine solution.
    pub fn factors(&self, sol: &[Scalar]) -> Result<Vec<ProjPoint>> {
        (0..self.m)
            .map(|k| {
                let coords = (0..self.n)
                    .map(|i| match self.var(k, i) {
                        Some(v) => sol[v].clone(),
                        None => Scalar::one(),
                    })
                    .collect();
                ProjPoint::new(coords)
            })
            .collect()
    }
}

fn rational_point(p: &ProjPoint) -> Result<Vec<Rat>> {
    p.as_rats()
        .ok_or_else(|| Error::Invalid("rank computations need a rational point".into()))
}

/// The polynomial system whose solutions are the decompositions of `p`
/// into `m` factors with the given forced zeros.
pub fn pattern_system(p: &ProjPoint, ix: &Ideal, pattern: &ZeroPattern) -> Result<(Ideal, Layout)> {
    let n = ix.nvars();
    if p.len() != n {
        return Err(Error::RingMismatch { expected: n, found: p.len() });
    }
    let pr = rational_point(p)?;
    let m = pattern.factors();
    let layout = Layout { n, m, j0: p.first_nonzero() };
    let nv = layout.nvars();
    let mut gens = Vec::new();
    for k in 0..m {
        let images: Vec<Polynomial> = (0..n).map(|i| layout.coord(k, i)).collect();
        for g in ix.gens() {
            gens.push(g.compose(&images));
        }
        for &i in &pattern.forced[k] {
            gens.push(layout.coord(k, i));
        }
    }
    let lambda = Polynomial::var(nv, layout.lambda());
    for (i, pi) in pr.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        let prod = (0..m).fold(Polynomial::one(nv), |acc, k| acc * layout.coord(k, i));
        gens.push(prod - lambda.scale(pi));
    }
    let u = Polynomial::var(nv, layout.lambda() + 1);
    gens.push(&lambda * &u - Polynomial::one(nv));
    Ok((Ideal::new(nv, gens)?, layout))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternStatus {
    /// The system is the unit ideal.
    Infeasible,
    Feasible,
    /// Budget exhausted.
    Unresolved(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternResult {
    pub pattern: ZeroPattern,
    pub status: PatternStatus,
    pub steps: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Existence {
    Exists,
    Infeasible,
    Unknown,
}

/// Per-pattern outcome of the existence test for one `m`.
#[derive(Debug, Clone)]
pub struct ExistenceReport {
    pub m: usize,
    pub existence: Existence,
    pub patterns: Vec<PatternResult>,
    /// System and basis of the first feasible pattern.
    pub feasible: Option<(ZeroPattern, GroebnerBasis)>,
}

impl ExistenceReport {
    pub fn steps(&self) -> u64 {
        self.patterns.iter().map(|r| r.steps).sum()
    }

    pub fn infeasible_patterns(&self) -> Vec<ZeroPattern> {
        self.patterns
            .iter()
            .filter(|r| r.status == PatternStatus::Infeasible)
            .map(|r| r.pattern.clone())
            .collect()
    }
}

/// Decides exactly whether `p` is a product of `m` points of `V(I_X)`.
/// Patterns are examined in order and the search stops at the first
/// feasible one.
pub fn decomposition_exists(p: &ProjPoint, ix: &Ideal, m: usize, opts: &GbOptions) -> Result<ExistenceReport> {
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    rational_point(p)?;
    let mut results = Vec::new();
    let mut feasible = None;
    for pattern in zero_patterns(&p.zero_set(), m) {
        let (sys, _) = pattern_system(p, ix, &pattern)?;
        match reduced_basis(&sys, opts) {
            Ok(gb) => {
                let steps = gb.steps();
                if gb.is_unit() {
                    results.push(PatternResult { pattern, status: PatternStatus::Infeasible, steps });
                } else {
                    results.push(PatternResult { pattern: pattern.clone(), status: PatternStatus::Feasible, steps });
                    feasible = Some((pattern, gb));
                    break;
                }
            }
            Err(Error::Budget { limit, context }) => results.push(PatternResult {
                pattern,
                status: PatternStatus::Unresolved(context),
                steps: limit,
            }),
            Err(e) => return Err(e),
        }
    }
    let existence = if feasible.is_some() {
        Existence::Exists
    } else if results.iter().all(|r| r.status == PatternStatus::Infeasible) {
        Existence::Infeasible
    } else {
        Existence::Unknown
    };
    Ok(ExistenceReport { m, existence, patterns: results, feasible })
}

/// Every factor lies on `V(I_X)` and the product equals `p` projectively.
pub fn verify_decomposition(p: &ProjPoint, ix: &Ideal, factors: &[ProjPoint]) -> Result<bool> {
    for q in factors {
        if q.len() != ix.nvars() {
            return Ok(false);
        }
        for g in ix.gens() {
            if !evaluate(g, q)?.is_zero() {
                return Ok(false);
            }
        }
    }
    match hadamard_product_all(factors) {
        Ok(prod) => Ok(prod.proj_eq(p)),
        Err(Error::AllZeroProduct) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Ordering key for witnesses: rational before algebraic, then smaller
/// total height, then lexicographic.
type WitnessKey = (bool, BigInt, Vec<Vec<BigInt>>);

fn witness_key(factors: &[ProjPoint]) -> WitnessKey {
    let mut total = BigInt::from(0);
    let mut lex = Vec::new();
    for f in factors {
        match f.height_key() {
            Some((h, v)) => {
                total += h;
                lex.push(v);
            }
            None => return (true, BigInt::from(0), vec![]),
        }
    }
    (false, total, lex)
}

fn sort_factors(mut factors: Vec<ProjPoint>) -> Vec<ProjPoint> {
    factors.sort_by(|a, b| a.height_key().cmp(&b.height_key()));
    factors
}

fn best_of(sols: Vec<Solution>, layout: &Layout, p: &ProjPoint, ix: &Ideal) -> Result<Option<Vec<ProjPoint>>> {
    let mut best: Option<(WitnessKey, Vec<ProjPoint>)> = None;
    for s in sols {
        let factors = sort_factors(layout.factors(&s.coords)?);
        if !verify_decomposition(p, ix, &factors)? {
            continue;
        }
        let key = witness_key(&factors);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, factors));
        }
    }
    Ok(best.map(|b| b.1))
}

/// All independent sets of the given size for the leading monomials,
/// in lexicographic order, at most `cap` of them.
fn independent_sets(gb: &GroebnerBasis, size: usize, cap: usize) -> Vec<Vec<usize>> {
    let n = gb.nvars();
    let masks: Vec<u64> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(i: usize, n: usize, size: usize, masks: &[u64], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        if i == n || cur.len() + (n - i) < size {
            return;
        }
        let set = cur.iter().fold(0u64, |a, &v| a | 1 << v) | 1 << i;
        if masks.iter().all(|&m| m & !set != 0) {
            cur.push(i);
            go(i + 1, n, size, masks, cur, out, cap);
            cur.pop();
        }
        go(i + 1, n, size, masks, cur, out, cap);
    }
    go(0, n, size, &masks, &mut cur, &mut out, cap);
    out
}

/// Tuning for witness extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessOptions {
    pub retries: usize,
    /// Random slice values are integers in `[-height, height]`.
    pub height: i64,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { retries: 24, height: 10 }
    }
}

/// Factors of a decomposition of `p` with `m` points of `V(I_X)`, taken
/// from the first feasible pattern. Positive-dimensional solution sets are
/// cut down by fixing an independent set of variables to random integers.
pub fn decomposition_witness<R: Rng>(
    p: &ProjPoint,
    ix: &Ideal,
    report: &ExistenceReport,
    rng: &mut R,
    wopts: &WitnessOptions,
    opts: &GbOptions,
) -> Result<Vec<ProjPoint>> {
    let Some((pattern, gb)) = &report.feasible else {
        return Err(Error::Invalid("no feasible zero pattern".into()));
    };
    let (sys, layout) = pattern_system(p, ix, pattern)?;
    let nv = layout.nvars();
    let leads = gb.leading_monomials();
    let dim = max_independent_set(leads, nv).len();
    if dim == 0 {
        let sols = solve_affine(&sys, opts)?;
        return best_of(sols, &layout, p, ix)?.ok_or(Error::WitnessNotFound { retries: 0 });
    }
    // rational search: independent sets first, then any other subsets of
    // factor coordinates; slices that leave a curve are skipped
    let mut sets = independent_sets(gb, dim, 64);
    let lead_sets = sets.len();
    for s in (0..layout.lambda()).combinations(dim) {
        if sets.len() >= 128 {
            break;
        }
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let attempts = wopts.retries.max(1).max(sets.len());
    let draw_slices = |set: &[usize], rng: &mut R| -> Result<Ideal> {
        let slices: Vec<Polynomial> = set
            .iter()
            .map(|&v| {
                let r: i64 = rng.random_range(-wopts.height..=wopts.height);
                Polynomial::var(nv, v) - Polynomial::constant(nv, Rat::from_integer(r.into()))
            })
            .collect();
        sys.with(slices)
    };
    for attempt in 0..attempts {
        let sliced = draw_slices(&sets[attempt % sets.len()], rng)?;
        let sols = match solve_affine_rational(&sliced, opts) {
            Ok(s) => s,
            Err(Error::NotZeroDimensional) => continue,
            Err(e) => return Err(e),
        };
        if let Some(best) = best_of(sols, &layout, p, ix)? {
            return Ok(best);
        }
    }
    let mut fallback = None;
    for attempt in 0..wopts.retries.max(1) {
        let sliced = draw_slices(&sets[attempt % lead_sets.max(1)], rng)?;
        let sols = match solve_affine(&sliced, opts) {
            Ok(s) => s,
            Err(Error::NotZeroDimensional) => continue,
            Err(e) => return Err(e),
        };
        if let Some(best) = best_of(sols, &layout, p, ix)? {
            fallback = Some(best);
            break;
        }
    }
    fallback.ok_or(Error::WitnessNotFound { retries: wopts.retries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn opts() -> GbOptions {
        GbOptions { budget: 1_000_000, cache_dir: None }
    }

    fn c() -> Ideal {
        Ideal::parse(3, &["x0*(x1+x2) + (x1-x2)^2"]).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    #[test]
    fn pattern_enumeration() {
        assert_eq!(zero_patterns(&[], 3).len(), 1);
        assert_eq!(zero_patterns(&[0], 3).len(), 1);
        // set partitions of 3 elements into at most 2 blocks
        assert_eq!(zero_patterns(&[0, 1, 2], 2).len(), 4);
        assert_eq!(zero_patterns(&[0, 1, 2], 3).len(), 5);
    }

    #[test]
    fn c_rank_two_fails_for_antipodal_point() {
        let r = decomposition_exists(&pt("0:1:-1"), &c(), 2, &opts()).unwrap();
        assert_eq!(r.existence, Existence::Infeasible);
        let r = decomposition_exists(&pt("0:1:-1"), &c(), 3, &opts()).unwrap();
        assert_eq!(r.existence, Existence::Exists);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = decomposition_witness(&pt("0:1:-1"), &c(), &r, &mut rng, &WitnessOptions::default(), &opts()).unwrap();
        assert_eq!(w.len(), 3);
        assert!(verify_decomposition(&pt("0:1:-1"), &c(), &w).unwrap());
        assert!(w.iter().all(ProjPoint::is_rational));
    }

    #[test]
    fn c_pair_for_zero_first_coordinate() {
        let p = pt("0:2:3");
        let r = decomposition_exists(&p, &c(), 2, &opts()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = decomposition_witness(&p, &c(), &r, &mut rng, &WitnessOptions::default(), &opts()).unwrap();
        assert_eq!(w, vec![pt("0:1:1"), pt("-1:10:15")]);
    }

    #[test]
    fn verification_rejects_bad_factors() {
        assert!(verify_decomposition(&pt("0:1:-1"), &c(), &[pt("0:1:1"), pt("-1:6:3"), pt("9:1:-2")]).unwrap());
        assert!(!verify_decomposition(&pt("0:1:-1"), &c(), &[pt("0:1:1"), pt("1:1:1")]).unwrap());
    }
}
