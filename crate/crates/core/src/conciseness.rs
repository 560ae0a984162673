//! Conciseness, strong conciseness, binomial containment and the generic
//! rank finiteness verdict.

use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{Ideal, Monomial, Polynomial, ProjPoint};
use crate::groebner::{projective_dimension, radical_membership, reduced_basis, GbOptions, MonomialOrder};
use crate::rankengine::solve_projective;
use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Cap on the number of monomials examined in one degree.
pub const MAX_MONOMIALS_PER_DEGREE: usize = 50_000;

/// Default number of slicing attempts for witness points.
pub const WITNESS_RETRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcisenessReport {
    pub concise: Vec<bool>,
    pub strongly_concise: Vec<bool>,
    pub all_concise: bool,
    pub all_strongly_concise: bool,
    /// Coordinates where strong conciseness fails.
    pub failing: Vec<usize>,
}

/// `X` is not contained in `H_i`, for each `i`.
pub fn is_concise(ideal: &Ideal, opts: &GbOptions) -> Result<Vec<bool>> {
    let n = ideal.nvars();
    (0..n)
        .map(|i| Ok(!radical_membership(&Polynomial::var(n, i), ideal, opts)?))
        .collect()
}

/// `X` meets `H_i` outside the other coordinate hyperplanes (and is not
/// inside `H_i` itself).
pub fn strongly_concise_at(ideal: &Ideal, i: usize, opts: &GbOptions) -> Result<bool> {
    let n = ideal.nvars();
    if radical_membership(&Polynomial::var(n, i), ideal, opts)? {
        return Ok(false);
    }
    Ok(!section_in_other_hyperplanes(ideal, i, opts)?)
}

/// `X n H_i` lies in the union of the other coordinate hyperplanes.
pub fn section_in_other_hyperplanes(ideal: &Ideal, i: usize, opts: &GbOptions) -> Result<bool> {
    let n = ideal.nvars();
    if i >= n {
        return Err(Error::VariableOutOfRange { index: i, nvars: n });
    }
    let others = (0..n)
        .filter(|&j| j != i)
        .fold(Polynomial::one(n), |acc, j| acc * Polynomial::var(n, j));
    let section = ideal.with([Polynomial::var(n, i)])?;
    radical_membership(&others, &section, opts)
}

pub fn is_strongly_concise(ideal: &Ideal, opts: &GbOptions) -> Result<ConcisenessReport> {
    let concise = is_concise(ideal, opts)?;
    let n = ideal.nvars();
    let mut strongly = Vec::with_capacity(n);
    for i in 0..n {
        strongly.push(concise[i] && strongly_concise_at(ideal, i, opts)?);
    }
    let failing = (0..n).filter(|&i| !strongly[i]).collect();
    Ok(ConcisenessReport {
        all_concise: concise.iter().all(|&b| b),
        all_strongly_concise: strongly.iter().all(|&b| b),
        concise,
        strongly_concise: strongly,
        failing,
    })
}

/// `2 * (largest generator degree)`, at least 1.
pub fn default_degree_bound(ideal: &Ideal) -> u32 {
    (2 * ideal.max_degree()).max(1) as u32
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    (0..n)
        .combinations_with_replacement(d as usize)
        .map(|c| {
            let mut e = vec![0u32; n];
            for i in c {
                e[i] += 1;
            }
            Monomial::from_exponents(&e)
        })
        .collect()
}

fn binom(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// A binomial `a x^alpha + b x^beta` (or a monomial) in the ideal, of
/// degree at most `max_degree`.
pub fn binomial_search(ideal: &Ideal, max_degree: u32, opts: &GbOptions) -> Result<Option<Polynomial>> {
    if max_degree == 0 {
        return Err(Error::Invalid("degree bound must be at least 1".into()));
    }
    let n = ideal.nvars();
    let gb = reduced_basis(ideal, opts)?;
    let order = MonomialOrder::GrevLex;
    for d in 1..=max_degree {
        let count = binom(n + d as usize - 1, d as usize).unwrap_or(usize::MAX);
        if count > MAX_MONOMIALS_PER_DEGREE {
            return Err(Error::Budget {
                limit: MAX_MONOMIALS_PER_DEGREE as u64,
                context: format!("{count} monomials of degree {d}"),
            });
        }
        let mut seen: BTreeMap<String, (Monomial, Rat)> = BTreeMap::new();
        let mut monos = monomials_of_degree(n, d);
        monos.sort_by(|a, b| order.cmp(b, a));
        for m in monos {
            let nf = gb.normal_form(&Polynomial::term(m.clone(), Rat::from_integer(1.into())))?;
            if nf.is_zero() {
                return Ok(Some(Polynomial::term(m, Rat::from_integer(1.into()))));
            }
            let (_, lc) = nf.leading_term(&order).unwrap();
            let lc = lc.clone();
            let key = nf.scale(&lc.recip()).to_string();
            if let Some((other, lc_other)) = seen.get(&key) {
                // NF(m) = lc N and NF(other) = lc_other N
                let f = Polynomial::term(other.clone(), lc.clone()) - Polynomial::term(m, lc_other.clone());
                return Ok(Some(f.monic(&order)));
            }
            seen.insert(key, (m, lc));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FiniteReason {
    StronglyConcise,
    NoBinomialUpTo(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InfiniteReason {
    NotConcise(usize),
    /// The binomial, printed in `x0..xN`.
    BinomialFound(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FinitenessVerdict {
    GenericFinite(FiniteReason),
    GenericInfinite(InfiniteReason),
    Unknown { degree_bound: u32 },
}

/// Decides whether the generic Hadamard rank is finite, assuming `I` prime.
/// A negative binomial search is conclusive only with `accept_bound`.
pub fn generic_rank_finiteness(
    ideal: &Ideal,
    max_degree: u32,
    accept_bound: bool,
    opts: &GbOptions,
) -> Result<FinitenessVerdict> {
    let concise = is_concise(ideal, opts)?;
    if let Some(i) = concise.iter().position(|&c| !c) {
        return Ok(FinitenessVerdict::GenericInfinite(InfiniteReason::NotConcise(i)));
    }
    if let Some(b) = binomial_search(ideal, max_degree, opts)? {
        return Ok(FinitenessVerdict::GenericInfinite(InfiniteReason::BinomialFound(b.to_string())));
    }
    if is_strongly_concise(ideal, opts)?.all_strongly_concise {
        return Ok(FinitenessVerdict::GenericFinite(FiniteReason::StronglyConcise));
    }
    if accept_bound {
        return Ok(FinitenessVerdict::GenericFinite(FiniteReason::NoBinomialUpTo(max_degree)));
    }
    Ok(FinitenessVerdict::Unknown { degree_bound: max_degree })
}

/// Random linear form with integer coefficients in `[-height, height]`.
pub(crate) fn random_linear_form<R: Rng>(n: usize, height: i64, rng: &mut R) -> Polynomial {
    loop {
        let f = (0..n).fold(Polynomial::zero(n), |acc, i| {
            let c: i64 = rng.random_range(-height..=height);
            acc + Polynomial::var(n, i).scale(&Rat::from_integer(c.into()))
        });
        if !f.is_zero() {
            return f;
        }
    }
}

/// Points of `V(I)` with `x_i = 0` and every other coordinate nonzero,
/// found on random linear sections of `V(I) n H_i`; rational points with
/// small height are preferred.
pub fn strong_conciseness_witness<R: Rng>(
    ideal: &Ideal,
    i: usize,
    rng: &mut R,
    opts: &GbOptions,
) -> Result<ProjPoint> {
    strong_conciseness_witness_with(ideal, i, rng, WITNESS_RETRIES, 10, opts)
}

pub fn strong_conciseness_witness_with<R: Rng>(
    ideal: &Ideal,
    i: usize,
    rng: &mut R,
    retries: usize,
    height: i64,
    opts: &GbOptions,
) -> Result<ProjPoint> {
    let n = ideal.nvars();
    if i >= n {
        return Err(Error::VariableOutOfRange { index: i, nvars: n });
    }
    if !strongly_concise_at(ideal, i, opts)? {
        return Err(Error::WitnessNotFound { retries: 0 });
    }
    let section = ideal.with([Polynomial::var(n, i)])?;
    let dim = projective_dimension(&section, opts)?;
    let mut fallback: Option<ProjPoint> = None;
    let attempts = if dim == 0 { 1 } else { retries.max(1) };
    for _ in 0..attempts {
        let slices: Vec<Polynomial> = (0..dim).map(|_| random_linear_form(n, height, rng)).collect();
        let sliced = section.with(slices)?;
        let sols = match solve_projective(&sliced, opts) {
            Ok(s) => s,
            Err(Error::NotZeroDimensional) => continue,
            Err(e) => return Err(e),
        };
        let mut good: Vec<ProjPoint> = sols
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| p.zero_set() == vec![i])
            .collect();
        good.sort_by(|a, b| a.height_key().cmp(&b.height_key()));
        if let Some(p) = good.iter().find(|p| p.is_rational()) {
            return Ok(p.clone());
        }
        if fallback.is_none() {
            fallback = good.into_iter().next();
        }
    }
    fallback.ok_or(Error::WitnessNotFound { retries: attempts })
}
