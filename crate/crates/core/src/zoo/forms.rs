//! Coefficient maps of products of linear and general forms.

use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{Polynomial, ProjPoint};
use crate::numdim::Parametrization;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

const WITNESS_RETRIES: usize = 200;

/// Exponent vectors of degree `d` in `n + 1` variables, descending lex.
pub fn exponent_vectors(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|a| {
            exponent_vectors(d - a, n - 1).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `k! / (b_0! ... b_n!)` with `k = sum b_i`.
pub fn multinomial(b: &[u32]) -> BigInt {
    let k: u32 = b.iter().sum();
    b.iter().fold(factorial(k), |acc, &x| acc / factorial(x))
}

/// Coefficient of `x^alpha` in `L^(d-1) M` with `L = a.x`, `M = b.x`,
/// for every `alpha` of degree `d` in descending lex order.
pub fn tangential_coefficients(d: u32, a: &[Rat], b: &[Rat]) -> Result<Vec<Rat>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Invalid("a and b must have the same positive length".into()));
    }
    if d == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    let n = a.len() - 1;
    Ok(exponent_vectors(d, n).iter().map(|alpha| tangential_vector(alpha, a).iter().zip(b).map(|(v, bk)| v * bk).sum()).collect())
}

/// The vector `v_{alpha,a}`: entry `k` is the coefficient contributed by
/// `b_k`.
pub fn tangential_vector(alpha: &[u32], a: &[Rat]) -> Vec<Rat> {
    (0..alpha.len())
        .map(|k| {
            if alpha[k] == 0 {
                return Rat::zero();
            }
            let mut beta = alpha.to_vec();
            beta[k] -= 1;
            let mono = beta.iter().zip(a).fold(Rat::one(), |acc, (&e, ai)| acc * num_traits::pow(ai.clone(), e as usize));
            Rat::from_integer(multinomial(&beta)) * mono
        })
        .collect()
}

/// Coefficients of `f` in the last `nx` variables, as polynomials in the
/// first `nparams`, one per exponent vector of degree `d`.
pub fn coefficients_in_x(f: &Polynomial, nparams: usize, nx: usize, d: u32) -> Vec<Polynomial> {
    let mut by_x: BTreeMap<Vec<u32>, Vec<(crate::exactalg::Monomial, Rat)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        by_x.entry(e[nparams..nparams + nx].to_vec())
            .or_default()
            .push((crate::exactalg::Monomial::from_exponents(&e[..nparams]), c.clone()));
    }
    exponent_vectors(d, nx - 1)
        .into_iter()
        .map(|alpha| Polynomial::from_terms(nparams, by_x.remove(&alpha).unwrap_or_default()))
        .collect()
}

/// Generic form of degree `e` in `n + 1` variables whose coefficients are
/// the parameters `offset..`, inside a ring of `nvars` variables with the
/// `x` variables starting at `xoff`.
fn generic_form(e: u32, n: usize, offset: usize, xoff: usize, nvars: usize) -> (Polynomial, usize) {
    let mons = exponent_vectors(e, n);
    let count = mons.len();
    let f = mons.iter().enumerate().fold(Polynomial::zero(nvars), |acc, (j, beta)| {
        let mut exps = vec![0u32; nvars];
        exps[offset + j] = 1;
        exps[xoff..xoff + n + 1].copy_from_slice(beta);
        acc + Polynomial::term(crate::exactalg::Monomial::from_exponents(&exps), Rat::one())
    });
    (f, count)
}

/// Coefficient map of `F_1 ... F_k` with `F_i` generic of degree `degs[i]`.
pub fn reducible_param(degs: &[u32], n: usize) -> Result<Parametrization> {
    if degs.is_empty() || degs.contains(&0) {
        return Err(Error::Invalid("degrees must be positive".into()));
    }
    let sizes: Vec<usize> = degs.iter().map(|&e| exponent_vectors(e, n).len()).collect();
    let nparams: usize = sizes.iter().sum();
    let nvars = nparams + n + 1;
    let mut offset = 0;
    let mut prod = Polynomial::one(nvars);
    for &e in degs {
        let (f, count) = generic_form(e, n, offset, nparams, nvars);
        prod = prod * f;
        offset += count;
    }
    let d = degs.iter().sum();
    Parametrization::new(nparams, coefficients_in_x(&prod, nparams, n + 1, d))
}

/// Products of `d` linear forms.
pub fn chow_param(d: u32, n: usize) -> Result<Parametrization> {
    reducible_param(&vec![1; d as usize], n)
}

/// `L^(d-1) M`: parameters `a_0..a_n` then `b_0..b_n`.
pub fn tangential_param(d: u32, n: usize) -> Result<Parametrization> {
    if d == 0 {
        return Err(Error::Invalid("degree must be at least 1".into()));
    }
    let k = 2 * (n + 1);
    let nvars = k + n + 1;
    let (l, _) = generic_form(1, n, 0, k, nvars);
    let (m, _) = generic_form(1, n, n + 1, k, nvars);
    Parametrization::new(k, coefficients_in_x(&(l.pow(d - 1) * m), k, n + 1, d))
}

/// `(a, b)` with exactly the coefficient at `alpha` of `L^(d-1) M` zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentialWitness {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub point: ProjPoint,
}

pub fn tangential_witness<R: Rng>(alpha: &[u32], rng: &mut R, height: i64) -> Result<TangentialWitness> {
    let d: u32 = alpha.iter().sum();
    if alpha.is_empty() || d == 0 {
        return Err(Error::Invalid("alpha must have positive degree".into()));
    }
    let draw = |rng: &mut R| Rat::from_integer(rng.random_range(-height..=height).into());
    for _ in 0..WITNESS_RETRIES {
        let a: Vec<Rat> = alpha.iter().map(|_| draw(rng)).collect();
        let v = tangential_vector(alpha, &a);
        let Some(k) = v.iter().position(|x| !x.is_zero()) else { continue };
        let mut b: Vec<Rat> = alpha.iter().map(|_| draw(rng)).collect();
        let rest: Rat = (0..b.len()).filter(|&j| j != k).map(|j| &v[j] * &b[j]).sum();
        b[k] = -rest / &v[k];
        let coeffs = tangential_coefficients(d, &a, &b)?;
        let pos = exponent_vectors(d, alpha.len() - 1).iter().position(|x| x == alpha).expect("alpha listed");
        if coeffs.iter().enumerate().all(|(j, c)| c.is_zero() == (j == pos)) {
            return Ok(TangentialWitness { a, b, point: ProjPoint::from_rats(coeffs)? });
        }
    }
    Err(Error::RetryCap(WITNESS_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rs(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn exponent_order() {
        assert_eq!(exponent_vectors(2, 1), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponent_vectors(2, 2).len(), 6);
        assert_eq!(exponent_vectors(2, 2)[1], vec![1, 1, 0]);
    }

    #[test]
    fn tangential_small_cases() {
        assert_eq!(tangential_coefficients(2, &rs(&[1, 1]), &rs(&[1, -1])).unwrap(), rs(&[1, 0, -1]));
        assert_eq!(tangential_coefficients(2, &rs(&[1, 1]), &rs(&[0, 1])).unwrap(), rs(&[0, 1, 1]));
        assert_eq!(tangential_coefficients(3, &rs(&[1, 0]), &rs(&[5, 7])).unwrap(), rs(&[5, 7, 0, 0]));
    }

    #[test]
    fn witnesses_have_one_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..=4u32 {
            for n in 1..=2usize {
                for alpha in exponent_vectors(d, n) {
                    let w = tangential_witness(&alpha, &mut rng, 10).unwrap();
                    assert_eq!(w.point.zero_count(), 1);
                }
            }
        }
    }

    #[test]
    fn chow_matches_tangential_for_binary_quadrics() {
        let c = chow_param(2, 1).unwrap();
        assert_eq!(c.param_count(), 4);
        let t = [rat(2), rat(-3), rat(5), rat(7)];
        // (2x0 - 3x1)(5x0 + 7x1) = L M with L = a.x, M = b.x
        let direct = tangential_coefficients(2, &t[..2], &t[2..]).unwrap();
        assert_eq!(c.eval(&t), direct);
    }
}
