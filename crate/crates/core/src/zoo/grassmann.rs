//! Grassmannians in their Plücker embedding.

use super::implicitize;
use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{Ideal, Matrix, Polynomial, ProjPoint};
use crate::groebner::GbOptions;
use crate::numdim::Parametrization;
use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;

const MATRIX_RETRIES: usize = 100;

/// Column index sets of size `k` in lexicographic order.
pub fn plucker_indices(k: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

fn check(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Invalid(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn det_poly(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let nv = m[0][0].nvars();
    (0..m.len()).fold(Polynomial::zero(nv), |acc, j| {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &det_poly(&minor);
        if j % 2 == 0 { acc + t } else { acc - t }
    })
}

fn minors_param(entries: Vec<Vec<Polynomial>>, k: usize, n: usize, nparams: usize) -> Result<Parametrization> {
    let coords = plucker_indices(k, n)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<Polynomial>> = entries.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            det_poly(&sub)
        })
        .collect();
    Parametrization::new(nparams, coords)
}

/// Maximal minors of a generic `k x n` matrix, entry `(r, c)` being
/// parameter `t(r n + c)`.
pub fn grassmannian_param(k: usize, n: usize) -> Result<Parametrization> {
    check(k, n)?;
    let nv = k * n;
    let entries = (0..k).map(|r| (0..n).map(|c| Polynomial::var(nv, r * n + c)).collect()).collect();
    minors_param(entries, k, n, nv)
}

/// Maximal minors of `[I | A]` with `A` generic: the open chart where the
/// first coordinate is nonzero.
pub fn grassmannian_chart(k: usize, n: usize) -> Result<Parametrization> {
    check(k, n)?;
    let nv = k * (n - k);
    let entries = (0..k)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if c < k {
                        if c == r { Polynomial::one(nv) } else { Polynomial::zero(nv) }
                    } else {
                        Polynomial::var(nv, r * (n - k) + c - k)
                    }
                })
                .collect()
        })
        .collect();
    minors_param(entries, k, n, nv)
}

/// Ideal of `G(k, n)` by eliminating the chart parameters.
pub fn grassmannian_ideal(k: usize, n: usize, opts: &GbOptions) -> Result<Ideal> {
    check(k, n)?;
    if k == 1 || k == n - 1 {
        return Ok(Ideal::zero(n));
    }
    implicitize(&grassmannian_chart(k, n)?, opts)
}

/// A `k x n` matrix whose first maximal minor is its only zero one.
#[derive(Debug, Clone, PartialEq)]
pub struct OneZeroMinor {
    pub matrix: Matrix,
    pub plucker: ProjPoint,
}

pub fn maximal_minors(m: &Matrix) -> Vec<Rat> {
    let k = m.rows();
    plucker_indices(k, m.cols())
        .iter()
        .map(|cols| Matrix::from_rows((0..k).map(|r| cols.iter().map(|&c| m[(r, c)].clone()).collect()).collect()).determinant())
        .collect()
}

/// Columns `v_1..v_k` lie in the hyperplane `x_(k-1) = 0`; each later
/// column avoids the spans of every `k - 1` earlier columns.
pub fn one_zero_minor_matrix<R: Rng>(k: usize, n: usize, rng: &mut R, height: i64) -> Result<OneZeroMinor> {
    check(k, n)?;
    let draw = |rng: &mut R| Rat::from_integer(rng.random_range(-height..=height).into());
    for _ in 0..MATRIX_RETRIES {
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut placed = false;
            for _ in 0..MATRIX_RETRIES {
                let mut v: Vec<Rat> = (0..k).map(|_| draw(rng)).collect();
                if j < k {
                    v[k - 1] = Rat::zero();
                }
                cols.push(v);
                let good = if j < k {
                    // any k - 1 of the first columns stay independent
                    (0..=j).combinations(j.min(k - 1)).all(|s| rank_of(&cols, &s) == s.len())
                } else {
                    (0..j).combinations(k - 1).all(|mut s| {
                        s.push(j);
                        rank_of(&cols, &s) == k
                    })
                };
                if good {
                    placed = true;
                    break;
                }
                cols.pop();
            }
            if !placed {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let matrix = Matrix::from_rows((0..k).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
        let minors = maximal_minors(&matrix);
        if minors[0].is_zero() && minors[1..].iter().all(|m| !m.is_zero()) {
            return Ok(OneZeroMinor { plucker: ProjPoint::from_rats(minors)?, matrix });
        }
    }
    Err(Error::RetryCap(MATRIX_RETRIES))
}

fn rank_of(cols: &[Vec<Rat>], idx: &[usize]) -> usize {
    if idx.is_empty() {
        return 0;
    }
    Matrix::from_rows(idx.iter().map(|&i| cols[i].clone()).collect()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;
    use crate::groebner::ideals_equal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plucker_quadric() {
        let o = GbOptions::default();
        let g = grassmannian_ideal(2, 4, &o).unwrap();
        let expected = Ideal::parse(6, &["x0*x5 - x1*x4 + x2*x3"]).unwrap();
        assert!(ideals_equal(&g, &expected, &o).unwrap());
        assert!(grassmannian_ideal(1, 4, &o).unwrap().is_zero());
    }

    #[test]
    fn minors_of_explicit_matrices() {
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(maximal_minors(&m), vec![rat(0), rat(1), rat(2)]);
        let m = Matrix::from_rows(vec![vec![rat(1), rat(2), rat(0), rat(1)], vec![rat(0), rat(0), rat(1), rat(1)]]);
        assert_eq!(maximal_minors(&m), vec![rat(0), rat(1), rat(1), rat(2), rat(2), rat(-1)]);
    }

    #[test]
    fn one_zero_minor_constructions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=5 {
            for k in 1..n.min(3) {
                let w = one_zero_minor_matrix(k, n, &mut rng, 10).unwrap();
                assert_eq!(w.plucker.zero_set(), vec![0]);
            }
        }
    }
}
