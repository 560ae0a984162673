//! Exact solutions of zero-dimensional systems.
//!
//! Works in the finite-dimensional algebra `R/I`: multiplication matrices
//! give characteristic polynomials, the radical is obtained by adjoining
//! squarefree parts, and a separating linear form puts the radical in
//! shape form `x_i = h_i(l)`. Roots of the factors of the characteristic
//! polynomial of `l` are then rational or live in a single number field.

use crate::error::{Error, Result};
use crate::exactalg::factor::factor;
use crate::exactalg::rat::Rat;
use crate::exactalg::roots::isolate_roots;
use crate::exactalg::{AlgNum, Ideal, Matrix, Monomial, NumberField, Polynomial, ProjPoint, Scalar, UniPoly};
use crate::groebner::{reduced_basis, GbOptions, GroebnerBasis};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

/// Cap on the dimension of `R/I`.
pub const MAX_QUOTIENT_DIM: usize = 4096;

/// An affine solution with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub coords: Vec<Scalar>,
    pub multiplicity: usize,
}

impl Solution {
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_rat().is_some())
    }
}

/// `R/I` with its standard monomial basis.
struct Quotient {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Quotient {
    fn new(gb: GroebnerBasis) -> Result<Self> {
        let n = gb.nvars();
        let leads = gb.leading_monomials().to_vec();
        for i in 0..n {
            let pure = leads.iter().any(|m| {
                m.exponents().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0))
            });
            if !pure {
                return Err(Error::NotZeroDimensional);
            }
        }
        let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
        let mut basis = Vec::new();
        let mut index = BTreeMap::new();
        let mut queue = VecDeque::from([Monomial::one(n)]);
        index.insert(Monomial::one(n), 0);
        basis.push(Monomial::one(n));
        while let Some(m) = queue.pop_front() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i));
                if standard(&next) && !index.contains_key(&next) {
                    if basis.len() >= MAX_QUOTIENT_DIM {
                        return Err(Error::Budget {
                            limit: MAX_QUOTIENT_DIM as u64,
                            context: "quotient algebra dimension".into(),
                        });
                    }
                    index.insert(next.clone(), basis.len());
                    basis.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(Quotient { gb, basis, index })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, f: &Polynomial) -> Result<Vec<Rat>> {
        let r = self.gb.normal_form(f)?;
        let mut v = vec![Rat::zero(); self.dim()];
        for (m, c) in r.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// Matrix of multiplication by `f`; column `j` is `f * b_j`.
    fn mult_matrix(&self, f: &Polynomial) -> Result<Matrix> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coords(&f.mul_monomial(b, &Rat::one()))?;
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }
}

fn uni_in_var(u: &UniPoly, nvars: usize, i: usize) -> Polynomial {
    let x = Polynomial::var(nvars, i);
    let mut acc = Polynomial::zero(nvars);
    for c in u.coeffs().iter().rev() {
        acc = &acc * &x + Polynomial::constant(nvars, c.clone());
    }
    acc
}

fn linear_form(nvars: usize, cs: &[i64]) -> Polynomial {
    let mut f = Polynomial::zero(nvars);
    for (i, &c) in cs.iter().enumerate() {
        f = f + Polynomial::var(nvars, i).scale(&Rat::from_integer(c.into()));
    }
    f
}

/// Candidate linear forms: each variable, then `sum k^i x_i`.
fn candidate_forms(n: usize) -> impl Iterator<Item = Vec<i64>> {
    let singles = (0..n).map(move |i| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>());
    let sheared = (1..40i64).map(move |k| (0..n).map(|j| k.pow(j as u32 % 8) * if j % 2 == 1 { -1 } else { 1 }).collect());
    singles.chain(sheared)
}

/// All complex solutions of a zero-dimensional affine system.
pub fn solve_affine(ideal: &Ideal, opts: &GbOptions) -> Result<Vec<Solution>> {
    solve_affine_with(ideal, opts, false)
}

/// Only the rational solutions; irrational ones are never isolated.
pub fn solve_affine_rational(ideal: &Ideal, opts: &GbOptions) -> Result<Vec<Solution>> {
    solve_affine_with(ideal, opts, true)
}

fn solve_affine_with(ideal: &Ideal, opts: &GbOptions, rational_only: bool) -> Result<Vec<Solution>> {
    let n = ideal.nvars();
    if n == 0 {
        let consistent = ideal.gens().iter().all(Polynomial::is_zero);
        return Ok(if consistent { vec![Solution { coords: vec![], multiplicity: 1 }] } else { vec![] });
    }
    let gb = reduced_basis(ideal, opts)?;
    if gb.is_unit() {
        return Ok(vec![]);
    }
    let q = Quotient::new(gb)?;
    // radical: adjoin squarefree parts of the characteristic polynomials
    let mut extra = Vec::new();
    for i in 0..n {
        let chi = q.mult_matrix(&Polynomial::var(n, i))?.charpoly();
        let sf = chi.squarefree_part();
        if sf.deg() < chi.deg() {
            extra.push(uni_in_var(&sf, n, i));
        }
    }
    let rad = if extra.is_empty() {
        Quotient::new(q.gb.clone())?
    } else {
        Quotient::new(reduced_basis(&ideal.with(extra)?, opts)?)?
    };
    let d = rad.dim();
    for cs in candidate_forms(n) {
        let l = linear_form(n, &cs);
        let ml = rad.mult_matrix(&l)?;
        let chi = ml.charpoly();
        if chi.gcd(&chi.derivative()).deg() > 0 {
            continue;
        }
        // shape form: powers of l span R/sqrt(I)
        let mut v = Matrix::zeros(d, d);
        let mut cur = vec![Rat::zero(); d];
        cur[0] = Rat::one();
        for k in 0..d {
            for i in 0..d {
                v[(i, k)] = cur[i].clone();
            }
            let mut next = vec![Rat::zero(); d];
            for i in 0..d {
                for j in 0..d {
                    if !cur[j].is_zero() && !ml[(i, j)].is_zero() {
                        next[i] += &ml[(i, j)] * &cur[j];
                    }
                }
            }
            cur = next;
        }
        let mut shapes = Vec::with_capacity(n);
        for i in 0..n {
            let w = rad.coords(&Polynomial::var(n, i))?;
            let h = v.solve(&w).expect("separating form spans the quotient");
            shapes.push(UniPoly::new(h));
        }
        let full = q.mult_matrix(&l)?.charpoly();
        return Ok(assemble(&full, &shapes, rational_only));
    }
    Err(Error::Invalid("no separating linear form found".into()))
}

fn assemble(chi: &UniPoly, shapes: &[UniPoly], rational_only: bool) -> Vec<Solution> {
    let mut rational = Vec::new();
    let mut algebraic = Vec::new();
    for (phi, mult) in factor(chi) {
        if phi.deg() == 1 {
            let r = -phi.coeff(0) / phi.coeff(1);
            let coords = shapes.iter().map(|h| Scalar::Rat(h.eval(&r))).collect();
            rational.push(Solution { coords, multiplicity: mult });
            continue;
        }
        if rational_only {
            continue;
        }
        for bx in isolate_roots(&phi) {
            let field = Arc::new(NumberField::new(phi.clone(), bx));
            let coords = shapes
                .iter()
                .map(|h| Scalar::Alg(AlgNum::new(field.clone(), h.clone())).normalize())
                .collect();
            algebraic.push(Solution { coords, multiplicity: mult });
        }
    }
    rational.sort_by(|a, b| {
        let ka: Vec<&Rat> = a.coords.iter().filter_map(Scalar::as_rat).collect();
        let kb: Vec<&Rat> = b.coords.iter().filter_map(Scalar::as_rat).collect();
        ka.cmp(&kb)
    });
    rational.extend(algebraic);
    rational
}

/// Solutions of a homogeneous system with finitely many projective zeros,
/// found chart by chart: `x_j = 1` and `x_0 = ... = x_(j-1) = 0`.
pub fn solve_projective(ideal: &Ideal, opts: &GbOptions) -> Result<Vec<(ProjPoint, usize)>> {
    let n = ideal.nvars();
    let mut out = Vec::new();
    for j in 0..n {
        let k = n - j - 1;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| match i.cmp(&j) {
                std::cmp::Ordering::Less => Polynomial::zero(k),
                std::cmp::Ordering::Equal => Polynomial::one(k),
                std::cmp::Ordering::Greater => Polynomial::var(k, i - j - 1),
            })
            .collect();
        let gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.compose(&images)).collect();
        if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            continue;
        }
        let chart = Ideal::new(k, gens)?;
        for s in solve_affine(&chart, opts)? {
            let mut coords = vec![Scalar::zero(); j];
            coords.push(Scalar::one());
            coords.extend(s.coords);
            out.push((ProjPoint::new(coords)?, s.multiplicity));
        }
    }
    Ok(out)
}

/// Solutions of a zero-dimensional affine system (alias of [`solve_affine`]).
pub fn solve_zero_dimensional(ideal: &Ideal, opts: &GbOptions) -> Result<Vec<Solution>> {
    solve_affine(ideal, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    fn opts() -> GbOptions {
        GbOptions { budget: 1_000_000, cache_dir: None }
    }

    #[test]
    fn split_quadratic() {
        let i = Ideal::parse(2, &["x0^2 - 2", "x1 - x0"]).unwrap();
        let sols = solve_affine(&i, &opts()).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            let Scalar::Alg(a) = &s.coords[0] else { panic!("expected irrational") };
            assert_eq!(a.field().minpoly(), &UniPoly::from_ints(&[-2, 0, 1]));
            assert_eq!(s.coords[0], s.coords[1]);
            let sq = s.coords[0].mul(&s.coords[0]).unwrap();
            assert_eq!(sq, Scalar::Rat(rat(2)));
        }
        let (a, _) = sols[0].coords[0].to_f64();
        let (b, _) = sols[1].coords[0].to_f64();
        assert!((a + b).abs() < 1e-9 && (a.abs() - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn complex_pair() {
        let i = Ideal::parse(2, &["x0^2 + 1", "x1 - 1"]).unwrap();
        let sols = solve_affine(&i, &opts()).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            assert_eq!(s.coords[1], Scalar::Rat(rat(1)));
            let (re, im) = s.coords[0].to_f64();
            assert!(re.abs() < 1e-9 && (im.abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn tangency_has_multiplicity_two() {
        let i = Ideal::parse(3, &["x0*(x1+x2) + (x1-x2)^2", "x0"]).unwrap();
        let sols = solve_projective(&i, &opts()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].0, ProjPoint::parse("0:1:1").unwrap());
        assert_eq!(sols[0].1, 2);
    }

    #[test]
    fn rejects_curves() {
        let i = Ideal::parse(2, &["x0*x1 - 1"]).unwrap();
        assert_eq!(solve_affine(&i, &opts()).unwrap_err(), Error::NotZeroDimensional);
    }

    #[test]
    fn mixed_rational_and_irrational() {
        let i = Ideal::parse(2, &["(x0 - 1)*(x0^2 - 3)", "x1 - x0^2"]).unwrap();
        let sols = solve_affine(&i, &opts()).unwrap();
        assert_eq!(sols.len(), 3);
        assert!(sols[0].is_rational());
        assert_eq!(sols[0].coords, vec![Scalar::Rat(rat(1)), Scalar::Rat(rat(1))]);
        assert_eq!(sols[1].coords[1], Scalar::Rat(rat(3)));
    }
}
