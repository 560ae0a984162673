//! Dimensions of Hadamard powers of parametrized varieties from exact
//! Jacobian ranks at random integer parameters.

use crate::error::{Error, Result};
use crate::exactalg::ideal::{at_line, content_lines, parse_header};
use crate::exactalg::rat::Rat;
use crate::exactalg::{parse_polynomial, Matrix, Monomial, Polynomial, ProjPoint, Ring, UniPoly};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Default bound on the absolute value of random parameters.
pub const DEFAULT_HEIGHT: i64 = 100;
pub const DEFAULT_TRIALS: usize = 3;
const SAMPLE_RETRIES: usize = 64;

/// `N + 1` coordinate maps in `k` parameters `t0..t(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parametrization {
    params: usize,
    coords: Vec<Polynomial>,
}

impl Parametrization {
    pub fn new(params: usize, coords: Vec<Polynomial>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Invalid("a parametrization needs at least two coordinates".into()));
        }
        if coords.iter().all(Polynomial::is_zero) {
            return Err(Error::Invalid("every coordinate map is zero".into()));
        }
        for c in &coords {
            if c.nvars() != params {
                return Err(Error::RingMismatch { expected: params, found: c.nvars() });
            }
        }
        Ok(Parametrization { params, coords })
    }

    pub fn parse(params: usize, coords: &[&str]) -> Result<Self> {
        let ring = Ring::params(params);
        let polys = coords.iter().map(|c| parse_polynomial(c, &ring)).collect::<Result<_>>()?;
        Self::new(params, polys)
    }

    pub fn param_count(&self) -> usize {
        self.params
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    /// Number of coordinates, `N + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every map is homogeneous of one common degree.
    pub fn is_homogeneous(&self) -> bool {
        let degs: Vec<_> = self.coords.iter().filter(|c| !c.is_zero()).map(|c| c.total_degree()).collect();
        self.coords.iter().all(Polynomial::is_homogeneous) && degs.iter().all_equal()
    }

    pub fn eval(&self, t: &[Rat]) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    /// `params k` followed by one coordinate map per line.
    pub fn to_file_string(&self, comments: &[String]) -> String {
        let ring = Ring::params(self.params);
        let mut s: String = comments.iter().map(|c| format!("# {c}\n")).collect();
        s.push_str(&format!("params {}\n", self.params));
        for c in &self.coords {
            s.push_str(&ring.format(c));
            s.push('\n');
        }
        s
    }

    pub fn from_file_string(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::Syntax { pos: 0, msg: "missing 'params k' header".into() })?;
        let k = parse_header(header, "params", lineno)?;
        let ring = Ring::params(k);
        let coords = lines
            .map(|(lineno, l)| parse_polynomial(l, &ring).map_err(|e| at_line(e, lineno)))
            .collect::<Result<_>>()?;
        Self::new(k, coords)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_file_string(&std::fs::read_to_string(path)?)
    }
}

/// `m` independent parameter blocks multiplied coordinate-wise, times a
/// global scale `t(m*k)`.
pub fn power_param(p: &Parametrization, m: usize) -> Result<Parametrization> {
    if m == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let k = p.params;
    let nv = m * k + 1;
    let lambda = Polynomial::var(nv, m * k);
    let blocks: Vec<Vec<Polynomial>> = (0..m)
        .map(|b| (0..k).map(|j| Polynomial::var(nv, b * k + j)).collect())
        .collect();
    let coords = p
        .coords
        .iter()
        .map(|f| blocks.iter().fold(lambda.clone(), |acc, imgs| acc * f.compose(imgs)))
        .collect();
    Parametrization::new(nv, coords)
}

/// Coordinate-wise sum of `r` independent copies.
pub fn secant_param(p: &Parametrization, r: usize) -> Result<Parametrization> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    let k = p.params;
    let nv = r * k;
    let coords = p
        .coords
        .iter()
        .map(|f| {
            (0..r).fold(Polynomial::zero(nv), |acc, b| {
                let imgs: Vec<_> = (0..k).map(|j| Polynomial::var(nv, b * k + j)).collect();
                acc + f.compose(&imgs)
            })
        })
        .collect();
    Parametrization::new(nv, coords)
}

fn random_params<R: Rng>(k: usize, height: i64, rng: &mut R) -> Vec<Rat> {
    (0..k).map(|_| Rat::from_integer(rng.random_range(-height..=height).into())).collect()
}

/// Exact rank of the Jacobian of the cone map `(t, s) -> s * P(t)` at `t`,
/// `None` when `P(t) = 0`.
pub fn cone_jacobian_rank(p: &Parametrization, t: &[Rat]) -> Option<usize> {
    let values = p.eval(t);
    if values.iter().all(|v| v == &Rat::from_integer(0.into())) {
        return None;
    }
    let rows = p
        .coords
        .iter()
        .zip(values)
        .map(|(f, v)| {
            let mut row: Vec<Rat> = (0..p.params).map(|j| f.derivative(j).eval(t)).collect();
            row.push(v);
            row
        })
        .collect();
    Some(Matrix::from_rows(rows).rank())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub m: usize,
    pub dimension: usize,
    pub trials: usize,
    pub seed: u64,
    pub method: String,
}

/// Dimension of the closure of the image: the largest cone Jacobian rank
/// over `trials` random points, minus one.
pub fn jacobian_dimension<R: Rng>(p: &Parametrization, rng: &mut R, trials: usize, height: i64) -> Result<usize> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    (0..trials)
        .filter_map(|_| cone_jacobian_rank(p, &random_params(p.params, height, rng)))
        .max()
        .map(|r| r - 1)
        .ok_or(Error::AllSamplesDegenerate(trials))
}

/// Dimension of the `m`-th Hadamard power with a fresh seeded generator.
pub fn power_dimension(p: &Parametrization, m: usize, seed: u64, trials: usize, height: i64) -> Result<DimReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dimension = jacobian_dimension(&power_param(p, m)?, &mut rng, trials, height)?;
    Ok(DimReport { m, dimension, trials, seed, method: "exact-Jacobian-at-rational-point".into() })
}

/// Least `m <= max_m` whose power fills `P^N`.
pub fn generic_rank_estimate(
    p: &Parametrization,
    max_m: usize,
    seed: u64,
    trials: usize,
    height: i64,
) -> Result<Option<usize>> {
    let n = p.len() - 1;
    for m in 1..=max_m {
        if power_dimension(p, m, seed, trials, height)?.dimension == n {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Point of the image at random integer parameters.
pub fn sample_point<R: Rng>(p: &Parametrization, rng: &mut R, height: i64) -> Result<ProjPoint> {
    for _ in 0..SAMPLE_RETRIES {
        let v = p.eval(&random_params(p.params, height, rng));
        if let Ok(pt) = ProjPoint::from_rats(v) {
            return Ok(pt);
        }
    }
    Err(Error::RetryCap(SAMPLE_RETRIES))
}

/// Binary form in `(s, t)` as its coefficient list: entry `a` is the
/// coefficient of `s^(d-a) t^a`.
fn binary_form(f: &Polynomial, d: u32) -> Vec<Rat> {
    (0..=d)
        .map(|a| f.coeff(&Monomial::from_exponents(&[d - a, a])))
        .collect()
}

fn curve_forms(p: &Parametrization) -> Result<(u32, Vec<Vec<Rat>>)> {
    if p.params != 2 {
        return Err(Error::NotACurveParam(format!("{} parameters, expected (s:t)", p.params)));
    }
    if !p.is_homogeneous() {
        return Err(Error::NotACurveParam("coordinate maps are not homogeneous of one degree".into()));
    }
    let d = p.coords.iter().find_map(|c| c.total_degree()).unwrap_or(0) as u32;
    if d == 0 {
        return Err(Error::NotACurveParam("constant map".into()));
    }
    Ok((d, p.coords.iter().map(|c| binary_form(c, d)).collect()))
}

/// Sylvester resultant of two binary forms of degree `d` (coefficient
/// lists as produced for curves). Zero iff they share a root on `P^1`.
pub fn binary_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let d = f.len() - 1;
    let e = g.len() - 1;
    let size = d + e;
    if size == 0 {
        return Rat::from_integer(1.into());
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..e {
        let mut r = vec![Rat::from_integer(0.into()); size];
        r[shift..shift + d + 1].clone_from_slice(f);
        rows.push(r);
    }
    for shift in 0..d {
        let mut r = vec![Rat::from_integer(0.into()); size];
        r[shift..shift + e + 1].clone_from_slice(g);
        rows.push(r);
    }
    Matrix::from_rows(rows).determinant()
}

/// Pairwise resultants of the coordinate forms of a curve.
pub fn pairwise_resultants(p: &Parametrization) -> Result<Vec<((usize, usize), Rat)>> {
    let (_, forms) = curve_forms(p)?;
    Ok((0..forms.len())
        .tuple_combinations()
        .map(|(i, j)| ((i, j), binary_resultant(&forms[i], &forms[j])))
        .collect())
}

/// Forms sharing a root on `P^1`.
fn common_root(forms: &[&Vec<Rat>]) -> bool {
    // root at (1:0): every coefficient of s^d vanishes
    if forms.iter().all(|f| f[0] == Rat::from_integer(0.into())) {
        return true;
    }
    // affine roots: dehomogenize at t = 1, variable s
    let g = forms.iter().fold(UniPoly::zero(), |acc, f| {
        let u = UniPoly::new(f.iter().rev().cloned().collect());
        acc.gcd(&u)
    });
    g.is_zero() || g.deg() > 0
}

/// The curve misses `Delta_k`: no parameter makes `N - k` coordinates
/// vanish at once. For `k = N - 2` this is nonvanishing of all pairwise
/// resultants.
pub fn check_avoids_delta(p: &Parametrization, k: usize) -> Result<bool> {
    let (_, forms) = curve_forms(p)?;
    let n = forms.len() - 1;
    if k >= n {
        return Ok(false);
    }
    let size = n - k;
    if size == 2 {
        return Ok(pairwise_resultants(p)?.iter().all(|(_, r)| r != &Rat::from_integer(0.into())));
    }
    Ok(!forms.iter().combinations(size).any(|s| common_root(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_param() -> Parametrization {
        Parametrization::parse(2, &["-(t0-t1)^2", "t0*(t0+t1)", "t1*(t0+t1)"]).unwrap()
    }

    #[test]
    fn power_param_shape() {
        let p = c_param();
        let p2 = power_param(&p, 2).unwrap();
        assert_eq!(p2.param_count(), 5);
        let r = power_dimension(&p, 1, 7, 3, DEFAULT_HEIGHT).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(power_dimension(&p, 2, 7, 3, DEFAULT_HEIGHT).unwrap().dimension, 2);
        assert_eq!(generic_rank_estimate(&p, 4, 7, 3, DEFAULT_HEIGHT).unwrap(), Some(2));
    }

    #[test]
    fn delta_checks() {
        let mono = Parametrization::parse(2, &["t0^3", "t0^2*t1", "t0*t1^2", "t1^3"]).unwrap();
        assert!(!check_avoids_delta(&mono, 1).unwrap());
        assert!(!check_avoids_delta(&c_param(), 0).unwrap());
        let good = Parametrization::parse(2, &["t0^2 + t1^2", "t0^2 + 2*t1^2", "t0^2 - 3*t0*t1 + 5*t1^2"]).unwrap();
        assert!(check_avoids_delta(&good, 0).unwrap());
        let affine = Parametrization::parse(2, &["t0", "t0*t1", "1"]).unwrap();
        assert!(matches!(check_avoids_delta(&affine, 0), Err(Error::NotACurveParam(_))));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let r = |a: &[i64], b: &[i64]| {
            let f: Vec<Rat> = a.iter().map(|&x| Rat::from_integer(x.into())).collect();
            let g: Vec<Rat> = b.iter().map(|&x| Rat::from_integer(x.into())).collect();
            binary_resultant(&f, &g)
        };
        // s^2 - t^2 and s^2 - 4t^2 share no root
        assert_ne!(r(&[1, 0, -1], &[1, 0, -4]), Rat::from_integer(0.into()));
        // s^2 - t^2 and s t - t^2 share (1:1)
        assert_eq!(r(&[1, 0, -1], &[0, 1, -1]), Rat::from_integer(0.into()));
    }

    #[test]
    fn param_file_round_trip() {
        let p = c_param();
        let text = p.to_file_string(&["conic".into()]);
        assert!(text.contains("params 2"));
        assert_eq!(Parametrization::from_file_string(&text).unwrap(), p);
    }
}
