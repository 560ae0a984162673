//! Constructors for the varieties, witnesses and formulas used throughout,
//! with checkable facts attached.

pub mod forms;
pub mod grassmann;

pub use forms::{
    chow_param, exponent_vectors, multinomial, reducible_param, tangential_coefficients, tangential_param,
    tangential_vector, tangential_witness, TangentialWitness,
};
pub use grassmann::{
    grassmannian_chart, grassmannian_ideal, grassmannian_param, maximal_minors, one_zero_minor_matrix,
    plucker_indices, OneZeroMinor,
};

use crate::conciseness::{binomial_search, is_strongly_concise};
use crate::error::{Error, Result};
use crate::exactalg::rat::{rat, Rat};
use crate::exactalg::{evaluate, Ideal, Polynomial, ProjPoint};
use crate::groebner::{eliminate, projective_dimension, GbOptions};
use crate::numdim::{
    check_avoids_delta, generic_rank_estimate, pairwise_resultants, power_dimension, Parametrization,
    DEFAULT_HEIGHT, DEFAULT_TRIALS,
};
use crate::rankengine::{border_rank, hadamard_rank, RankOptions, Verdict};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const CURVE_RETRIES: usize = 100;

/// Where an expected fact comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    /// Stated in the literature.
    Literature,
    /// Immediate from the definitions.
    Elementary,
    /// Checked by an independent computation.
    Computed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fact {
    Dimension(usize),
    StronglyConcise(Vec<bool>),
    GenericRank(usize),
    /// `None` means infinite rank.
    Rank { point: ProjPoint, rank: Option<usize> },
    BorderRank { point: ProjPoint, rank: usize },
    ContainsPoint(ProjPoint),
    AvoidsCoordinatePoints,
    ContainsBinomial { max_degree: u32 },
}

impl std::fmt::Display for Fact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fact::Dimension(d) => write!(f, "dimension {d}"),
            Fact::StronglyConcise(v) => write!(f, "strongly concise per coordinate {v:?}"),
            Fact::GenericRank(r) => write!(f, "generic rank {r}"),
            Fact::Rank { point, rank: Some(r) } => write!(f, "rank of {point} is {r}"),
            Fact::Rank { point, rank: None } => write!(f, "rank of {point} is infinite"),
            Fact::BorderRank { point, rank } => write!(f, "border rank of {point} is {rank}"),
            Fact::ContainsPoint(p) => write!(f, "contains {p}"),
            Fact::AvoidsCoordinatePoints => write!(f, "contains no coordinate point"),
            Fact::ContainsBinomial { max_degree } => write!(f, "contains a binomial of degree <= {max_degree}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedFact {
    pub fact: Fact,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZooEntry {
    pub name: String,
    pub ideal: Option<Ideal>,
    pub param: Option<Parametrization>,
    pub facts: Vec<ExpectedFact>,
}

fn fact(fact: Fact, source: Source) -> ExpectedFact {
    ExpectedFact { fact, source }
}

fn pt(s: &str) -> ProjPoint {
    ProjPoint::parse(s).expect("valid literal point")
}

/// Ideal of the closure of the image: eliminate the parameters and a
/// scale from `z_i - s * f_i(t)`.
pub fn implicitize(p: &Parametrization, opts: &GbOptions) -> Result<Ideal> {
    let k = p.param_count();
    let n = p.len();
    let nv = k + 1 + n;
    let imgs: Vec<Polynomial> = (0..k).map(|j| Polynomial::var(nv, j)).collect();
    let s = Polynomial::var(nv, k);
    let gens = p
        .coords()
        .iter()
        .enumerate()
        .map(|(i, f)| Polynomial::var(nv, k + 1 + i) - &s * &f.compose(&imgs))
        .collect();
    let drop: Vec<usize> = (0..=k).collect();
    eliminate(&Ideal::new(nv, gens)?, &drop, opts)
}

/// Rational parametrization of a plane conic through the rational point
/// `p0`, by lines through `p0`.
pub fn conic_param_through(f: &Polynomial, p0: &[Rat]) -> Result<Parametrization> {
    if f.nvars() != 3 || p0.len() != 3 || !f.eval(p0).is_zero() {
        return Err(Error::Invalid("need a plane conic and a point on it".into()));
    }
    let j = p0.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
    let mut free = (0..3).filter(|&i| i != j);
    let (a, b) = (free.next().unwrap(), free.next().unwrap());
    let mut dir = vec![Polynomial::zero(2); 3];
    dir[a] = Polynomial::var(2, 0);
    dir[b] = Polynomial::var(2, 1);
    let fd = f.compose(&dir);
    let grad = (0..3).fold(Polynomial::zero(2), |acc, i| acc + dir[i].scale(&f.derivative(i).eval(p0)));
    let coords = (0..3).map(|i| fd.scale(&p0[i]) - &grad * &dir[i]).collect();
    Parametrization::new(2, coords)
}

pub const Q_EQUATION: &str = "x0*x1 + x0*x2 + x1*x2";
pub const C_EQUATION: &str = "x0*(x1+x2) + (x1-x2)^2";
pub const C_SHARP_EQUATION: &str = "-3*x0^2 - 2*x1^2 + 4*x2^2 + 5*x0*x1 - 11*x0*x2 + 2*x1*x2";

pub fn conic_q() -> ZooEntry {
    ZooEntry {
        name: "conic-q".into(),
        ideal: Some(Ideal::parse(3, &[Q_EQUATION]).unwrap()),
        param: Some(Parametrization::parse(2, &["-t0*t1", "t0*(t0+t1)", "t1*(t0+t1)"]).unwrap()),
        facts: vec![
            fact(Fact::StronglyConcise(vec![false; 3]), Source::Literature),
            fact(Fact::GenericRank(2), Source::Literature),
            fact(Fact::Rank { point: pt("2:3:0"), rank: None }, Source::Literature),
            fact(Fact::Dimension(1), Source::Elementary),
        ],
    }
}

pub fn conic_c() -> ZooEntry {
    ZooEntry {
        name: "conic-c".into(),
        ideal: Some(Ideal::parse(3, &[C_EQUATION]).unwrap()),
        param: Some(Parametrization::parse(2, &["-(t0-t1)^2", "t0*(t0+t1)", "t1*(t0+t1)"]).unwrap()),
        facts: vec![
            fact(Fact::StronglyConcise(vec![true; 3]), Source::Literature),
            fact(Fact::GenericRank(2), Source::Literature),
            fact(Fact::Rank { point: pt("0:1:1"), rank: Some(1) }, Source::Literature),
            fact(Fact::Rank { point: pt("0:2:3"), rank: Some(2) }, Source::Literature),
            fact(Fact::Rank { point: pt("0:1:-1"), rank: Some(3) }, Source::Literature),
            fact(Fact::BorderRank { point: pt("0:1:-1"), rank: 2 }, Source::Literature),
            fact(Fact::ContainsPoint(pt("1:0:0")), Source::Literature),
        ],
    }
}

/// A smooth conic through `(1:1:0)`, `(1:0:3)`, `(0:2:1)` that contains
/// no coordinate point.
pub fn conic_c_sharp() -> ZooEntry {
    let ideal = Ideal::parse(3, &[C_SHARP_EQUATION]).unwrap();
    let param = conic_param_through(&ideal.gens()[0], &[rat(1), rat(1), rat(0)]).unwrap();
    ZooEntry {
        name: "conic-c-sharp".into(),
        ideal: Some(ideal),
        param: Some(param),
        facts: vec![
            fact(Fact::AvoidsCoordinatePoints, Source::Computed),
            fact(Fact::ContainsPoint(pt("1:1:0")), Source::Computed),
            fact(Fact::ContainsPoint(pt("1:0:3")), Source::Computed),
            fact(Fact::ContainsPoint(pt("0:2:1")), Source::Computed),
            fact(Fact::Rank { point: pt("1:0:0"), rank: Some(2) }, Source::Computed),
            fact(Fact::StronglyConcise(vec![true; 3]), Source::Computed),
        ],
    }
}

fn binomial_poly(d: u32, n: usize, c: &Rat) -> Result<Polynomial> {
    if d == 0 || n < 2 {
        return Err(Error::Invalid("need d >= 1 and N >= 2".into()));
    }
    if c.is_zero() {
        return Err(Error::Invalid("c must be nonzero".into()));
    }
    let nv = n + 1;
    Ok(Polynomial::var(nv, 1).pow(d) - (Polynomial::var(nv, 0).pow(d - 1) * Polynomial::var(nv, n)).scale(c))
}

/// The hypersurface `x1^d = c x0^(d-1) xN` in `P^N`.
pub fn binomial_hypersurface(d: u32, n: usize, c: &Rat) -> Result<ZooEntry> {
    let ideal = Ideal::new(n + 1, vec![binomial_poly(d, n, c)?])?;
    // xN solved and all coordinates multiplied by c t0^(d-1)
    let scale = Polynomial::var(n, 0).pow(d - 1).scale(c);
    let mut coords: Vec<Polynomial> = (0..n).map(|i| &Polynomial::var(n, i) * &scale).collect();
    coords.push(Polynomial::var(n, 1).pow(d));
    let mut facts = vec![
        fact(Fact::Dimension(n - 1), Source::Elementary),
        fact(Fact::ContainsBinomial { max_degree: d }, Source::Elementary),
    ];
    if d == 2 && n == 2 && c == &rat(2) {
        for m in 1..=3usize {
            let p = ProjPoint::from_rats(vec![rat(1), rat(1), Rat::new(1.into(), (1i64 << m).into())])?;
            facts.push(fact(Fact::Rank { point: p.clone(), rank: Some(m) }, Source::Literature));
            facts.push(fact(Fact::BorderRank { point: p, rank: m }, Source::Literature));
        }
    }
    Ok(ZooEntry {
        name: format!("binomial-{d}-{n}-{c}"),
        ideal: Some(ideal),
        param: Some(Parametrization::new(n, coords)?),
        facts,
    })
}

/// `x1^d = c^m x0^(d-1) xN`, the closure of the `m`-th power.
pub fn closed_power(d: u32, n: usize, c: &Rat, m: usize) -> Result<Ideal> {
    if m == 0 {
        return Err(Error::Invalid("closed powers start at m = 1".into()));
    }
    Ideal::new(n + 1, vec![binomial_poly(d, n, &num_traits::pow(c.clone(), m))?])
}

pub fn grassmannian(k: usize, n: usize) -> Result<ZooEntry> {
    let param = grassmannian_param(k, n)?;
    let ideal = if k == 1 || k == n - 1 || (k, n) == (2, 4) {
        Some(grassmannian_ideal(k, n, &GbOptions::default())?)
    } else {
        None
    };
    Ok(ZooEntry {
        name: format!("grassmannian-{k}-{n}"),
        ideal,
        param: Some(param),
        facts: vec![fact(Fact::Dimension(k * (n - k)), Source::Elementary)],
    })
}

pub fn tangential(d: u32, n: usize) -> Result<ZooEntry> {
    let mut facts = vec![];
    if n == 1 {
        // binary forms: L^(d-1) M sweeps out a surface, all of P^2 when d = 2
        facts.push(fact(Fact::Dimension(2.min(d as usize)), Source::Elementary));
    }
    Ok(ZooEntry { name: format!("tangential-{d}-{n}"), ideal: None, param: Some(tangential_param(d, n)?), facts })
}

/// A random curve of the given degree in `P^N` missing `Delta_(N-2)`, with
/// its nonzero pairwise resultants.
pub fn random_curve<R: Rng>(n: usize, degree: u32, rng: &mut R, height: i64) -> Result<(ZooEntry, Vec<((usize, usize), Rat)>)> {
    if n < 2 || (degree as usize) < n {
        return Err(Error::Invalid("need N >= 2 and degree >= N".into()));
    }
    for _ in 0..CURVE_RETRIES {
        let coords = (0..=n)
            .map(|_| {
                (0..=degree).fold(Polynomial::zero(2), |acc, a| {
                    let c = Rat::from_integer(rng.random_range(-height..=height).into());
                    acc + Polynomial::term(
                        crate::exactalg::Monomial::from_exponents(&[degree - a, a]),
                        c,
                    )
                })
            })
            .collect::<Vec<_>>();
        if coords.iter().any(|c| c.is_zero()) {
            continue;
        }
        let p = Parametrization::new(2, coords)?;
        if p.is_homogeneous() && check_avoids_delta(&p, n - 2)? {
            let res = pairwise_resultants(&p)?;
            let entry = ZooEntry {
                name: format!("random-curve-{n}-{degree}"),
                ideal: None,
                param: Some(p),
                facts: vec![fact(Fact::Dimension(1), Source::Elementary), fact(Fact::GenericRank(n), Source::Literature)],
            };
            return Ok((entry, res));
        }
    }
    Err(Error::RetryCap(CURVE_RETRIES))
}

/// Names accepted by [`zoo_entry`].
pub fn zoo_names() -> Vec<&'static str> {
    vec![
        "conic-q",
        "conic-c",
        "conic-c-sharp",
        "binomial-2-2-2",
        "grassmannian-2-4",
        "tangential-2-1",
        "tangential-3-1",
        "chow-2-2",
        "reducible-1-2-2",
        "random-curve-3-3",
    ]
}

pub fn zoo_entry(name: &str) -> Result<ZooEntry> {
    let param_only = |name: &str, p: Parametrization, facts| ZooEntry { name: name.into(), ideal: None, param: Some(p), facts };
    match name {
        "conic-q" => Ok(conic_q()),
        "conic-c" => Ok(conic_c()),
        "conic-c-sharp" => Ok(conic_c_sharp()),
        "binomial-2-2-2" => binomial_hypersurface(2, 2, &rat(2)),
        "grassmannian-2-4" => grassmannian(2, 4),
        "tangential-2-1" => tangential(2, 1),
        "tangential-3-1" => tangential(3, 1),
        "chow-2-2" => Ok(param_only(name, chow_param(2, 2)?, vec![fact(Fact::Dimension(4), Source::Elementary)])),
        "reducible-1-2-2" => Ok(param_only(name, reducible_param(&[1, 2], 2)?, vec![fact(Fact::Dimension(7), Source::Elementary)])),
        "random-curve-3-3" => {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            Ok(random_curve(3, 3, &mut rng, 100)?.0)
        }
        _ => Err(Error::Invalid(format!("unknown zoo entry `{name}`"))),
    }
}

impl ZooEntry {
    /// File name and contents for the ideal and the parametrization.
    pub fn emit(&self) -> Vec<(String, String)> {
        let mut out = vec![];
        if let Some(i) = &self.ideal {
            out.push((format!("{}.ideal", self.name), i.to_file_string(&[self.name.clone()])));
        }
        if let Some(p) = &self.param {
            out.push((format!("{}.param", self.name), p.to_file_string(&[self.name.clone()])));
        }
        out
    }

    /// Re-derives every expected fact; one `(fact, holds)` per entry.
    pub fn verify(&self, opts: &GbOptions) -> Result<Vec<(ExpectedFact, bool)>> {
        self.facts.iter().map(|f| Ok((f.clone(), self.check(&f.fact, opts)?))).collect()
    }

    fn check(&self, f: &Fact, opts: &GbOptions) -> Result<bool> {
        let rank_opts = |max_m| RankOptions { max_m, gb: opts.clone(), ..RankOptions::default() };
        let need_ideal = || self.ideal.as_ref().ok_or_else(|| Error::Invalid(format!("{} has no ideal", self.name)));
        Ok(match f {
            Fact::Dimension(d) => match (&self.ideal, &self.param) {
                (Some(i), _) => projective_dimension(i, opts)? == *d,
                (None, Some(p)) => power_dimension(p, 1, 0, DEFAULT_TRIALS, DEFAULT_HEIGHT)?.dimension == *d,
                _ => false,
            },
            Fact::StronglyConcise(v) => is_strongly_concise(need_ideal()?, opts)?.strongly_concise == *v,
            Fact::GenericRank(r) => match &self.param {
                Some(p) => generic_rank_estimate(p, *r + 1, 0, DEFAULT_TRIALS, DEFAULT_HEIGHT)? == Some(*r),
                None => false,
            },
            Fact::Rank { point, rank: Some(r) } => {
                hadamard_rank(point, need_ideal()?, &rank_opts(*r))?.verdict == Verdict::RankEquals(*r)
            }
            Fact::Rank { point, rank: None } => matches!(
                hadamard_rank(point, need_ideal()?, &rank_opts(1))?.verdict,
                Verdict::ProvablyInfinite { .. }
            ),
            Fact::BorderRank { point, rank } => {
                border_rank(point, need_ideal()?, &rank_opts(*rank))?.verdict == Verdict::BorderRank(*rank)
            }
            Fact::ContainsPoint(p) => on_variety(need_ideal()?, p)?,
            Fact::AvoidsCoordinatePoints => {
                let i = need_ideal()?;
                let n = i.nvars();
                let mut avoids = true;
                for j in 0..n {
                    let e = ProjPoint::from_rats((0..n).map(|k| if k == j { Rat::one() } else { Rat::zero() }).collect())?;
                    avoids &= !on_variety(i, &e)?;
                }
                avoids
            }
            Fact::ContainsBinomial { max_degree } => binomial_search(need_ideal()?, *max_degree, opts)?.is_some(),
        })
    }
}

fn on_variety(i: &Ideal, p: &ProjPoint) -> Result<bool> {
    for g in i.gens() {
        if !evaluate(g, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideals_equal;
    use crate::hadamard::variety_product;
    use crate::numdim::sample_point;

    #[test]
    fn c_sharp_construction() {
        let e = conic_c_sharp();
        let f = &e.ideal.as_ref().unwrap().gens()[0];
        let vals: Vec<Rat> = (0..3)
            .map(|j| f.eval(&(0..3).map(|k| if k == j { rat(1) } else { rat(0) }).collect::<Vec<_>>()))
            .collect();
        assert_eq!(vals, vec![rat(-3), rat(-2), rat(4)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..5 {
            let p = sample_point(e.param.as_ref().unwrap(), &mut rng, 20).unwrap();
            assert!(on_variety(e.ideal.as_ref().unwrap(), &p).unwrap());
        }
    }

    #[test]
    fn every_entry_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for name in zoo_names() {
            let e = zoo_entry(name).unwrap();
            assert!(e.ideal.is_some() || e.param.is_some());
            if let (Some(i), Some(p)) = (&e.ideal, &e.param) {
                for _ in 0..3 {
                    let s = sample_point(p, &mut rng, 20).unwrap();
                    assert!(on_variety(i, &s).unwrap(), "{name}: {s}");
                }
            }
        }
    }

    #[test]
    fn closed_powers_agree_with_products() {
        let o = GbOptions::default();
        let x = closed_power(2, 2, &rat(2), 1).unwrap();
        let prod = variety_product(&x, &x, &o).unwrap();
        assert!(ideals_equal(&prod, &closed_power(2, 2, &rat(2), 2).unwrap(), &o).unwrap());
        assert!(closed_power(2, 2, &rat(2), 0).is_err());
        assert!(binomial_hypersurface(2, 2, &rat(0)).is_err());
    }

    #[test]
    fn registry_facts_hold() {
        let o = GbOptions::default();
        for e in zoo_names().into_iter().map(|n| zoo_entry(n).unwrap()) {
            for (f, ok) in e.verify(&o).unwrap() {
                assert!(ok, "{}: {}", e.name, f.fact);
            }
        }
    }
}
