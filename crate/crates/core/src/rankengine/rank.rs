//! Rank and border rank verdicts, and the zero-coordinate reduction.

use super::decompose::{
    decomposition_exists, decomposition_witness, verify_decomposition, Existence, WitnessOptions, ZeroPattern,
};
use crate::conciseness::{section_in_other_hyperplanes, strong_conciseness_witness, strongly_concise_at};
use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{hadamard_product_all, Ideal, ProjPoint, Scalar};
use crate::groebner::GbOptions;
use crate::hadamard::{power_membership, PowerCache};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum Verdict {
    RankEquals(usize),
    RankAtMost(usize),
    RankGreaterThan(usize),
    BorderRank(usize),
    BorderRankGreaterThan(usize),
    /// `p_i = 0`, every other coordinate is nonzero, and `X n H_i` lies in
    /// the other coordinate hyperplanes: no product of points of `X` can
    /// equal `p`.
    ProvablyInfinite { coordinate: usize },
    /// Budget ran out while deciding `m`.
    Unknown { m: usize },
}

impl Verdict {
    /// Upper bound on the rank or border rank, if any.
    pub fn upper(&self) -> Option<usize> {
        match *self {
            Verdict::RankEquals(r) | Verdict::RankAtMost(r) | Verdict::BorderRank(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InfeasibleRecord {
    pub m: usize,
    pub pattern: ZeroPattern,
}

/// Verdict plus replayable evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct RankCertificate {
    pub point: ProjPoint,
    pub verdict: Verdict,
    pub m: Option<usize>,
    pub witnesses: Vec<ProjPoint>,
    pub infeasible_patterns: Vec<InfeasibleRecord>,
    pub seed: u64,
    pub budget_spent: u64,
}

#[derive(Debug, Clone)]
pub struct RankOptions {
    pub max_m: usize,
    pub seed: u64,
    /// Report `ProvablyInfinite` when a single zero coordinate is blocked.
    pub check_obstruction: bool,
    pub witness: WitnessOptions,
    pub gb: GbOptions,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            max_m: 4,
            seed: 0,
            check_obstruction: true,
            witness: WitnessOptions::default(),
            gb: GbOptions::default(),
        }
    }
}

fn check_point(p: &ProjPoint, ix: &Ideal) -> Result<()> {
    if p.len() != ix.nvars() {
        return Err(Error::RingMismatch { expected: ix.nvars(), found: p.len() });
    }
    if !p.is_rational() {
        return Err(Error::Invalid("rank computations need a rational point".into()));
    }
    Ok(())
}

/// The blocked coordinate, when `p` has exactly one zero and `X n H_i`
/// misses the open torus of `H_i`.
pub fn rank_obstruction(p: &ProjPoint, ix: &Ideal, opts: &GbOptions) -> Result<Option<usize>> {
    match p.zero_set().as_slice() {
        &[i] if section_in_other_hyperplanes(ix, i, opts)? => Ok(Some(i)),
        _ => Ok(None),
    }
}

/// Smallest `m <= max_m` with `p` a product of `m` points of `V(I_X)`.
pub fn hadamard_rank(p: &ProjPoint, ix: &Ideal, opts: &RankOptions) -> Result<RankCertificate> {
    if opts.max_m == 0 {
        return Err(Error::Invalid("max_m must be at least 1".into()));
    }
    check_point(p, ix)?;
    let mut cert = RankCertificate {
        point: p.clone(),
        verdict: Verdict::RankGreaterThan(opts.max_m),
        m: None,
        witnesses: vec![],
        infeasible_patterns: vec![],
        seed: opts.seed,
        budget_spent: 0,
    };
    if opts.check_obstruction {
        if let Some(i) = rank_obstruction(p, ix, &opts.gb)? {
            cert.verdict = Verdict::ProvablyInfinite { coordinate: i };
            return Ok(cert);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for m in 1..=opts.max_m {
        let report = decomposition_exists(p, ix, m, &opts.gb)?;
        cert.budget_spent += report.steps();
        match report.existence {
            Existence::Exists => {
                cert.m = Some(m);
                cert.verdict = Verdict::RankEquals(m);
                match decomposition_witness(p, ix, &report, &mut rng, &opts.witness, &opts.gb) {
                    Ok(w) => cert.witnesses = w,
                    Err(Error::WitnessNotFound { .. }) => {}
                    Err(e) => return Err(e),
                }
                return Ok(cert);
            }
            Existence::Infeasible => cert
                .infeasible_patterns
                .extend(report.infeasible_patterns().into_iter().map(|pattern| InfeasibleRecord { m, pattern })),
            Existence::Unknown => {
                cert.m = Some(m);
                cert.verdict = Verdict::Unknown { m };
                return Ok(cert);
            }
        }
    }
    Ok(cert)
}

/// Smallest `m <= max_m` with `p` on the closure `X^m`.
pub fn border_rank(p: &ProjPoint, ix: &Ideal, opts: &RankOptions) -> Result<RankCertificate> {
    let mut cache = PowerCache::new(ix.clone());
    border_rank_with_cache(p, &mut cache, opts)
}

pub fn border_rank_with_cache(p: &ProjPoint, cache: &mut PowerCache, opts: &RankOptions) -> Result<RankCertificate> {
    if opts.max_m == 0 {
        return Err(Error::Invalid("max_m must be at least 1".into()));
    }
    check_point(p, cache.base())?;
    let mut cert = RankCertificate {
        point: p.clone(),
        verdict: Verdict::BorderRankGreaterThan(opts.max_m),
        m: None,
        witnesses: vec![],
        infeasible_patterns: vec![],
        seed: opts.seed,
        budget_spent: 0,
    };
    for m in 1..=opts.max_m {
        match power_membership(p, cache, m, &opts.gb) {
            Ok(true) => {
                cert.m = Some(m);
                cert.verdict = Verdict::BorderRank(m);
                return Ok(cert);
            }
            Ok(false) => {}
            Err(Error::Budget { .. }) => {
                cert.m = Some(m);
                cert.verdict = Verdict::Unknown { m };
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(cert)
}

/// Output of [`zero_pattern_reduce`]: `p = p' * q_1 * ... * q_z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub p_prime: ProjPoint,
    /// One witness per zero coordinate of `p`, in coordinate order.
    pub witnesses: Vec<ProjPoint>,
}

impl Reduction {
    /// Product of the witnesses, `None` when `p` has no zero.
    pub fn q(&self) -> Option<ProjPoint> {
        if self.witnesses.is_empty() {
            None
        } else {
            hadamard_product_all(&self.witnesses).ok()
        }
    }
}

/// Splits off the zeros of `p` with rational strong conciseness witnesses,
/// leaving a point `p'` with no zero coordinate.
pub fn zero_pattern_reduce(p: &ProjPoint, ix: &Ideal, seed: u64, opts: &GbOptions) -> Result<Reduction> {
    check_point(p, ix)?;
    let zeros = p.zero_set();
    for &i in &zeros {
        if !strongly_concise_at(ix, i, opts)? {
            return Err(Error::NotStronglyConcise(i));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::with_capacity(zeros.len());
    for &i in &zeros {
        let w = strong_conciseness_witness(ix, i, &mut rng, opts)?;
        if !w.is_rational() {
            return Err(Error::IrrationalWitnessesOnly(i));
        }
        witnesses.push(w);
    }
    if witnesses.is_empty() {
        return Ok(Reduction { p_prime: p.clone(), witnesses });
    }
    let q = hadamard_product_all(&witnesses)?.as_rats().expect("rational witnesses");
    let pr = p.as_rats().expect("checked rational");
    let coords = pr
        .iter()
        .zip(&q)
        .map(|(a, b)| if b.is_zero() { Rat::one() } else { a / b })
        .collect();
    Ok(Reduction { p_prime: ProjPoint::from_rats(coords)?, witnesses })
}

/// Rank bound for `p` through its reduction: witnesses for `p'` followed by
/// the zero witnesses give `Hrk(p) <= Hrk(p') + z(p)`.
pub fn reduce_and_rank(p: &ProjPoint, ix: &Ideal, opts: &RankOptions) -> Result<(Reduction, RankCertificate)> {
    let red = zero_pattern_reduce(p, ix, opts.seed, &opts.gb)?;
    let inner = hadamard_rank(&red.p_prime, ix, opts)?;
    let mut cert = RankCertificate {
        point: p.clone(),
        verdict: Verdict::Unknown { m: opts.max_m },
        m: None,
        witnesses: vec![],
        infeasible_patterns: vec![],
        seed: opts.seed,
        budget_spent: inner.budget_spent,
    };
    if let (Verdict::RankEquals(r), false) = (inner.verdict, inner.witnesses.is_empty()) {
        let mut w = inner.witnesses.clone();
        w.extend(red.witnesses.iter().cloned());
        if verify_decomposition(p, ix, &w)? {
            let bound = r + red.witnesses.len();
            cert.verdict = Verdict::RankAtMost(bound);
            cert.m = Some(bound);
            cert.witnesses = w;
        }
    }
    Ok((red, cert))
}

/// Outcome of replaying a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replay {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Re-derives the evidence of `cert` against `I_X` exactly.
pub fn replay_certificate(cert: &RankCertificate, ix: &Ideal, opts: &GbOptions) -> Result<Replay> {
    let p = &cert.point;
    check_point(p, ix)?;
    let mut failures = Vec::new();
    for rec in &cert.infeasible_patterns {
        let (sys, _) = super::decompose::pattern_system(p, ix, &rec.pattern)?;
        if !crate::groebner::reduced_basis(&sys, opts)?.is_unit() {
            failures.push(format!("pattern {:?} at m = {} is feasible", rec.pattern.forced, rec.m));
        }
    }
    match cert.verdict {
        Verdict::RankEquals(r) | Verdict::RankAtMost(r) => {
            if cert.witnesses.is_empty() {
                if matches!(cert.verdict, Verdict::RankAtMost(_)) {
                    failures.push("upper bound without witnesses".into());
                } else if decomposition_exists(p, ix, r, opts)?.existence != Existence::Exists {
                    failures.push(format!("no decomposition with {r} factors"));
                }
            } else if cert.witnesses.len() != r {
                failures.push(format!("{} witnesses for rank {r}", cert.witnesses.len()));
            } else if !verify_decomposition(p, ix, &cert.witnesses)? {
                failures.push("witness factors do not multiply to the point on the variety".into());
            }
            if let Verdict::RankEquals(r) = cert.verdict {
                for m in 1..r {
                    let covered = super::decompose::zero_patterns(&p.zero_set(), m)
                        .into_iter()
                        .all(|pattern| cert.infeasible_patterns.contains(&InfeasibleRecord { m, pattern }));
                    if !covered {
                        failures.push(format!("missing infeasibility evidence for m = {m}"));
                    }
                }
            }
        }
        Verdict::RankGreaterThan(r) => {
            for m in 1..=r {
                let covered = super::decompose::zero_patterns(&p.zero_set(), m)
                    .into_iter()
                    .all(|pattern| cert.infeasible_patterns.contains(&InfeasibleRecord { m, pattern }));
                if !covered {
                    failures.push(format!("missing infeasibility evidence for m = {m}"));
                }
            }
        }
        Verdict::BorderRank(r) | Verdict::BorderRankGreaterThan(r) => {
            let mut cache = PowerCache::new(ix.clone());
            let top = if matches!(cert.verdict, Verdict::BorderRank(_)) { r - 1 } else { r };
            for m in 1..=top {
                if power_membership(p, &mut cache, m, opts)? {
                    failures.push(format!("point lies on power {m}"));
                }
            }
            if matches!(cert.verdict, Verdict::BorderRank(_)) && !power_membership(p, &mut cache, r, opts)? {
                failures.push(format!("point is not on power {r}"));
            }
        }
        Verdict::ProvablyInfinite { coordinate } => {
            if rank_obstruction(p, ix, opts)? != Some(coordinate) {
                failures.push(format!("coordinate {coordinate} is not blocked"));
            }
        }
        Verdict::Unknown { .. } => {}
    }
    Ok(Replay { ok: failures.is_empty(), failures })
}

/// True when every coordinate of every witness is rational.
pub fn witnesses_rational(cert: &RankCertificate) -> bool {
    cert.witnesses.iter().all(|w| w.coords().iter().all(|c| matches!(c, Scalar::Rat(_))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> Ideal {
        Ideal::parse(3, &["x0*(x1+x2) + (x1-x2)^2"]).unwrap()
    }

    fn q() -> Ideal {
        Ideal::parse(3, &["x0*x1 + x0*x2 + x1*x2"]).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    fn opts(max_m: usize) -> RankOptions {
        RankOptions { max_m, ..RankOptions::default() }
    }

    #[test]
    fn ranks_on_c() {
        let o = opts(4);
        let r1 = hadamard_rank(&pt("0:1:1"), &c(), &o).unwrap();
        assert_eq!(r1.verdict, Verdict::RankEquals(1));
        let r3 = hadamard_rank(&pt("0:1:-1"), &c(), &o).unwrap();
        assert_eq!(r3.verdict, Verdict::RankEquals(3));
        assert_eq!(r3.witnesses.len(), 3);
        assert!(replay_certificate(&r3, &c(), &o.gb).unwrap().ok);
        let b = border_rank(&pt("0:1:-1"), &c(), &o).unwrap();
        assert_eq!(b.verdict, Verdict::BorderRank(2));
        assert!(replay_certificate(&b, &c(), &o.gb).unwrap().ok);
    }

    #[test]
    fn q_obstruction() {
        let r = hadamard_rank(&pt("2:3:0"), &q(), &opts(4)).unwrap();
        assert_eq!(r.verdict, Verdict::ProvablyInfinite { coordinate: 2 });
        let o = RankOptions { check_obstruction: false, ..opts(3) };
        let r = hadamard_rank(&pt("2:3:0"), &q(), &o).unwrap();
        assert_eq!(r.verdict, Verdict::RankGreaterThan(3));
        assert!(replay_certificate(&r, &q(), &o.gb).unwrap().ok);
    }

    #[test]
    fn reduction_on_c() {
        let o = opts(4);
        let red = zero_pattern_reduce(&pt("0:5:7"), &c(), 0, &o.gb).unwrap();
        assert_eq!(red.witnesses, vec![pt("0:1:1")]);
        assert_eq!(red.p_prime, pt("1:5:7"));
        let (_, cert) = reduce_and_rank(&pt("0:1:-1"), &c(), &o).unwrap();
        assert_eq!(cert.verdict, Verdict::RankAtMost(3));
        assert!(replay_certificate(&cert, &c(), &o.gb).unwrap().ok);
        let same = zero_pattern_reduce(&pt("1:2:3"), &q(), 0, &o.gb).unwrap();
        assert!(same.witnesses.is_empty() && same.q().is_none());
        assert_eq!(zero_pattern_reduce(&pt("1:2:0"), &q(), 0, &o.gb), Err(Error::NotStronglyConcise(2)));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let o = opts(4);
        let mut r3 = hadamard_rank(&pt("0:1:-1"), &c(), &o).unwrap();
        r3.witnesses[1] = pt("1:1:1");
        assert!(!replay_certificate(&r3, &c(), &o.gb).unwrap().ok);
        r3.verdict = Verdict::RankEquals(2);
        assert!(!replay_certificate(&r3, &c(), &o.gb).unwrap().ok);
    }
}
