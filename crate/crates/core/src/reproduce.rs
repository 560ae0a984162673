//! The acceptance suite as library functions, one per criterion.

use crate::conciseness::is_strongly_concise;
use crate::error::Result;
use crate::exactalg::rat::{rat, Rat};
use crate::exactalg::{Ideal, ProjPoint};
use crate::groebner::{ideals_equal, projective_dimension, reduced_basis, GbOptions};
use crate::hadamard::{variety_power, variety_product, PowerCache};
use crate::numdim::{
    generic_rank_estimate, jacobian_dimension, power_dimension, power_param, Parametrization, DEFAULT_HEIGHT,
    DEFAULT_TRIALS,
};
use crate::rankengine::{
    border_rank, hadamard_rank, reduce_and_rank, replay_certificate, zero_patterns, InfeasibleRecord, RankCertificate,
    RankOptions, Verdict,
};
use crate::zoo::{
    closed_power, conic_c, conic_c_sharp, conic_q, exponent_vectors, grassmannian_ideal, one_zero_minor_matrix,
    random_curve, tangential_coefficients, tangential_witness, zoo_entry, zoo_names, Fact,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 13] = [
    "Hadamard square of Q fills the plane",
    "strong conciseness verdicts",
    "closed form of binomial powers",
    "exact ranks on the binomial conic",
    "rank table of the conic C",
    "infinite rank obstruction on Q",
    "Grassmannian one-zero-minor witness",
    "tangential coefficient formula",
    "dimension growth of curves",
    "sharpness on C_sharp",
    "zero-pattern reduction",
    "exact and Jacobian dimensions agree",
    "property suites",
];

fn ideal(entry: crate::zoo::ZooEntry) -> Ideal {
    entry.ideal.expect("zoo conic carries an ideal")
}

fn param(entry: crate::zoo::ZooEntry) -> Parametrization {
    entry.param.expect("zoo conic carries a parametrization")
}

fn x222() -> crate::zoo::ZooEntry {
    crate::zoo::binomial_hypersurface(2, 2, &rat(2)).expect("valid binomial conic")
}

fn pt(s: &str) -> ProjPoint {
    ProjPoint::parse(s).expect("valid literal point")
}

fn p_m(m: usize) -> ProjPoint {
    ProjPoint::from_rats(vec![rat(1), rat(1), Rat::new(1.into(), (1i64 << m).into())]).expect("nonzero point")
}

struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: vec![], notes: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn finish(self, id: usize) -> Outcome {
        let passed = self.failures.is_empty();
        let detail = if passed { self.notes.join("; ") } else { format!("failed: {}", self.failures.join("; ")) };
        Outcome { id, title: TITLES[id - 1], passed, detail }
    }
}

fn rank_opts(max_m: usize, gb: &GbOptions) -> RankOptions {
    RankOptions { max_m, gb: gb.clone(), ..RankOptions::default() }
}

fn patterns_covered(cert: &RankCertificate, m: usize) -> bool {
    zero_patterns(&cert.point.zero_set(), m)
        .into_iter()
        .all(|pattern| cert.infeasible_patterns.contains(&InfeasibleRecord { m, pattern }))
}

pub fn criterion_1(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let q = ideal(conic_q());
    c.check(variety_product(&q, &q, gb)?.is_zero(), "Q*Q is the zero ideal");
    let r = generic_rank_estimate(&param(conic_q()), 4, 0, DEFAULT_TRIALS, DEFAULT_HEIGHT)?;
    c.check(r == Some(2), format!("generic rank estimate {r:?}"));
    Ok(c.finish(1))
}

pub fn criterion_2(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let q = is_strongly_concise(&ideal(conic_q()), gb)?;
    c.check(q.strongly_concise.iter().all(|&b| !b), "Q fails at every coordinate");
    c.check(is_strongly_concise(&ideal(conic_c()), gb)?.all_strongly_concise, "C passes");
    c.check(!is_strongly_concise(&ideal(x222()), gb)?.all_strongly_concise, "X_{2,2,2} fails");
    let g = grassmannian_ideal(2, 4, gb)?;
    c.check(is_strongly_concise(&g, gb)?.all_strongly_concise, "G(2,4) passes");
    Ok(c.finish(2))
}

pub fn criterion_3(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let mut cache = PowerCache::new(ideal(x222()));
    for m in 1..=3 {
        let pw = variety_power(&mut cache, m, gb)?;
        c.check(ideals_equal(&pw, &closed_power(2, 2, &rat(2), m)?, gb)?, format!("power {m} matches"));
    }
    Ok(c.finish(3))
}

pub fn criterion_4(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let x = ideal(x222());
    let o = rank_opts(4, gb);
    for m in 1..=4 {
        let p = p_m(m);
        let r = hadamard_rank(&p, &x, &o)?;
        let b = border_rank(&p, &x, &o)?;
        c.check(
            r.verdict == Verdict::RankEquals(m) && b.verdict == Verdict::BorderRank(m),
            format!("p_{m}: {:?} / {:?}", r.verdict, b.verdict),
        );
        c.check(replay_certificate(&r, &x, gb)?.ok && replay_certificate(&b, &x, gb)?.ok, format!("p_{m} replays"));
    }
    Ok(c.finish(4))
}

pub fn criterion_5(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let ic = ideal(conic_c());
    let o = rank_opts(4, gb);
    let r1 = hadamard_rank(&pt("0:1:1"), &ic, &o)?;
    c.check(r1.verdict == Verdict::RankEquals(1), "rank (0:1:1) = 1");
    let r2 = hadamard_rank(&pt("0:2:3"), &ic, &o)?;
    c.check(
        r2.verdict == Verdict::RankEquals(2) && r2.witnesses == vec![pt("0:1:1"), pt("-1:10:15")],
        format!("rank (0:2:3) = 2 via {}", r2.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" * ")),
    );
    let r3 = hadamard_rank(&pt("0:1:-1"), &ic, &o)?;
    c.check(r3.verdict == Verdict::RankEquals(3), "rank (0:1:-1) = 3");
    c.check(patterns_covered(&r3, 2), "every m = 2 pattern is the unit ideal");
    c.check(replay_certificate(&r3, &ic, gb)?.ok && r3.witnesses.len() == 3, "triple verified");
    let b = border_rank(&pt("0:1:-1"), &ic, &o)?;
    c.check(b.verdict == Verdict::BorderRank(2), "border rank (0:1:-1) = 2");
    Ok(c.finish(5))
}

pub fn criterion_6(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let r = hadamard_rank(&pt("1:1:0"), &ideal(conic_q()), &rank_opts(4, gb))?;
    c.check(matches!(r.verdict, Verdict::ProvablyInfinite { coordinate: 2 }), format!("{:?}", r.verdict));
    Ok(c.finish(6))
}

pub fn criterion_7(_gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = one_zero_minor_matrix(2, 4, &mut rng, 10)?;
        c.check(w.plucker.len() == 6 && w.plucker.zero_count() == 1, format!("seed {seed}: {}", w.plucker));
    }
    Ok(c.finish(7))
}

/// Coefficients of `L^(d-1) M` by multiplying out the product in the
/// polynomial ring.
fn expanded_coefficients(d: u32, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    use crate::exactalg::{Monomial, Polynomial};
    let n = a.len();
    let lin = |v: &[Rat]| (0..n).fold(Polynomial::zero(n), |acc, i| acc + Polynomial::var(n, i).scale(&v[i]));
    let f = lin(a).pow(d - 1) * lin(b);
    exponent_vectors(d, n - 1).iter().map(|e| f.coeff(&Monomial::from_exponents(e))).collect()
}

pub fn criterion_8(_gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (d, n) in [(2u32, 1usize), (3, 1), (3, 2), (4, 2)] {
        let mut agree = true;
        for _ in 0..100 {
            let mut draw = || -> Vec<Rat> { (0..=n).map(|_| rat(rng.random_range(-20..=20))).collect() };
            let (a, b) = (draw(), draw());
            agree &= tangential_coefficients(d, &a, &b)? == expanded_coefficients(d, &a, &b);
        }
        c.check(agree, format!("formula matches expansion at ({d},{n})"));
    }
    for (d, n) in [(3u32, 1usize), (3, 2)] {
        let mut ok = true;
        for alpha in exponent_vectors(d, n) {
            ok &= tangential_witness(&alpha, &mut rng, 10)?.point.zero_count() == 1;
        }
        c.check(ok, format!("one-zero witnesses at ({d},{n})"));
    }
    Ok(c.finish(8))
}

pub fn criterion_9(_gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let mut good = 0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (entry, _) = random_curve(3, 3, &mut rng, 100)?;
        let p = entry.param.expect("curves are parametrized");
        let dims = (1..=3)
            .map(|m| Ok(power_dimension(&p, m, seed, DEFAULT_TRIALS, DEFAULT_HEIGHT)?.dimension))
            .collect::<Result<Vec<_>>>()?;
        let g = generic_rank_estimate(&p, 4, seed, DEFAULT_TRIALS, DEFAULT_HEIGHT)?;
        if dims == [1, 2, 3] && g == Some(3) {
            good += 1;
        } else {
            c.check(false, format!("seed {seed}: dims {dims:?}, generic rank {g:?}"));
        }
    }
    c.check(good == 20, format!("{good}/20 curves grow 1, 2, 3 with generic rank 3"));
    Ok(c.finish(9))
}

pub fn criterion_10(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let i = ideal(conic_c_sharp());
    let o = rank_opts(4, gb);
    let r = hadamard_rank(&pt("1:0:0"), &i, &o)?;
    c.check(r.verdict == Verdict::RankEquals(2), format!("{:?}", r.verdict));
    c.check(patterns_covered(&r, 1), "m = 1 is the unit ideal");
    c.check(r.witnesses == vec![pt("1:1:0"), pt("1:0:3")], "witness (1:1:0) * (1:0:3)");
    c.check(replay_certificate(&r, &i, gb)?.ok, "certificate replays");
    c.check(border_rank(&pt("1:0:0"), &i, &o)?.verdict == Verdict::BorderRank(2), "border rank 2");
    Ok(c.finish(10))
}

pub fn criterion_11(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let ic = ideal(conic_c());
    let o = rank_opts(4, gb);
    let p = pt("0:5:7");
    let (red, cert) = reduce_and_rank(&p, &ic, &o)?;
    c.check(red.witnesses == vec![pt("0:1:1")] && red.p_prime == pt("1:5:7"), format!("p' = {}", red.p_prime));
    let bound = cert.verdict.upper();
    c.check(
        matches!(cert.verdict, Verdict::RankAtMost(_)) && bound.is_some_and(|b| b <= 2 * 2 + 1),
        format!("composed {:?}", cert.verdict),
    );
    c.check(replay_certificate(&cert, &ic, gb)?.ok, "composed certificate replays");
    let direct = hadamard_rank(&p, &ic, &o)?;
    c.check(direct.verdict.upper().is_some_and(|r| r <= 3), format!("direct {:?}", direct.verdict));
    Ok(c.finish(11))
}

pub fn criterion_12(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    for (name, entry) in [("C", conic_c()), ("Q", conic_q()), ("X", x222())] {
        let mut cache = PowerCache::new(entry.ideal.clone().expect("ideal"));
        let p = entry.param.expect("param");
        for m in 1..=2 {
            let exact = projective_dimension(&variety_power(&mut cache, m, gb)?, gb)?;
            let jac = power_dimension(&p, m, 0, DEFAULT_TRIALS, DEFAULT_HEIGHT)?.dimension;
            c.check(exact == jac, format!("{name}, m = {m}: {exact} vs {jac}"));
        }
    }
    Ok(c.finish(12))
}

pub fn criterion_13(gb: &GbOptions) -> Result<Outcome> {
    let mut c = Checks::new();
    let o = rank_opts(4, gb);
    // replay and border <= rank over every point fact in the registry
    let mut replayed = 0;
    for name in zoo_names() {
        let entry = zoo_entry(name)?;
        let Some(i) = &entry.ideal else { continue };
        for f in &entry.facts {
            let point = match &f.fact {
                Fact::Rank { point, .. } | Fact::BorderRank { point, .. } => point,
                _ => continue,
            };
            let r = hadamard_rank(point, i, &o)?;
            let b = border_rank(point, i, &o)?;
            c.check(
                replay_certificate(&r, i, gb)?.ok && replay_certificate(&b, i, gb)?.ok,
                format!("{name} {point} replays"),
            );
            replayed += 2;
            if let (Some(rv), Verdict::RankEquals(_)) = (b.verdict.upper(), r.verdict) {
                c.check(rv <= r.verdict.upper().unwrap_or(usize::MAX), format!("{name} {point}: border <= rank"));
            }
        }
    }
    c.check(replayed > 0, format!("{replayed} certificates replayed"));
    // dimension monotone in m up to filling the ambient space
    for name in zoo_names() {
        let Some(p) = zoo_entry(name)?.param else { continue };
        let n = p.len() - 1;
        let mut prev = 0;
        for m in 1..=4 {
            let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
            let d = jacobian_dimension(&power_param(&p, m)?, &mut rng, DEFAULT_TRIALS, DEFAULT_HEIGHT)?;
            c.check(d >= prev && d <= n, format!("{name}: dim at m = {m} is {d}"));
            prev = d;
            if d == n {
                break;
            }
        }
    }
    // Groebner bases are reproducible, also with shuffled generators
    for i in [ideal(conic_c()), crate::zoo::grassmannian_ideal(2, 4, gb)?] {
        let first = reduced_basis(&i, gb)?.to_ideal().to_string();
        let again = reduced_basis(&i, gb)?.to_ideal().to_string();
        let mut gens = i.gens().to_vec();
        gens.reverse();
        let shuffled = reduced_basis(&Ideal::new(i.nvars(), gens)?, gb)?.to_ideal().to_string();
        c.check(first == again && first == shuffled, "reduced basis deterministic");
    }
    Ok(c.finish(13))
}

pub type CriterionFn = fn(&GbOptions) -> Result<Outcome>;

pub const CRITERIA: [CriterionFn; 13] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
    criterion_13,
];

/// Runs one criterion, turning errors into a failed outcome.
pub fn run(id: usize, gb: &GbOptions) -> Outcome {
    match CRITERIA[id - 1](gb) {
        Ok(o) => o,
        Err(e) => Outcome { id, title: TITLES[id - 1], passed: false, detail: format!("error: {e}") },
    }
}

pub fn run_all(gb: &GbOptions) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run(id, gb)).collect()
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}
