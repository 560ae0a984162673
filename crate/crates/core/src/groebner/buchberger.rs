//! Buchberger's algorithm with the Gebauer-Moeller criteria.
//!
//! Internally polynomials carry primitive integer coefficients and are kept
//! sorted by decreasing monomial; reductions are fraction-free.

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{Ideal, Monomial, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::path::PathBuf;

/// Default reduction-step cap per Groebner basis.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Environment variable naming the on-disk basis cache directory.
pub const CACHE_ENV: &str = "HADARANK_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of reduction steps.
    pub budget: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            budget: DEFAULT_BUDGET,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }
}

impl GbOptions {
    pub fn with_budget(budget: u64) -> Self {
        GbOptions { budget, ..Default::default() }
    }
}

/// Reduced Groebner basis with monic elements, sorted by increasing
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    steps: u64,
    ints: Vec<IntPoly>,
}

pub(crate) type IntPoly = Vec<(Monomial, BigInt)>;

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Reduction steps spent computing this basis (zero when cached).
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(self.nvars, self.basis.clone()).unwrap()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars {
            return Err(Error::RingMismatch { expected: self.nvars, found: f.nvars() });
        }
        if f.is_zero() {
            return Ok(f.clone());
        }
        let refs: Vec<&IntPoly> = self.ints.iter().collect();
        let (fi, k) = to_int(f, &self.order);
        let mut steps = 0;
        let (r, mult) = reduce_full(fi, &refs, &self.order, &mut steps, u64::MAX)?;
        // f * k = fi and fi * mult ~ r, so NF(f) = r / (k * mult)
        let s = (k * mult).recip();
        Ok(from_int(self.nvars, &r).scale(&s))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

fn cmp_terms(order: &MonomialOrder) -> impl Fn(&Monomial, &Monomial) -> Ordering + '_ {
    move |a, b| order.cmp(b, a)
}

/// Primitive integer form sorted decreasingly, with the factor `k` such
/// that `f * k` equals the result.
pub(crate) fn to_int(f: &Polynomial, order: &MonomialOrder) -> (IntPoly, Rat) {
    let l = f.terms().fold(BigInt::one(), |a, (_, c)| a.lcm(c.denom()));
    let mut v: IntPoly = f
        .terms()
        .map(|(m, c)| (m.clone(), (c * Rat::from_integer(l.clone())).to_integer()))
        .collect();
    let g = v.iter().fold(BigInt::zero(), |a, (_, c)| a.gcd(c));
    for t in v.iter_mut() {
        t.1 /= &g;
    }
    v.sort_by(|a, b| cmp_terms(order)(&a.0, &b.0));
    (v, Rat::new(l, g))
}

pub(crate) fn from_int(nvars: usize, f: &IntPoly) -> Polynomial {
    Polynomial::from_terms(nvars, f.iter().map(|(m, c)| (m.clone(), Rat::from_integer(c.clone()))))
}

fn content(f: &IntPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in f {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a * f - b * m * g`, all sorted decreasingly.
fn combine(f: &IntPoly, a: &BigInt, g: &IntPoly, b: &BigInt, m: &Monomial, order: &MonomialOrder) -> IntPoly {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<(Monomial, BigInt)> = g.first().map(|(x, c)| (x.mul(m), c * b));
    while i < f.len() || gm.is_some() {
        let ord = match (&gm, f.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some((mg, _)), Some((mf, _))) => order.cmp(mg, mf),
        };
        match ord {
            Ordering::Less => {
                out.push((f[i].0.clone(), &f[i].1 * a));
                i += 1;
            }
            Ordering::Greater => {
                let (mg, cg) = gm.take().unwrap();
                out.push((mg, -cg));
                j += 1;
                gm = g.get(j).map(|(x, c)| (x.mul(m), c * b));
            }
            Ordering::Equal => {
                let (mg, cg) = gm.take().unwrap();
                let c = &f[i].1 * a - cg;
                if !c.is_zero() {
                    out.push((mg, c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|(x, c)| (x.mul(m), c * b));
            }
        }
    }
    out
}

fn find_divisor<'a>(m: &Monomial, g: &[&'a IntPoly]) -> Option<&'a IntPoly> {
    g.iter().find(|h| h[0].0.divides(m)).copied()
}

/// Full reduction of `f` by `g`. Returns the remainder and the rational
/// factor `mult` with `f * mult` congruent to the remainder.
pub(crate) fn reduce_full(
    mut f: IntPoly,
    g: &[&IntPoly],
    order: &MonomialOrder,
    steps: &mut u64,
    budget: u64,
) -> Result<(IntPoly, Rat)> {
    let mut rem: IntPoly = Vec::new();
    let mut mult = Rat::one();
    let mut since_content = 0;
    while !f.is_empty() {
        let (m, c) = &f[0];
        match find_divisor(m, g) {
            None => {
                rem.push(f.remove(0));
            }
            Some(h) => {
                *steps += 1;
                if *steps > budget {
                    return Err(Error::Budget { limit: budget, context: "reduction".into() });
                }
                let q = h[0].0.div(m).unwrap();
                let lh = &h[0].1;
                let d = c.gcd(lh);
                let a = lh / &d;
                let b = c / &d;
                // the leading terms cancel, so drop them before combining
                let tail_f: IntPoly = f[1..].to_vec();
                let tail_h: IntPoly = h[1..].to_vec();
                f = combine(&tail_f, &a, &tail_h, &b, &q, order);
                if !a.is_one() {
                    for t in rem.iter_mut() {
                        t.1 *= &a;
                    }
                    mult *= Rat::from_integer(a);
                }
                since_content += 1;
                if since_content >= 8 {
                    since_content = 0;
                    let k = content(&rem).gcd(&content(&f));
                    if !k.is_zero() && !k.is_one() {
                        for t in rem.iter_mut().chain(f.iter_mut()) {
                            t.1 /= &k;
                        }
                        mult /= Rat::from_integer(k);
                    }
                }
            }
        }
    }
    let k = content(&rem);
    if !k.is_zero() {
        let k = if rem[0].1.is_negative() { -k } else { k };
        for t in rem.iter_mut() {
            t.1 /= &k;
        }
        mult /= Rat::from_integer(k);
    }
    Ok((rem, mult))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn spoly(f: &IntPoly, g: &IntPoly, lcm: &Monomial, order: &MonomialOrder) -> IntPoly {
    let mf = f[0].0.div(lcm).unwrap();
    let mg = g[0].0.div(lcm).unwrap();
    let d = f[0].1.gcd(&g[0].1);
    let a = &g[0].1 / &d;
    let b = &f[0].1 / &d;
    let fm: IntPoly = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    combine(&fm, &a, &g[1..].to_vec(), &b, &mg, order)
}

/// Gebauer-Moeller update after adding `polys[h]`.
fn update(polys: &[IntPoly], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let lh = &polys[h][0].0;
    let cands: Vec<(usize, Monomial)> = (0..h)
        .filter(|&g| active[g])
        .map(|g| (g, lh.lcm(&polys[g][0].0)))
        .collect();
    let mut keep = vec![false; cands.len()];
    for (k, (g, l)) in cands.iter().enumerate() {
        let coprime = lh.is_coprime(&polys[*g][0].0);
        let later = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l));
        let earlier = (0..k).any(|j| keep[j] && cands[j].1.divides(l));
        keep[k] = coprime || (!later && !earlier);
    }
    let mut new: Vec<Pair> = Vec::new();
    for (k, (g, l)) in cands.into_iter().enumerate() {
        if keep[k] && !lh.is_coprime(&polys[g][0].0) {
            new.push(Pair { i: g, j: h, lcm: l });
        }
    }
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(&polys[p.i][0].0) != p.lcm
            && lh.lcm(&polys[p.j][0].0) != p.lcm)
    });
    pairs.extend(new);
    for g in 0..h {
        if active[g] && lh.divides(&polys[g][0].0) {
            active[g] = false;
        }
    }
    active[h] = true;
}

/// Reduced Groebner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GbOptions::default())
}

pub fn buchberger_with(ideal: &Ideal, order: &MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis> {
    if let Some(dir) = &opts.cache_dir {
        if let Some(gb) = super::cache::load(dir, ideal, order) {
            return Ok(gb);
        }
    }
    let gb = compute(ideal, order, opts.budget)?;
    if let Some(dir) = &opts.cache_dir {
        super::cache::store(dir, ideal, &gb);
    }
    Ok(gb)
}

fn compute(ideal: &Ideal, order: &MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let n = ideal.nvars();
    let mut steps = 0u64;
    let mut polys: Vec<IntPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<IntPoly> = ideal.gens().iter().map(|g| to_int(g, order).0).collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    let mut unit = false;
    for f in inputs {
        let g: Vec<&IntPoly> = (0..polys.len()).filter(|&k| active[k]).map(|k| &polys[k]).collect();
        let (r, _) = reduce_full(f, &g, order, &mut steps, budget)?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            unit = true;
            break;
        }
        polys.push(r);
        active.push(false);
        let h = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, h);
    }
    while !unit && !pairs.is_empty() {
        // normal strategy: smallest lcm, ties by index
        let mut best = 0;
        for k in 1..pairs.len() {
            let o = order.cmp(&pairs[k].lcm, &pairs[best].lcm);
            if o == Ordering::Less || (o == Ordering::Equal && (pairs[k].j, pairs[k].i) < (pairs[best].j, pairs[best].i)) {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        let s = spoly(&polys[p.i], &polys[p.j], &p.lcm, order);
        if s.is_empty() {
            continue;
        }
        let g: Vec<&IntPoly> = (0..polys.len()).filter(|&k| active[k]).map(|k| &polys[k]).collect();
        let (r, _) = reduce_full(s, &g, order, &mut steps, budget)
            .map_err(|_| Error::Budget { limit: budget, context: format!("groebner basis in {n} variables") })?;
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            unit = true;
            break;
        }
        polys.push(r);
        active.push(false);
        let h = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, h);
    }
    if unit {
        return Ok(GroebnerBasis::make(n, *order, vec![Polynomial::one(n)], steps));
    }
    // minimal basis, then interreduce
    let mut min: Vec<IntPoly> = Vec::new();
    let act: Vec<usize> = (0..polys.len()).filter(|&k| active[k]).collect();
    for &k in &act {
        let lk = &polys[k][0].0;
        let redundant = act.iter().any(|&j| j != k && polys[j][0].0.divides(lk) && (polys[j][0].0 != *lk || j < k));
        if !redundant {
            min.push(polys[k].clone());
        }
    }
    min.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut reduced: Vec<IntPoly> = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<&IntPoly> = (0..min.len()).filter(|&j| j != k).map(|j| &min[j]).collect();
        let lead = min[k][0].clone();
        let tail: IntPoly = min[k][1..].to_vec();
        let (r, mult) = reduce_full(tail, &others, order, &mut steps, budget)
            .map_err(|_| Error::Budget { limit: budget, context: format!("groebner basis in {n} variables") })?;
        // lead * mult must be scaled consistently with the reduced tail
        let lead_c = Rat::from_integer(lead.1) * mult;
        let mut poly = from_int(n, &r);
        poly.add_term(lead.0, lead_c);
        reduced.push(to_int(&poly, order).0);
    }
    let basis: Vec<Polynomial> = reduced.iter().map(|f| from_int(n, f).monic(order)).collect();
    Ok(GroebnerBasis::make(n, *order, basis, steps))
}

impl GroebnerBasis {
    pub(crate) fn from_parts(nvars: usize, order: MonomialOrder, basis: Vec<Polynomial>) -> Self {
        Self::make(nvars, order, basis, 0)
    }

    fn make(nvars: usize, order: MonomialOrder, basis: Vec<Polynomial>, steps: u64) -> Self {
        let ints: Vec<IntPoly> = basis.iter().map(|b| to_int(b, &order).0).collect();
        let leads = ints.iter().map(|f| f[0].0.clone()).collect();
        GroebnerBasis { nvars, order, basis, leads, steps, ints }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::{parse_polynomial, Ring};

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = Ring::projective(n - 1);
        Ideal::new(n, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn principal_is_its_own_basis() {
        let i = ideal(3, &["x1^2 - 2*x0*x2"]);
        for o in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            let gb = buchberger(&i, &o).unwrap();
            assert_eq!(gb.basis().len(), 1);
            assert_eq!(gb.basis()[0], i.gens()[0].monic(&o));
        }
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&ideal(1, &["x0", "1 - x0"]), &MonomialOrder::GrevLex).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn twisted_cubic() {
        let i = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let gb = buchberger(&i, &MonomialOrder::GrevLex).unwrap();
        assert_eq!(gb.basis().len(), 3);
        let lex = buchberger(&i, &MonomialOrder::Lex).unwrap();
        for g in i.gens() {
            assert!(gb.contains(g).unwrap());
            assert!(lex.contains(g).unwrap());
        }
        for g in lex.basis() {
            assert!(gb.contains(g).unwrap());
        }
    }

    #[test]
    fn normal_form_is_exact_remainder() {
        let i = ideal(2, &["x0^2 - 2"]);
        let gb = buchberger(&i, &MonomialOrder::GrevLex).unwrap();
        let f = parse_polynomial("3*x0^3 + 1/2*x1", &Ring::projective(1)).unwrap();
        let r = gb.normal_form(&f).unwrap();
        assert_eq!(r, parse_polynomial("6*x0 + 1/2*x1", &Ring::projective(1)).unwrap());
        assert_eq!(gb.normal_form(&r).unwrap(), r);
    }

    #[test]
    fn budget_is_reported() {
        let i = ideal(4, &["x0^3 - x1*x2*x3 + x2^2", "x1^3 - x0*x2 + x3^3", "x2^3 - x0*x1*x3 + 1"]);
        let err = buchberger_with(&i, &MonomialOrder::Lex, &GbOptions { budget: 10, cache_dir: None }).unwrap_err();
        assert!(matches!(err, Error::Budget { limit: 10, .. }));
    }
}
