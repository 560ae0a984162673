//! Hadamard products and powers of varieties, rank loci, membership of
//! points in powers, and translation by a point.

use crate::error::{Error, Result};
use crate::exactalg::rat::Rat;
use crate::exactalg::{evaluate, Ideal, Polynomial, ProjPoint};
use crate::groebner::{eliminate, intersect_ideals, projective_dimension, reduced_basis, GbOptions};
use std::collections::BTreeMap;

pub use crate::exactalg::{hadamard_inverse, hadamard_point, hadamard_product_all};

/// Ideal of the Hadamard product `X * Y` of the cones over two projective
/// varieties in the same space.
pub fn variety_product(ix: &Ideal, iy: &Ideal, opts: &GbOptions) -> Result<Ideal> {
    let n = ix.nvars();
    if iy.nvars() != n {
        return Err(Error::RingMismatch { expected: n, found: iy.nvars() });
    }
    let total = 3 * n;
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..2 * n).collect();
    let mut gens: Vec<Polynomial> = Vec::new();
    gens.extend(ix.remap(total, &xs).gens().iter().cloned());
    gens.extend(iy.remap(total, &ys).gens().iter().cloned());
    for i in 0..n {
        let z = Polynomial::var(total, 2 * n + i);
        let xy = Polynomial::var(total, i) * Polynomial::var(total, n + i);
        gens.push(z - xy);
    }
    let drop: Vec<usize> = (0..2 * n).collect();
    let e = eliminate(&Ideal::new(total, gens)?, &drop, opts)?;
    Ok(reduced_basis(&e, opts)?.to_ideal())
}

/// Ideal of the single point `(1 : ... : 1)`.
pub fn ones_ideal(nvars: usize) -> Ideal {
    let gens = (1..nvars)
        .map(|i| Polynomial::var(nvars, i) - Polynomial::var(nvars, 0))
        .collect();
    Ideal::new(nvars, gens).unwrap()
}

/// True iff `(1 : ... : 1)` lies on `V(I)`.
pub fn contains_ones(ideal: &Ideal) -> bool {
    let ones = ProjPoint::ones(ideal.nvars());
    ideal.gens().iter().all(|g| evaluate(g, &ones).map(|v| v.is_zero()).unwrap_or(false))
}

/// Cached powers `X^m` with their projective dimensions.
#[derive(Debug, Clone)]
pub struct PowerCache {
    base: Ideal,
    powers: BTreeMap<usize, (Ideal, Option<usize>)>,
}

impl PowerCache {
    pub fn new(base: Ideal) -> Self {
        PowerCache { base, powers: BTreeMap::new() }
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn cached(&self, m: usize) -> Option<&Ideal> {
        self.powers.get(&m).map(|e| &e.0)
    }

    /// Projective dimension of a cached power; `None` inside means empty.
    pub fn dimension(&self, m: usize) -> Option<Option<usize>> {
        self.powers.get(&m).map(|e| e.1)
    }

    pub fn cached_powers(&self) -> Vec<usize> {
        self.powers.keys().copied().collect()
    }

    fn insert(&mut self, m: usize, ideal: Ideal, opts: &GbOptions) -> Result<()> {
        let dim = match projective_dimension(&ideal, opts) {
            Ok(d) => Some(d),
            Err(Error::EmptyVariety) => None,
            Err(e) => return Err(e),
        };
        self.powers.insert(m, (ideal, dim));
        Ok(())
    }

    fn product(&self, a: &Ideal, b: &Ideal, m: usize, opts: &GbOptions) -> Result<Ideal> {
        variety_product(a, b, opts).map_err(|e| match e {
            Error::Budget { limit, .. } => Error::Budget { limit, context: format!("power {m}") },
            other => other,
        })
    }

    /// Text of a cached power in the ideal file format.
    pub fn export(&self, m: usize) -> Option<String> {
        let ideal = self.cached(m)?;
        Some(ideal.to_file_string(&[format!("power {m} of {}", self.base.hash_hex())]))
    }
}

/// Ideal of `X^m` for `m >= 1`, filling `cache` along the way.
pub fn variety_power(cache: &mut PowerCache, m: usize, opts: &GbOptions) -> Result<Ideal> {
    if m == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    if let Some(i) = cache.cached(m) {
        return Ok(i.clone());
    }
    if m == 1 {
        let b = reduced_basis(&cache.base, opts)?.to_ideal();
        cache.insert(1, b.clone(), opts)?;
        return Ok(b);
    }
    let x = variety_power(cache, 1, opts)?;
    let h = m / 2;
    if let Some(half) = cache.cached(h).cloned() {
        let sq = match cache.cached(2 * h) {
            Some(s) => s.clone(),
            None => {
                let s = cache.product(&half, &half, 2 * h, opts)?;
                cache.insert(2 * h, s.clone(), opts)?;
                s
            }
        };
        if m % 2 == 0 {
            return Ok(sq);
        }
        let r = cache.product(&sq, &x, m, opts)?;
        cache.insert(m, r.clone(), opts)?;
        return Ok(r);
    }
    let mut k = *cache.powers.range(..m).next_back().unwrap().0;
    let mut cur = cache.cached(k).unwrap().clone();
    while k < m {
        k += 1;
        cur = cache.product(&cur, &x, k, opts)?;
        cache.insert(k, cur.clone(), opts)?;
    }
    Ok(cur)
}

/// Ideal of `X u X^2 u ... u X^m`.
pub fn rank_locus(ix: &Ideal, m: usize, opts: &GbOptions) -> Result<Ideal> {
    let mut cache = PowerCache::new(ix.clone());
    if contains_ones(ix) {
        return variety_power(&mut cache, m, opts);
    }
    let mut acc = variety_power(&mut cache, 1, opts)?;
    for k in 2..=m {
        let p = variety_power(&mut cache, k, opts)?;
        acc = intersect_ideals(&acc, &p, opts)?;
    }
    Ok(acc)
}

/// `p` lies on the closure `X^m`. This is membership in the closure: the
/// point need not be an actual product of `m` points.
pub fn power_membership(p: &ProjPoint, cache: &mut PowerCache, m: usize, opts: &GbOptions) -> Result<bool> {
    let ideal = variety_power(cache, m, opts)?;
    if p.len() != ideal.nvars() {
        return Err(Error::RingMismatch { expected: ideal.nvars(), found: p.len() });
    }
    for g in ideal.gens() {
        if !evaluate(g, p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ideal of `q * X` for a rational point `q` with no zero coordinate.
pub fn translate_ideal(ix: &Ideal, q: &ProjPoint) -> Result<Ideal> {
    if q.len() != ix.nvars() {
        return Err(Error::RingMismatch { expected: ix.nvars(), found: q.len() });
    }
    if let Some(i) = q.zero_set().first() {
        return Err(Error::ZeroCoordinate(*i));
    }
    let qs = q
        .as_rats()
        .ok_or_else(|| Error::Invalid("translation needs a rational point".into()))?;
    let factors: Vec<Rat> = qs.iter().map(|c| c.recip()).collect();
    let gens = ix
        .gens()
        .iter()
        .map(|g| g.scale_vars(&factors).primitive(&crate::groebner::MonomialOrder::GrevLex))
        .collect();
    Ideal::new(ix.nvars(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideals_equal;

    fn opts() -> GbOptions {
        GbOptions { budget: 1_000_000, cache_dir: None }
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::parse(3, gens).unwrap()
    }

    #[test]
    fn product_with_identity() {
        let i = ideal(&["x1^2 - 2*x0*x2"]);
        let r = variety_product(&i, &ones_ideal(3), &opts()).unwrap();
        assert!(ideals_equal(&r, &i, &opts()).unwrap());
    }

    #[test]
    fn powers_of_binomial() {
        let mut cache = PowerCache::new(ideal(&["x1^2 - 2*x0*x2"]));
        for (m, c) in [(1, "2"), (2, "4"), (3, "8"), (4, "16")] {
            let p = variety_power(&mut cache, m, &opts()).unwrap();
            let want = ideal(&[&format!("x1^2 - {c}*x0*x2")]);
            assert!(ideals_equal(&p, &want, &opts()).unwrap(), "m = {m}: {p}");
            assert_eq!(cache.dimension(m), Some(Some(1)));
        }
        assert!(cache.export(2).unwrap().starts_with("# power 2 of "));
    }

    #[test]
    fn rank_locus_without_ones() {
        let i = ideal(&["x1^2 - 2*x0*x2"]);
        let r = rank_locus(&i, 2, &opts()).unwrap();
        let want = ideal(&["(x1^2 - 2*x0*x2)*(x1^2 - 4*x0*x2)"]);
        assert!(ideals_equal(&r, &want, &opts()).unwrap());
        assert_eq!(rank_locus(&i, 1, &opts()).unwrap(), reduced_basis(&i, &opts()).unwrap().to_ideal());
    }

    #[test]
    fn translation() {
        let c = ideal(&["x0*(x1+x2) + (x1-x2)^2"]);
        let q = ProjPoint::parse("1:2:3").unwrap();
        let t = translate_ideal(&c, &q).unwrap();
        let back = translate_ideal(&t, &hadamard_inverse(&q).unwrap()).unwrap();
        assert!(ideals_equal(&back, &c, &opts()).unwrap());
        assert!(ideals_equal(&translate_ideal(&c, &ProjPoint::ones(3)).unwrap(), &c, &opts()).unwrap());
        assert_eq!(translate_ideal(&c, &ProjPoint::parse("0:1:1").unwrap()).unwrap_err(), Error::ZeroCoordinate(0));
        // a point of C moves onto the translate
        let p = ProjPoint::parse("-1:6:3").unwrap();
        let qp = hadamard_point(&q, &p).unwrap();
        assert!(evaluate(&t.gens()[0], &qp).unwrap().is_zero());
    }
}
