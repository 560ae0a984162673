//! Ideal operations: membership, elimination, intersection, dimension.

use super::buchberger::{buchberger_with, GbOptions, GroebnerBasis};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exactalg::{Ideal, Monomial, Polynomial};

/// Reduced basis under graded reverse lex.
pub fn reduced_basis(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis> {
    buchberger_with(ideal, &MonomialOrder::GrevLex, opts)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// `V(I)` is empty.
pub fn is_unit_ideal(ideal: &Ideal, opts: &GbOptions) -> Result<bool> {
    if ideal.gens().iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(true);
    }
    Ok(reduced_basis(ideal, opts)?.is_unit())
}

/// `f` vanishes on `V(I)`: tested as `1 in I + (1 - y f)` with a new
/// variable `y`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, opts: &GbOptions) -> Result<bool> {
    let n = ideal.nvars();
    if f.nvars() != n {
        return Err(Error::RingMismatch { expected: n, found: f.nvars() });
    }
    if f.is_zero() {
        return Ok(true);
    }
    let map: Vec<usize> = (0..n).collect();
    let lifted = ideal.remap(n + 1, &map);
    let y = Polynomial::var(n + 1, n);
    let rab = Polynomial::one(n + 1) - &y * &f.remap(n + 1, &map);
    is_unit_ideal(&lifted.with([rab])?, opts)
}

/// `I` intersected with the subring of the variables not in `drop`; the
/// result lives in a ring whose variables are the kept ones, in order.
pub fn eliminate(ideal: &Ideal, drop: &[usize], opts: &GbOptions) -> Result<Ideal> {
    let n = ideal.nvars();
    let mut is_dropped = vec![false; n];
    for &d in drop {
        if d >= n {
            return Err(Error::VariableOutOfRange { index: d, nvars: n });
        }
        is_dropped[d] = true;
    }
    let nd = is_dropped.iter().filter(|&&b| b).count();
    if nd == n {
        return Err(Error::Invalid("cannot eliminate every variable".into()));
    }
    if nd == 0 {
        return Ok(ideal.clone());
    }
    // dropped variables first, both blocks in original relative order
    let mut map = vec![0; n];
    let (mut a, mut b) = (0, nd);
    for i in 0..n {
        if is_dropped[i] {
            map[i] = a;
            a += 1;
        } else {
            map[i] = b;
            b += 1;
        }
    }
    let permuted = ideal.remap(n, &map);
    let gb = buchberger_with(&permuted, &MonomialOrder::elimination(nd), opts)?;
    let dropped_mask: u64 = if nd >= 64 { u64::MAX } else { (1u64 << nd) - 1 };
    let back: Vec<usize> = (0..n).map(|i| i.saturating_sub(nd)).collect();
    let gens = gb
        .basis()
        .iter()
        .filter(|g| g.support_mask() & dropped_mask == 0)
        .map(|g| g.remap(n - nd, &back))
        .collect();
    Ideal::new(n - nd, gens)
}

/// `I` intersected with `J`, via `t I + (1 - t) J` and elimination of `t`.
pub fn intersect_ideals(i: &Ideal, j: &Ideal, opts: &GbOptions) -> Result<Ideal> {
    let n = i.nvars();
    if j.nvars() != n {
        return Err(Error::RingMismatch { expected: n, found: j.nvars() });
    }
    let map: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(n + 1, 0);
    let one_minus_t = Polynomial::one(n + 1) - &t;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(&t * &g.remap(n + 1, &map));
    }
    for g in j.gens() {
        gens.push(&one_minus_t * &g.remap(n + 1, &map));
    }
    let e = eliminate(&Ideal::new(n + 1, gens)?, &[0], opts)?;
    Ok(reduced_basis(&e, opts)?.to_ideal())
}

/// Equal reduced bases under graded reverse lex.
pub fn ideals_equal(i: &Ideal, j: &Ideal, opts: &GbOptions) -> Result<bool> {
    if i.nvars() != j.nvars() {
        return Ok(false);
    }
    Ok(reduced_basis(i, opts)?.basis() == reduced_basis(j, opts)?.basis())
}

/// Size of a largest set of variables containing the support of no
/// leading monomial, i.e. the Krull dimension of `R / in(I)`.
pub fn max_independent_set(leads: &[Monomial], nvars: usize) -> Vec<usize> {
    assert!(nvars <= 64, "at most 64 variables supported");
    let masks: Vec<u64> = leads.iter().map(Monomial::support_mask).collect();
    let mut best: u64 = 0;
    fn ok(set: u64, masks: &[u64]) -> bool {
        masks.iter().all(|&m| m & !set != 0)
    }
    fn go(i: usize, n: usize, set: u64, masks: &[u64], best: &mut u64) {
        if set.count_ones() + (n - i) as u32 <= best.count_ones() {
            return;
        }
        if i == n {
            *best = set;
            return;
        }
        let with = set | (1u64 << i);
        if ok(with, masks) {
            go(i + 1, n, with, masks, best);
        }
        go(i + 1, n, set, masks, best);
    }
    if masks.iter().any(|&m| m == 0) {
        return vec![];
    }
    go(0, nvars, 0, &masks, &mut best);
    (0..nvars).filter(|&i| best >> i & 1 == 1).collect()
}

/// Affine dimension of `V(I)`; `None` when the variety is empty.
pub fn affine_dimension(ideal: &Ideal, opts: &GbOptions) -> Result<Option<usize>> {
    let gb = reduced_basis(ideal, opts)?;
    if gb.is_unit() {
        return Ok(None);
    }
    Ok(Some(max_independent_set(gb.leading_monomials(), ideal.nvars()).len()))
}

/// Dimension of the projective variety `V(I)`, one less than its cone.
pub fn projective_dimension(ideal: &Ideal, opts: &GbOptions) -> Result<usize> {
    match affine_dimension(ideal, opts)? {
        None | Some(0) => Err(Error::EmptyVariety),
        Some(d) => Ok(d - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::{parse_polynomial, Ring};

    fn opts() -> GbOptions {
        GbOptions { budget: 1_000_000, cache_dir: None }
    }

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::projective(n - 1)).unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| p(n, g)).collect()).unwrap()
    }

    #[test]
    fn radical_membership_examples() {
        let q = ideal(3, &["x0*x1 + x0*x2 + x1*x2", "x0"]);
        assert!(radical_membership(&p(3, "x1*x2"), &q, &opts()).unwrap());
        let c = ideal(3, &["x0*(x1+x2) + (x1-x2)^2", "x0"]);
        assert!(!radical_membership(&p(3, "x1*x2"), &c, &opts()).unwrap());
        assert!(radical_membership(&p(1, "x0"), &ideal(1, &["x0^2"]), &opts()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        // (z - x y, x - 1) in variables x0 = z, x1 = x, x2 = y
        let i = ideal(3, &["x0 - x1*x2", "x1 - 1"]);
        assert!(eliminate(&i, &[1, 2], &opts()).unwrap().is_zero());
        // (x^2 + y^2, x - y), drop x -> (y^2)
        let i = ideal(2, &["x0^2 + x1^2", "x0 - x1"]);
        let e = eliminate(&i, &[0], &opts()).unwrap();
        assert_eq!(e.gens(), &[p(1, "x0^2")]);
    }

    #[test]
    fn intersections() {
        let e = intersect_ideals(&ideal(3, &["x0"]), &ideal(3, &["x1"]), &opts()).unwrap();
        assert_eq!(e.gens(), &[p(3, "x0*x1")]);
        let e = intersect_ideals(&ideal(3, &["x0", "x1"]), &ideal(3, &["x0", "x2"]), &opts()).unwrap();
        assert!(ideals_equal(&e, &ideal(3, &["x0", "x1*x2"]), &opts()).unwrap());
        let i = ideal(3, &["x1^2 - 2*x0*x2"]);
        let e = intersect_ideals(&i, &i, &opts()).unwrap();
        assert!(ideals_equal(&e, &i, &opts()).unwrap());
    }

    #[test]
    fn dimensions() {
        assert_eq!(projective_dimension(&ideal(3, &["x1^2 - 2*x0*x2"]), &opts()).unwrap(), 1);
        assert_eq!(projective_dimension(&Ideal::zero(3), &opts()).unwrap(), 2);
        assert_eq!(projective_dimension(&ideal(3, &["x0", "x1", "x2"]), &opts()), Err(Error::EmptyVariety));
        assert_eq!(projective_dimension(&ideal(3, &["x0", "1 - x0"]), &opts()), Err(Error::EmptyVariety));
        let twisted = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(projective_dimension(&twisted, &opts()).unwrap(), 1);
    }

    #[test]
    fn unit_detection() {
        assert!(is_unit_ideal(&ideal(1, &["x0", "1 - x0"]), &opts()).unwrap());
        assert!(!is_unit_ideal(&ideal(3, &["x1^2 - 2*x0*x2"]), &opts()).unwrap());
    }
}
