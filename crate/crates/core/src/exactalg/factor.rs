//! Factorization of univariate polynomials over the rationals
//! (squarefree decomposition followed by Berlekamp–Zassenhaus: factor
//! modulo a small prime, Hensel-lift, recombine).

use super::univariate::UniPoly;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Monic irreducible factors with multiplicities, ordered by degree and
/// then by coefficients. Constants have no factors.
pub fn factor(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&sf) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    out
}

/// Yun's algorithm: `p = c * prod a_i^i` with squarefree, coprime monic `a_i`.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative();
    let c = p.gcd(&dp);
    let mut w = p.divrem(&c).0;
    let mut y = dp.divrem(&c).0;
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.gcd(&z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.divrem(&g).0;
        y = z.divrem(&g).0;
        z = y.sub(&w.derivative());
        i += 1;
    }
    out
}

/// Irreducible monic factors of a squarefree polynomial.
pub fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    if p.deg() == 0 {
        return vec![];
    }
    if p.deg() == 1 {
        return vec![p.monic()];
    }
    let f = p.to_integer_coeffs();
    zassenhaus(&f)
        .into_iter()
        .map(|g| UniPoly::from_bigints(&g).monic())
        .collect()
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // pick the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut candidates: Vec<u64> = PRIMES.to_vec();
    candidates.extend([101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199]);
    candidates.extend([1009, 1013, 1019, 10007, 10009, 65537]);
    for &p in &candidates {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        let dfp = fp_derivative(&fp, p);
        if fp_gcd(&fp, &dfp, p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp_monic(&fp, p), p, &mut rng);
        let better = best.as_ref().map_or(true, |(_, b)| facs.len() < b.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("no suitable prime for factorization");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // coefficient bound for lc * (monic factor)
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + BigInt::one();
    let bound = lc.abs() * (BigInt::one() << n) * norm2;
    let mut m = BigInt::from(p);
    let mut steps = 0;
    while m <= &bound * 2 {
        m = &m * &m;
        steps += 1;
    }
    let lifted = multi_lift(f, &modular, p, steps);

    recombine(f.to_vec(), lifted, &m)
}

fn recombine(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut s = 1;
    let half = m / 2;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), s) {
            let lc = f.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = zm_mul(&g, &lifted[i], m);
            }
            let g: Vec<BigInt> = g
                .into_iter()
                .map(|c| if c > half { c - m } else { c })
                .collect();
            let g = primitive(&g);
            if let Some(q) = exact_div(&f, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q;
                let mut k = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&k);
                    k += 1;
                    keep
                });
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

fn primitive(g: &[BigInt]) -> Vec<BigInt> {
    let mut g: Vec<BigInt> = trim_z(g.to_vec());
    let c = g.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if !c.is_zero() {
        for x in g.iter_mut() {
            *x /= &c;
        }
    }
    if g.last().map_or(false, |x| x.is_negative()) {
        for x in g.iter_mut() {
            *x = -x.clone();
        }
    }
    g
}

fn trim_z(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// `f / g` over the integers if the division is exact.
fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if g.len() > f.len() {
        return None;
    }
    // cheap constant-term test first
    if !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
        return None;
    }
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for i in (dg..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (k, rem) = r[i].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in g.iter().enumerate() {
            r[i - dg + j] -= &k * c;
        }
        q[i - dg] = k;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim_z(q))
    } else {
        None
    }
}

// ---- arithmetic in Z/mZ[x] ----

fn zm_norm(v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    trim_z(v.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_norm(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
        m,
    )
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_norm(out, m)
}

/// Division by a monic polynomial modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![], zm_norm(r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let k = r[i].mod_floor(m);
        if k.is_zero() {
            continue;
        }
        for (j, c) in b.iter().enumerate() {
            r[i - db + j] -= &k * c;
        }
        q[i - db] = k;
    }
    r.truncate(db);
    (zm_norm(q, m), zm_norm(r, m))
}

fn lift_fp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: factorization `f = g h` with Bezout
/// coefficients `s g + t h = 1` modulo `m` becomes one modulo `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zm_sub(f, &zm_mul(g, h, &m2), &m2);
    let (q, r) = zm_divrem_monic(&zm_mul(s, &e, &m2), h, &m2);
    let g2 = zm_add(&zm_add(g, &zm_mul(t, &e, &m2), &m2), &zm_mul(&q, g, &m2), &m2);
    let h2 = zm_add(h, &r, &m2);
    let b = zm_sub(
        &zm_add(&zm_mul(s, &g2, &m2), &zm_mul(t, &h2, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = zm_divrem_monic(&zm_mul(s, &b, &m2), &h2, &m2);
    let s2 = zm_sub(s, &d, &m2);
    let t2 = zm_sub(&zm_sub(t, &zm_mul(t, &b, &m2), &m2), &zm_mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc * prod us` from `p` to `p^(2^steps)`; returns monic lifts.
fn multi_lift(f: &[BigInt], us: &[Vec<u64>], p: u64, steps: usize) -> Vec<Vec<BigInt>> {
    let mut target = BigInt::from(p);
    for _ in 0..steps {
        target = &target * &target;
    }
    let mut out = Vec::new();
    let mut f = zm_norm(f.to_vec(), &target);
    for k in 0..us.len() {
        if k + 1 == us.len() {
            let lc = f.last().unwrap().clone();
            let inv = mod_inverse(&lc, &target);
            out.push(zm_norm(f.iter().map(|c| c * &inv).collect(), &target));
            break;
        }
        let h = us[k].clone();
        let fp = to_fp(&f, p);
        let lcp = *fp.last().unwrap();
        let mut g = vec![lcp];
        for u in &us[k + 1..] {
            g = fp_mul(&g, u, p);
        }
        let (one, s, t) = fp_xgcd(&g, &h, p);
        debug_assert_eq!(one, vec![1]);
        let (mut g, mut h, mut s, mut t) = (lift_fp(&g), lift_fp(&h), lift_fp(&s), lift_fp(&t));
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            let r = hensel_step(&f, &g, &h, &s, &t, &m);
            g = r.0;
            h = r.1;
            s = r.2;
            t = r.3;
            m = &m * &m;
        }
        out.push(h);
        f = g;
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

// ---- arithmetic in F_p[x], p < 2^31 ----

fn to_fp(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    fp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![], fp_trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let k = r[i] * inv % p;
        if k == 0 {
            continue;
        }
        for (j, &c) in b.iter().enumerate() {
            r[i - db + j] = (r[i - db + j] + p - k * c % p) % p;
        }
        q[i - db] = k;
    }
    r.truncate(db);
    (fp_trim(q), fp_trim(r))
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| -> Vec<u64> { fp_trim(v.into_iter().map(|c| c * inv % p).collect()) };
    (sc(r0), sc(s0), sc(t0))
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    fp_divrem(&fp_mul(a, b, p), m, p).1
}

fn fp_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        r = fp_mulmod(&r, &r, m, p);
        if e.bit(i) {
            r = fp_mulmod(&r, &b, m, p);
        }
    }
    r
}

/// Complete factorization of a monic squarefree polynomial over `F_p`.
fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    // distinct-degree factorization
    let x = vec![0u64, 1];
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut d = 1;
    while rest.len() - 1 >= 2 * d {
        h = fp_powmod(&h, &BigUint::from(p), &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
            equal_degree(&g, d, p, rng, &mut out);
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp_monic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = g.len() - 1;
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = fp_trim((0..n).map(|_| rng.random_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &[1], p);
        let c = fp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp_divrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    fn product(fs: &[(UniPoly, usize)]) -> UniPoly {
        fs.iter()
            .fold(UniPoly::one(), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = up(&[-2, 0, 1]);
        assert_eq!(factor(&f), vec![(f.clone(), 1)]);
        let g = up(&[1, 1, 1, 1, 1]); // cyclotomic Phi_5
        assert_eq!(factor(&g).len(), 1);
    }

    #[test]
    fn splits_products() {
        // (t^2 - 2)(t^2 + 1)(3t - 1)^2 (t + 5)
        let f = up(&[-2, 0, 1])
            .mul(&up(&[1, 0, 1]))
            .mul(&up(&[-1, 3]).pow(2))
            .mul(&up(&[5, 1]));
        let fs = factor(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs).monic(), f.monic());
        assert!(fs.iter().any(|(g, k)| *k == 2 && g.deg() == 1));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // t^4 - 10 t^2 + 1 is irreducible but splits modulo every prime
        let f = up(&[1, 0, -10, 0, 1]);
        assert_eq!(factor(&f).len(), 1);
        // (t^4 - 10t^2 + 1)(t^4 + 1)
        let g = f.mul(&up(&[1, 0, 0, 0, 1]));
        let fs = factor(&g);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs).monic(), g.monic());
    }

    #[test]
    fn large_coefficients() {
        let a = up(&[123457, -9876, 31]);
        let b = up(&[-99991, 0, 0, 7]);
        let f = a.mul(&b);
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs).monic(), f.monic());
    }
}
