//! Dense univariate polynomials over the rationals.

use super::rat::{denom_lcm, fmt_rat, numer_gcd, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        (0..k).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let k = &r[i] * &inv;
            for (j, c) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &k * c;
            }
            q[i - dd] = k;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        while !b.is_zero() {
            let r = a.rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = r0.lc().recip();
        (r0.scale(&k), s0.scale(&k), t0.scale(&k))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = denom_lcm(self.coeffs.iter());
        let scaled: Vec<Rat> = self
            .coeffs
            .iter()
            .map(|c| c * Rat::from_integer(l.clone()))
            .collect();
        let g = numer_gcd(scaled.iter());
        let mut k = Rat::new(BigInt::one(), g);
        if scaled.last().unwrap().is_negative() {
            k = -k;
        }
        UniPoly::new(scaled.into_iter().map(|c| c * &k).collect())
    }

    /// Integer coefficients of the primitive part.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part()
            .coeffs
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Composition `self(o(t))`.
    pub fn compose(&self, o: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(o).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, i) in (0..self.coeffs.len()).rev().filter(|&i| !self.coeffs[i].is_zero()).enumerate() {
            let c = &self.coeffs[i];
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&fmt_rat(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", fmt_rat(&a), mono));
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Signed remainder sequence `(p, q, -rem(p, q), ...)`.
pub fn signed_remainder_sequence(p: &UniPoly, q: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    if q.is_zero() {
        return seq;
    }
    seq.push(q.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs and tames coefficient growth
        let r = r.neg();
        let pp = r.primitive_part();
        let r = if pp.lc().is_positive() == r.lc().is_positive() {
            pp
        } else {
            pp.neg()
        };
        seq.push(r);
    }
    seq
}

pub fn sign_variations(seq: &[UniPoly], x: &Rat) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy index of `q/p` over `(a, b)`; requires `p(a) p(b) != 0`.
pub fn cauchy_index(q: &UniPoly, p: &UniPoly, a: &Rat, b: &Rat) -> i64 {
    let seq = signed_remainder_sequence(p, q);
    sign_variations(&seq, a) as i64 - sign_variations(&seq, b) as i64
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_real_roots(p: &UniPoly, a: &Rat, b: &Rat) -> usize {
    if p.deg() == 0 {
        return 0;
    }
    let sf = p.squarefree_part();
    let seq = signed_remainder_sequence(&sf, &sf.derivative());
    let va = sign_variations(&seq, a);
    let vb = sign_variations(&seq, b);
    va.saturating_sub(vb)
}

/// Bound `B` with every complex root satisfying `|z| < B` (Cauchy).
pub fn root_bound(p: &UniPoly) -> Rat {
    let lc = p.lc().abs();
    let m = p.coeffs[..p.deg()]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    m + Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratio};

    #[test]
    fn division_and_gcd() {
        let f = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let g = UniPoly::from_ints(&[1, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q, UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&UniPoly::from_ints(&[-1, 0, 0, 1])), UniPoly::from_ints(&[-1, 1]));
        let (d, s, t) = UniPoly::xgcd(&f, &UniPoly::from_ints(&[2, 1]));
        assert_eq!(d, UniPoly::one());
        assert_eq!(s.mul(&f).add(&t.mul(&UniPoly::from_ints(&[2, 1]))), UniPoly::one());
    }

    #[test]
    fn squarefree() {
        let f = UniPoly::from_ints(&[1, -1]).pow(3).mul(&UniPoly::from_ints(&[2, 1]));
        assert_eq!(f.squarefree_part(), UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[2, 1])).monic());
    }

    #[test]
    fn sturm_counts() {
        let f = UniPoly::from_ints(&[-2, 0, 1]); // roots +-sqrt2
        assert_eq!(count_real_roots(&f, &rat(-2), &rat(2)), 2);
        assert_eq!(count_real_roots(&f, &rat(0), &rat(2)), 1);
        assert_eq!(count_real_roots(&UniPoly::from_ints(&[1, 0, 1]), &rat(-9), &rat(9)), 0);
        assert_eq!(count_real_roots(&f.pow(2), &ratio(-3, 2), &rat(9)), 2);
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[-2, 0, 1]).to_string(), "t^2 - 2");
    }
}
