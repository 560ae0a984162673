//! Algebraic numbers in a single primitive extension `Q(theta)`.

use super::rat::{fmt_rat, to_f64, Rat};
use super::roots::{eval_complex, isolated_root_is_real, refine_box, refine_real_root, ComplexBox};
use super::univariate::UniPoly;
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// `Q(theta)` with `theta` the unique root of `minpoly` inside `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    minpoly: UniPoly,
    root: ComplexBox,
}

impl NumberField {
    /// `minpoly` must be irreducible; it is made monic here.
    pub fn new(minpoly: UniPoly, root: ComplexBox) -> Self {
        debug_assert!(minpoly.deg() >= 1);
        debug_assert_eq!(super::roots::count_roots_in_box(&minpoly, &root), Some(1));
        NumberField { minpoly: minpoly.monic(), root }
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn root_box(&self) -> &ComplexBox {
        &self.root
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn is_real(&self) -> bool {
        isolated_root_is_real(&self.minpoly, &self.root)
    }

    /// Isolating box of `theta` narrower than `eps`.
    pub fn refined_box(&self, eps: &Rat) -> ComplexBox {
        if self.is_real() {
            let (lo, hi) = refine_real_root(&self.minpoly, &self.root.re.0, &self.root.re.1, eps);
            ComplexBox { re: (lo, hi), im: (Rat::zero(), Rat::zero()) }
        } else {
            refine_box(&self.minpoly, &self.root, eps)
        }
    }
}

/// An element `residue(theta)` of a [`NumberField`].
#[derive(Clone)]
pub struct AlgNum {
    field: Arc<NumberField>,
    residue: UniPoly,
}

impl AlgNum {
    pub fn new(field: Arc<NumberField>, residue: UniPoly) -> Self {
        let residue = residue.rem(field.minpoly());
        AlgNum { field, residue }
    }

    /// The generator `theta` itself.
    pub fn generator(field: Arc<NumberField>) -> Self {
        AlgNum::new(field, UniPoly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }

    /// Exact zero test: the residue is reduced modulo the minimal polynomial.
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rat> {
        (self.residue.deg() == 0).then(|| self.residue.coeff(0))
    }

    fn same_field(&self, o: &AlgNum) -> Result<()> {
        if Arc::ptr_eq(&self.field, &o.field) || self.field == o.field {
            Ok(())
        } else {
            Err(Error::IncompatibleExtensions)
        }
    }

    pub fn add(&self, o: &AlgNum) -> Result<AlgNum> {
        self.same_field(o)?;
        Ok(AlgNum { field: self.field.clone(), residue: self.residue.add(&o.residue) })
    }

    pub fn sub(&self, o: &AlgNum) -> Result<AlgNum> {
        self.same_field(o)?;
        Ok(AlgNum { field: self.field.clone(), residue: self.residue.sub(&o.residue) })
    }

    pub fn mul(&self, o: &AlgNum) -> Result<AlgNum> {
        self.same_field(o)?;
        Ok(AlgNum::new(self.field.clone(), self.residue.mul(&o.residue)))
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum { field: self.field.clone(), residue: self.residue.neg() }
    }

    pub fn scale(&self, c: &Rat) -> AlgNum {
        AlgNum { field: self.field.clone(), residue: self.residue.scale(c) }
    }

    pub fn add_rat(&self, c: &Rat) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            residue: self.residue.add(&UniPoly::constant(c.clone())),
        }
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<AlgNum> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = UniPoly::xgcd(&self.residue, self.field.minpoly());
        debug_assert!(g.deg() == 0);
        Some(AlgNum::new(self.field.clone(), s))
    }

    /// Center of an enclosing box of width below `eps`, plus a bound on the
    /// distance from that center to the true value.
    pub fn enclose(&self, eps: &Rat) -> ((Rat, Rat), Rat) {
        let bx = self.field.refined_box(eps);
        let (cx, cy) = bx.center();
        let value = eval_complex(&self.residue, &cx, &cy);
        // |r(z) - r(c)| <= sum |k a_k| R^{k-1} |z - c|
        let r = cx.abs() + cy.abs() + bx.width();
        let mut lip = Rat::zero();
        let mut pw = Rat::one();
        for (k, a) in self.residue.coeffs().iter().enumerate().skip(1) {
            lip += a.abs() * Rat::from_integer(k.into()) * &pw;
            pw *= &r;
        }
        let dist = bx.width() * Rat::from_integer(2.into());
        (value, lip * dist)
    }

    /// Interval cross-check of `is_zero`: `true` if the value is within the
    /// enclosure radius of zero after refining to `digits` decimal digits.
    pub fn approx_is_zero(&self, digits: u32) -> bool {
        let eps = Rat::new(One::one(), num_bigint::BigInt::from(10).pow(digits));
        let ((x, y), err) = self.enclose(&eps);
        x.abs() + y.abs() <= err
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let eps = Rat::new(One::one(), num_bigint::BigInt::from(1u64 << 50));
        let ((x, y), _) = self.enclose(&eps);
        (to_f64(&x), to_f64(&y))
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, o: &Self) -> bool {
        self.same_field(o).is_ok() && self.residue == o.residue
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "[{} | {} = 0 | ~{:.6}{:+.6}i]", self.residue.fmt_var("a"), self.field.minpoly().fmt_var("a"), x, y)
    }
}

/// A rational or algebraic coordinate value.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Rat(Rat),
    Alg(AlgNum),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::one())
    }

    /// Collapses algebraic values that happen to be rational.
    pub fn normalize(self) -> Self {
        match self {
            Scalar::Alg(a) => match a.as_rational() {
                Some(q) => Scalar::Rat(q),
                None => Scalar::Alg(a),
            },
            r => r,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Alg(a) => a.is_zero(),
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Alg(_) => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(a) => Some(a.field()),
        }
    }

    pub fn add(&self, o: &Scalar) -> Result<Scalar> {
        Ok(match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Alg(b)) | (Scalar::Alg(b), Scalar::Rat(a)) => Scalar::Alg(b.add_rat(a)),
            (Scalar::Alg(a), Scalar::Alg(b)) => Scalar::Alg(a.add(b)?),
        }
        .normalize())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Alg(a) => Scalar::Alg(a.neg()),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Result<Scalar> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Result<Scalar> {
        Ok(match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Alg(b)) | (Scalar::Alg(b), Scalar::Rat(a)) => Scalar::Alg(b.scale(a)),
            (Scalar::Alg(a), Scalar::Alg(b)) => Scalar::Alg(a.mul(b)?),
        }
        .normalize())
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) if a.is_zero() => None,
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Alg(a) => a.inv().map(|x| Scalar::Alg(x).normalize()),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            Scalar::Rat(q) => (to_f64(q), 0.0),
            Scalar::Alg(a) => a.to_f64(),
        }
    }
}

impl From<Rat> for Scalar {
    fn from(q: Rat) -> Self {
        Scalar::Rat(q)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{}", fmt_rat(q)),
            Scalar::Alg(a) => write!(f, "{}", a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;
    use crate::exactalg::roots::isolate_roots;
    use proptest::prelude::*;

    fn field(p: &UniPoly, k: usize) -> Arc<NumberField> {
        let boxes = isolate_roots(p);
        Arc::new(NumberField::new(p.clone(), boxes[k].clone()))
    }

    #[test]
    fn sqrt2_arithmetic() {
        let f = field(&UniPoly::from_ints(&[-2, 0, 1]), 1);
        assert!(f.is_real());
        let a = AlgNum::generator(f.clone());
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.as_rational(), Some(rat(2)));
        let inv = a.inv().unwrap();
        assert_eq!(inv.mul(&a).unwrap().as_rational(), Some(rat(1)));
        let (x, _) = a.to_f64();
        assert!((x - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn incompatible_fields() {
        let f = field(&UniPoly::from_ints(&[-2, 0, 1]), 1);
        let g = field(&UniPoly::from_ints(&[-3, 0, 1]), 1);
        let a = AlgNum::generator(f);
        let b = AlgNum::generator(g);
        assert_eq!(a.add(&b).unwrap_err(), Error::IncompatibleExtensions);
    }

    #[test]
    fn imaginary_unit() {
        let f = field(&UniPoly::from_ints(&[1, 0, 1]), 1);
        assert!(!f.is_real());
        let (x, y) = AlgNum::generator(f).to_f64();
        assert!(x.abs() < 1e-9 && (y.abs() - 1.0).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn zero_test_agrees_with_intervals(
            c in prop::collection::vec(-5i64..=5, 3),
            k in 0usize..3,
            which in 0usize..3,
        ) {
            // fields of degree 3; residues r = c0 + c1 a + c2 a^2, plus exact
            // zeros built as (a^3 - 2) rewritten
            let p = match which {
                0 => UniPoly::from_ints(&[-2, 0, 0, 1]),
                1 => UniPoly::from_ints(&[1, 1, 0, 1]),
                _ => UniPoly::from_ints(&[-3, 1, 0, 1]),
            };
            let f = field(&p, k);
            let r = AlgNum::new(f.clone(), UniPoly::from_ints(&c));
            prop_assert_eq!(r.is_zero(), r.approx_is_zero(200));
            let z = AlgNum::new(f, p.mul(&UniPoly::from_ints(&c)));
            prop_assert!(z.is_zero() && z.approx_is_zero(200));
        }
    }
}
