//! Projective points with exact coordinates.

use super::algnum::{NumberField, Scalar};
use super::poly::Polynomial;
use super::rat::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// A point `(p_0 : ... : p_N)` with at least one nonzero coordinate.
#[derive(Clone)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let coords: Vec<Scalar> = coords.into_iter().map(Scalar::normalize).collect();
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let mut field: Option<&Arc<NumberField>> = None;
        for c in &coords {
            if let Some(f) = c.field() {
                match field {
                    Some(g) if !(Arc::ptr_eq(f, g) || **f == **g) => return Err(Error::IncompatibleExtensions),
                    _ => field = Some(f),
                }
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_rats(coords: Vec<Rat>) -> Result<Self> {
        Self::new(coords.into_iter().map(Scalar::Rat).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::from_rats(coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// All-ones point, the identity for the coordinate-wise product.
    pub fn ones(n: usize) -> Self {
        ProjPoint { coords: vec![Scalar::one(); n] }
    }

    /// Parses colon-separated rationals such as `0:1:-1` or `1:1:1/8`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let mut coords = Vec::new();
        let mut pos = 0;
        for part in text.split(':') {
            let q = parse_rat(part).ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("invalid rational coordinate '{}'", part.trim()),
            })?;
            coords.push(q);
            pos += part.len() + 1;
        }
        Self::from_rats(coords)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    /// Rational coordinates, if every coordinate is rational.
    pub fn as_rats(&self) -> Option<Vec<Rat>> {
        self.coords.iter().map(|c| c.as_rat().cloned()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.as_rat().is_some())
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.coords.iter().find_map(Scalar::field)
    }

    /// Number of zero coordinates `z(p)`.
    pub fn zero_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_zero()).count()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.coords[i].is_zero()).collect()
    }

    pub fn first_nonzero(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point")
    }

    /// Representative with first nonzero coordinate equal to 1.
    pub fn normalized(&self) -> ProjPoint {
        let j = self.first_nonzero();
        let k = self.coords[j].inv().unwrap();
        ProjPoint {
            coords: self.coords.iter().map(|c| c.mul(&k).unwrap()).collect(),
        }
    }

    /// Coprime integer representative with positive first nonzero entry;
    /// `None` for non-rational points.
    pub fn primitive_integer(&self) -> Option<Vec<BigInt>> {
        let q = self.normalized().as_rats()?;
        let l = q.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let ints: Vec<BigInt> = q.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
        Some(ints.into_iter().map(|c| c / &g).collect())
    }

    /// Projective equality: `p_i q_j = p_j q_i` for all `i, j`.
    pub fn proj_eq(&self, o: &ProjPoint) -> bool {
        if self.len() != o.len() {
            return false;
        }
        let a = self.normalized();
        let b = o.normalized();
        a.coords == b.coords
    }

    /// Sum of the heights of the primitive integer coordinates, used to
    /// order witnesses from simplest to most complicated.
    pub fn height_key(&self) -> Option<(BigInt, Vec<BigInt>)> {
        let v = self.primitive_integer()?;
        let h = v.iter().map(|c| c.abs()).sum();
        Some((h, v))
    }

    pub fn scale(&self, k: &Scalar) -> Result<ProjPoint> {
        ProjPoint::new(self.coords.iter().map(|c| c.mul(k)).collect::<Result<_>>()?)
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &Self) -> bool {
        self.proj_eq(o)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.primitive_integer() {
            let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            return write!(f, "({})", s.join(":"));
        }
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(":"))
    }
}

/// Rational coordinates as strings, for reports.
pub fn point_strings(p: &ProjPoint) -> Vec<String> {
    match p.primitive_integer() {
        Some(v) => v.iter().map(|c| c.to_string()).collect(),
        None => p
            .coords()
            .iter()
            .map(|c| match c {
                Scalar::Rat(q) => fmt_rat(q),
                other => other.to_string(),
            })
            .collect(),
    }
}

/// Exact value of `f` at the coordinates of `p`.
pub fn evaluate(f: &Polynomial, p: &ProjPoint) -> Result<Scalar> {
    if f.nvars() != p.len() {
        return Err(Error::RingMismatch { expected: f.nvars(), found: p.len() });
    }
    if let Some(q) = p.as_rats() {
        return Ok(Scalar::Rat(f.eval(&q)));
    }
    let mut acc = Scalar::zero();
    for (m, c) in f.terms() {
        let mut t = Scalar::Rat(c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = t.mul(&p.coords[i].pow(e)?)?;
            }
        }
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

/// Coordinate-wise product `p * q`.
pub fn hadamard_point(p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    if p.len() != q.len() {
        return Err(Error::RingMismatch { expected: p.len(), found: q.len() });
    }
    let coords = p
        .coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| a.mul(b))
        .collect::<Result<Vec<_>>>()?;
    match ProjPoint::new(coords) {
        Err(Error::ZeroPoint) => Err(Error::AllZeroProduct),
        r => r,
    }
}

/// Product of a nonempty list of points.
pub fn hadamard_product_all(points: &[ProjPoint]) -> Result<ProjPoint> {
    let mut it = points.iter();
    let mut acc = it.next().ok_or_else(|| Error::Invalid("empty product".into()))?.clone();
    for p in it {
        acc = hadamard_point(&acc, p)?;
    }
    Ok(acc)
}

/// Coordinate-wise reciprocal.
pub fn hadamard_inverse(p: &ProjPoint) -> Result<ProjPoint> {
    let coords = p
        .coords
        .iter()
        .enumerate()
        .map(|(i, c)| c.inv().ok_or(Error::ZeroCoordinate(i)))
        .collect::<Result<Vec<_>>>()?;
    ProjPoint::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::{parse_polynomial, Ring};
    use proptest::prelude::*;

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    #[test]
    fn evaluate_on_c() {
        let f = parse_polynomial("x0*(x1+x2) + (x1-x2)^2", &Ring::projective(2)).unwrap();
        assert!(evaluate(&f, &pt("-1:6:3")).unwrap().is_zero());
        assert!(evaluate(&f, &pt("9:1:-2")).unwrap().is_zero());
    }

    #[test]
    fn homogeneous_scaling() {
        let f = parse_polynomial("x0*x1 + x0*x2 + x1*x2", &Ring::projective(2)).unwrap();
        let v = evaluate(&f, &pt("3:3:3")).unwrap();
        assert_eq!(v, Scalar::Rat(Rat::from_integer(27.into())));
    }

    #[test]
    fn products() {
        let p = hadamard_product_all(&[pt("0:1:1"), pt("-1:6:3"), pt("9:1:-2")]).unwrap();
        assert_eq!(p, pt("0:1:-1"));
        assert_eq!(hadamard_point(&pt("2:3:5"), &ProjPoint::ones(3)).unwrap(), pt("2:3:5"));
        assert_eq!(hadamard_point(&pt("1:0"), &pt("0:1")).unwrap_err(), Error::AllZeroProduct);
    }

    #[test]
    fn inverses() {
        let p = pt("1:2:4");
        let inv = hadamard_inverse(&p).unwrap();
        assert_eq!(inv, pt("1:1/2:1/4"));
        assert_eq!(hadamard_point(&p, &inv).unwrap(), ProjPoint::ones(3));
        assert_eq!(hadamard_inverse(&ProjPoint::ones(4)).unwrap(), ProjPoint::ones(4));
        assert_eq!(hadamard_inverse(&pt("0:1:1")).unwrap_err(), Error::ZeroCoordinate(0));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(pt("(-2:20:30)").to_string(), "(1:-10:-15)");
        assert!(matches!(ProjPoint::parse("0:0"), Err(Error::ZeroPoint)));
        assert!(matches!(ProjPoint::parse("1:x"), Err(Error::Syntax { pos: 2, .. })));
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        prop_oneof![-50i64..=-1, 1i64..=50]
    }

    proptest! {
        #[test]
        fn product_assoc_comm(
            a in prop::collection::vec(nonzero(), 4),
            b in prop::collection::vec(nonzero(), 4),
            c in prop::collection::vec(nonzero(), 4),
        ) {
            let (a, b, c) = (ProjPoint::from_ints(&a).unwrap(), ProjPoint::from_ints(&b).unwrap(), ProjPoint::from_ints(&c).unwrap());
            let ab = hadamard_point(&a, &b).unwrap();
            prop_assert_eq!(&ab, &hadamard_point(&b, &a).unwrap());
            let l = hadamard_point(&ab, &c).unwrap();
            let r = hadamard_point(&a, &hadamard_point(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
