//! Exact complex root isolation for rational univariate polynomials.
//!
//! Roots inside a rectangle are counted with the argument principle, where
//! the winding number along each edge is an exact Cauchy index computed
//! from a signed remainder sequence. Nothing here uses floating point.

use super::rat::{ratio, to_f64, Rat};
use super::univariate::{cauchy_index, count_real_roots, root_bound, UniPoly};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Axis-parallel rectangle `[re_lo, re_hi] x [im_lo, im_hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexBox {
    pub re: (Rat, Rat),
    pub im: (Rat, Rat),
}

/// Serializable form of a [`ComplexBox`] with rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxRepr {
    pub re: [String; 2],
    pub im: [String; 2],
}

impl ComplexBox {
    pub fn center(&self) -> (Rat, Rat) {
        let two = Rat::from_integer(2.into());
        (
            (&self.re.0 + &self.re.1) / &two,
            (&self.im.0 + &self.im.1) / two,
        )
    }

    pub fn width(&self) -> Rat {
        let w = &self.re.1 - &self.re.0;
        let h = &self.im.1 - &self.im.0;
        if w > h {
            w
        } else {
            h
        }
    }

    pub fn center_f64(&self) -> (f64, f64) {
        let (x, y) = self.center();
        (to_f64(&x), to_f64(&y))
    }

    pub fn contains_real_axis(&self) -> bool {
        !self.im.0.is_positive() && !self.im.1.is_negative()
    }

    fn quadrants(&self, xm: &Rat, ym: &Rat) -> [ComplexBox; 4] {
        let (a, b) = self.re.clone();
        let (c, d) = self.im.clone();
        [
            ComplexBox { re: (a.clone(), xm.clone()), im: (c.clone(), ym.clone()) },
            ComplexBox { re: (xm.clone(), b.clone()), im: (c, ym.clone()) },
            ComplexBox { re: (a, xm.clone()), im: (ym.clone(), d.clone()) },
            ComplexBox { re: (xm.clone(), b), im: (ym.clone(), d) },
        ]
    }

    pub fn to_repr(&self) -> BoxRepr {
        use super::rat::fmt_rat;
        BoxRepr {
            re: [fmt_rat(&self.re.0), fmt_rat(&self.re.1)],
            im: [fmt_rat(&self.im.0), fmt_rat(&self.im.1)],
        }
    }

    pub fn from_repr(r: &BoxRepr) -> Option<Self> {
        use super::rat::parse_rat;
        Some(ComplexBox {
            re: (parse_rat(&r.re[0])?, parse_rat(&r.re[1])?),
            im: (parse_rat(&r.im[0])?, parse_rat(&r.im[1])?),
        })
    }
}

/// `p(z0 + s*h)` split into real and imaginary parts as polynomials in `s`.
fn along_segment(p: &UniPoly, z0: (&Rat, &Rat), h: (&Rat, &Rat)) -> (UniPoly, UniPoly) {
    let x = UniPoly::new(vec![z0.0.clone(), h.0.clone()]);
    let y = UniPoly::new(vec![z0.1.clone(), h.1.clone()]);
    let (mut a, mut b) = (UniPoly::zero(), UniPoly::zero());
    for c in p.coeffs().iter().rev() {
        let na = a.mul(&x).sub(&b.mul(&y)).add(&UniPoly::constant(c.clone()));
        let nb = a.mul(&y).add(&b.mul(&x));
        a = na;
        b = nb;
    }
    (a, b)
}

/// Evaluates `p` at the complex rational `x + iy`.
pub fn eval_complex(p: &UniPoly, x: &Rat, y: &Rat) -> (Rat, Rat) {
    let zero = Rat::zero();
    let (a, b) = along_segment(p, (x, y), (&zero, &zero));
    (a.coeff(0), b.coeff(0))
}

fn has_root_in_unit_interval(g: &UniPoly) -> bool {
    if g.deg() == 0 {
        return false;
    }
    g.eval(&Rat::zero()).is_zero() || count_real_roots(g, &Rat::zero(), &Rat::one()) > 0
}

/// Number of roots of `p` strictly inside `bx`, counted with multiplicity.
/// `None` when a root lies on the boundary.
pub fn count_roots_in_box(p: &UniPoly, bx: &ComplexBox) -> Option<usize> {
    let verts = [
        (bx.re.0.clone(), bx.im.0.clone()),
        (bx.re.1.clone(), bx.im.0.clone()),
        (bx.re.1.clone(), bx.im.1.clone()),
        (bx.re.0.clone(), bx.im.1.clone()),
    ];
    let mut edges = Vec::with_capacity(4);
    for k in 0..4 {
        let (x0, y0) = &verts[k];
        let (x1, y1) = &verts[(k + 1) % 4];
        let h = (x1 - x0, y1 - y0);
        let (u, v) = along_segment(p, (x0, y0), (&h.0, &h.1));
        if has_root_in_unit_interval(&u.gcd(&v)) {
            return None;
        }
        edges.push((u, v));
    }
    // rotate by w = 1 + k i until the imaginary part is nonzero at every vertex
    'rot: for k in 0i64..64 {
        let kq = Rat::from_integer(k.into());
        let mut total = 0i64;
        let mut parts = Vec::with_capacity(4);
        for (u, v) in &edges {
            let re = u.sub(&v.scale(&kq));
            let im = v.add(&u.scale(&kq));
            if im.is_zero() || im.eval(&Rat::zero()).is_zero() || im.eval(&Rat::one()).is_zero() {
                continue 'rot;
            }
            parts.push((re, im));
        }
        for (re, im) in &parts {
            total += cauchy_index(re, im, &Rat::zero(), &Rat::one());
        }
        debug_assert!(total >= 0 && total % 2 == 0);
        return Some((total / 2) as usize);
    }
    unreachable!("no admissible rotation found")
}

const SHIFTS: [(i64, i64); 8] = [(0, 1), (1, 7), (-1, 9), (2, 11), (-2, 13), (3, 17), (-3, 19), (1, 23)];

/// Splits a box with `count` roots into quadrants with their root counts,
/// shifting the split point off any root.
fn split(p: &UniPoly, bx: &ComplexBox, count: usize) -> Vec<(ComplexBox, usize)> {
    let (cx, cy) = bx.center();
    let w = &bx.re.1 - &bx.re.0;
    let h = &bx.im.1 - &bx.im.0;
    for (n, d) in SHIFTS {
        let xm = &cx + &w * ratio(n, d * 4);
        let ym = &cy + &h * ratio(-n, d * 5);
        let quads = bx.quadrants(&xm, &ym);
        let mut counts = Vec::with_capacity(4);
        let mut ok = true;
        let mut sum = 0;
        for (i, q) in quads.iter().enumerate() {
            if i == 3 {
                // last count is forced, but still reject boundary roots
                if count_roots_in_box(p, q).is_none() {
                    ok = false;
                    break;
                }
                counts.push(count - sum);
                break;
            }
            match count_roots_in_box(p, q) {
                Some(c) => {
                    sum += c;
                    counts.push(c);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return quads.into_iter().zip(counts).filter(|(_, c)| *c > 0).collect();
        }
    }
    panic!("could not split isolating box");
}

/// Isolating boxes for the distinct complex roots of `p`, sorted by real
/// part and then imaginary part of their centers.
pub fn isolate_roots(p: &UniPoly) -> Vec<ComplexBox> {
    let sf = p.squarefree_part();
    let n = sf.deg();
    if n == 0 {
        return vec![];
    }
    let mut r = Rat::one();
    let bound = root_bound(&sf);
    while r < bound {
        r *= Rat::from_integer(2.into());
    }
    let mut start = None;
    for (k, d) in [(1i64, 3i64), (2, 7), (3, 11), (5, 13)] {
        let rr = &r + ratio(k, d);
        let bx = ComplexBox {
            re: (-&rr - ratio(1, 5), rr.clone()),
            im: (-rr.clone() + ratio(1, 9), rr + ratio(1, 7)),
        };
        if let Some(c) = count_roots_in_box(&sf, &bx) {
            debug_assert_eq!(c, n);
            start = Some(bx);
            break;
        }
    }
    let start = start.expect("no root-free boundary for the initial box");
    let mut out = Vec::new();
    let mut queue = vec![(start, n)];
    while let Some((bx, c)) = queue.pop() {
        if c == 1 {
            out.push(bx);
            continue;
        }
        queue.extend(split(&sf, &bx, c));
    }
    out.sort_by(|a, b| {
        let (ax, ay) = a.center();
        let (bx, by) = b.center();
        ax.cmp(&bx).then(ay.cmp(&by))
    });
    out
}

/// Shrinks an isolating box of a squarefree `p` until its width is below `eps`.
pub fn refine_box(p: &UniPoly, bx: &ComplexBox, eps: &Rat) -> ComplexBox {
    let coarse = ratio(1, 1 << 20);
    let mut cur = bx.clone();
    while &cur.width() >= eps {
        if cur.width() < coarse {
            if let Some(b) = newton_box(p, &cur, eps) {
                return b;
            }
        }
        let next = split(p, &cur, 1);
        debug_assert_eq!(next.len(), 1);
        cur = next.into_iter().next().unwrap().0;
    }
    cur
}

fn round_dyadic(x: &Rat, bits: u64) -> Rat {
    let scale = Rat::from_integer(num_bigint::BigInt::one() << bits);
    (x * &scale).round() / scale
}

/// Newton iteration from the box center with dyadic rounding, certified by
/// an exact root count on a tiny box inside `bx`.
fn newton_box(p: &UniPoly, bx: &ComplexBox, eps: &Rat) -> Option<ComplexBox> {
    let dp = p.derivative();
    let bits = 2 * (eps.denom().bits() + 8) + (eps.numer().bits());
    let (mut x, mut y) = bx.center();
    let quarter = eps / Rat::from_integer(4.into());
    let small = eps / Rat::from_integer(16.into());
    for _ in 0..80 {
        let (a, b) = eval_complex(p, &x, &y);
        let (c, d) = eval_complex(&dp, &x, &y);
        let den = &c * &c + &d * &d;
        if den.is_zero() {
            return None;
        }
        let sx = (&a * &c + &b * &d) / &den;
        let sy = (&b * &c - &a * &d) / &den;
        x = round_dyadic(&(&x - &sx), bits);
        y = round_dyadic(&(&y - &sy), bits);
        if sx.abs() < small && sy.abs() < small {
            let cand = ComplexBox {
                re: (&x - &quarter, &x + &quarter),
                im: (&y - &quarter, &y + &quarter),
            };
            let inside = cand.re.0 > bx.re.0 && cand.re.1 < bx.re.1 && cand.im.0 > bx.im.0 && cand.im.1 < bx.im.1;
            return (inside && count_roots_in_box(p, &cand) == Some(1)).then_some(cand);
        }
    }
    None
}

/// True iff the single root of `p` isolated by `bx` is real.
pub fn isolated_root_is_real(p: &UniPoly, bx: &ComplexBox) -> bool {
    bx.contains_real_axis() && count_real_roots(p, &bx.re.0, &bx.re.1) > 0
}

/// Refines a real root bracketed by `(lo, hi]` with `p(lo) != 0` by
/// bisection until the bracket is narrower than `eps`.
pub fn refine_real_root(p: &UniPoly, lo: &Rat, hi: &Rat, eps: &Rat) -> (Rat, Rat) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let sign_lo = p.eval(&lo).is_positive();
    let two = Rat::from_integer(2.into());
    if p.eval(&hi).is_zero() {
        return (hi.clone(), hi);
    }
    while &(&hi - &lo) >= eps {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return (mid.clone(), mid);
        }
        if v.is_positive() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn counts_in_box() {
        // t^2 + 1: roots +-i
        let p = UniPoly::from_ints(&[1, 0, 1]);
        let upper = ComplexBox { re: (rat(-1), rat(1)), im: (ratio(1, 2), rat(2)) };
        assert_eq!(count_roots_in_box(&p, &upper), Some(1));
        let big = ComplexBox { re: (rat(-3), rat(3)), im: (rat(-3), rat(3)) };
        assert_eq!(count_roots_in_box(&p, &big), Some(2));
        let through = ComplexBox { re: (rat(-1), rat(1)), im: (rat(1), rat(2)) };
        assert_eq!(count_roots_in_box(&p, &through), None);
    }

    #[test]
    fn isolates_all_roots() {
        let p = UniPoly::from_ints(&[-2, 0, 1]).mul(&UniPoly::from_ints(&[1, 0, 1]));
        let boxes = isolate_roots(&p);
        assert_eq!(boxes.len(), 4);
        let reals = boxes.iter().filter(|b| isolated_root_is_real(&p, b)).count();
        assert_eq!(reals, 2);
        let fine = refine_box(&p, &boxes[0], &ratio(1, 1000));
        let (x, y) = fine.center_f64();
        assert!((x + 2f64.sqrt()).abs() < 1e-3 && y.abs() < 1e-3);
    }

    #[test]
    fn real_refinement() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let (lo, hi) = refine_real_root(&p, &rat(1), &rat(2), &ratio(1, 1 << 40));
        assert!(to_f64(&lo) <= 2f64.sqrt() && 2f64.sqrt() <= to_f64(&hi));
    }
}
