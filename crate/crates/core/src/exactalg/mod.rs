//! Exact arithmetic: rationals, polynomials, algebraic numbers, points.

pub mod algnum;
pub mod factor;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod point;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod univariate;

pub use algnum::{AlgNum, NumberField, Scalar};
pub use ideal::Ideal;
pub use linalg::Matrix;
pub use monomial::Monomial;
pub use parse::{parse_polynomial, Ring};
pub use point::{evaluate, hadamard_inverse, hadamard_point, hadamard_product_all, ProjPoint};
pub use poly::Polynomial;
pub use rat::Rat;
pub use roots::ComplexBox;
pub use univariate::UniPoly;
