//! Exact scalars, sparse polynomials, polynomial matrices.

pub mod field;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use field::{format_rational, parse_rational, q, qq, Field, Fp, Modulus, DEFAULT_PRIMES, Q};
pub use matrix::{jacobian, subsets, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{MvPoly, QPoly, Ring};
pub use univariate::{simplest_between, RootInterval, UPoly};
