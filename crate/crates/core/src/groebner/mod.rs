//! Gröbner bases, ideal operations and Hilbert polynomials.

pub mod buchberger;
pub mod hilbert;
pub mod ideal;
pub mod linear;
pub mod solve;

pub use buchberger::{groebner_basis, is_groebner, is_reduced, normal_form};
pub use hilbert::{hilbert_from_leading, HilbertData, HilbertReport};
pub use ideal::IdealHandle;
pub use solve::rational_solutions;
pub use linear::{substitute_linear, LinearReduction};
