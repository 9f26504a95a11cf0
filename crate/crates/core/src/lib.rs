//! Exact computational algebra for amplituhedron boundary curves and a genus-one
//! positive geometry bounded by a cubic surface and five planes.

pub mod error;
pub mod amplituhedron;
pub mod delpezzo;
pub mod exactalg;
pub mod grassmann;
pub mod groebner;

pub use error::{Error, Result};
