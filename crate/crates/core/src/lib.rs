//! Exact verification tools for the Barth slice of instanton monads.
//!
//! The crate builds the linear fiber systems obtained by freezing half of the
//! slice data, measures their kernels over a large prime field or over the
//! rationals, and certifies explicit solutions (pencil condition, monad
//! condition, pointwise ranks, Jacobian rank).

pub mod census;
pub mod cli;
pub mod error;
pub mod field;
pub mod matrix;
pub mod monad;
pub mod poly;
pub mod rng;
pub mod selftest;
pub mod slice;

pub use error::{Error, Result};
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rng::SeededRng;
