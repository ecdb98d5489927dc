//! Exact computations around alternating sign matrices, loop models, the
//! qKZ equation and multidegrees.

pub mod geometry;
pub mod kernel;
pub mod loops;
pub mod qkz;
pub mod schur;
pub mod sixvertex;
pub mod tilings;

mod error;
pub use error::{guard, max_n_override, Error};
