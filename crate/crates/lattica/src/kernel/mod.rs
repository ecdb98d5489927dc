//! Exact scalar rings, sparse polynomials, fraction-free linear algebra and
//! truncated series.

pub mod eisenstein;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod series;

pub use eisenstein::Eisenstein;
pub use laurent::{chebyshev_u, LaurentQ};
pub use matrix::{integer_kernel, ExactMatrix, Pivot};
pub use poly::{product, Mono, MultiPoly};
pub use ring::{binomial, factorial, int, parse_rational, rat, render_rational, Ring};
pub use series::{constant_term, extract_coefficient, Factor, TruncatedSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Polynomials over the integers.
pub type ZPoly = MultiPoly<BigInt>;
/// Polynomials over the rationals.
pub type QPoly = MultiPoly<BigRational>;
/// Polynomials with Laurent-in-q coefficients.
pub type LPoly = MultiPoly<LaurentQ>;
/// Polynomials over the Eisenstein integers.
pub type EPoly = MultiPoly<Eisenstein>;
