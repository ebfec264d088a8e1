//! Exact analysis of finite-dimensional K-vector subspaces of the rational
//! function field K(x).
//!
//! The crate computes product spaces S·T and the combinatorial genus
//! γ = dim S² - 2 dim S + 1, filtered and super-filtered bases with their
//! genus sequences and degree tables, minimal divisors and genus-0
//! Riemann-Roch spaces, Lüroth generators of the subfields K(S_i), and the
//! integer sumset / 3k-4 toolkit that the multiplicative theory mirrors.
//! Everything is exact: base fields are ℚ or 𝔽_p and all linear algebra is
//! fraction-free echelon reduction over a common denominator.

pub mod analysis;
pub mod divisor;
pub mod error;
pub mod filtration;
pub mod freiman;
pub mod generators;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod subspace;
pub mod tower;

pub use error::{Error, Result};
pub use scalar::{FieldSpec, Scalar};
