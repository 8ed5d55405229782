//! Exact rational scalars, matrices and univariate polynomials.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{RatMatrix, Rref};
pub use poly::{real_root_count, series_coeffs, sturm_count, RatPoly};
pub use rational::Rational;
