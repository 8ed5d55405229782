//! Totally odd double zeta matrices relative to the N-th roots of unity
//! (N = 1, 2, 3), their independent recomputation from the depth-two
//! coaction, period-polynomial operators, and the spectral checks that tie
//! the matrices to Hecke operators and newforms.

pub mod coaction;
pub mod error;
pub mod golden;
pub mod index;
pub mod linalg;
pub mod matrices;
pub mod period;
pub mod spectral;

pub use error::{Error, Result};
pub use index::{totally_odd_index, totally_odd_index_reversed, IndexPair};
pub use linalg::{RatMatrix, RatPoly, Rational};
pub use matrices::{build_c, build_d, build_dc, Level, MatrixBundle};
pub use period::{HomogPoly, RestrictedVector, Sign};
pub use spectral::{SignDims, SpectralReport};
