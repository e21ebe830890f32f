//! Exact arithmetic: Gaussian-rational scalars, polynomials in `z`, and dense
//! matrices over both.

pub(crate) mod gint;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod psd;
pub mod scalar;

pub use matrix::Matrix;
pub use poly::{lagrange_interpolate, Polynomial};
pub use polymatrix::PolyMatrix;
pub use psd::{characteristic_polynomial, hermitian_psd_check, PsdCheck, PsdFailure};
pub use scalar::{parse_rational, rat, rat_int, rational_to_f64, GaussianRational, Rational};
