//! Exact simulation of computation with Deutsch-consistent closed timelike
//! curves.
//!
//! A program acts on a CTC register and a causality-respecting (CR) register.
//! Its effect on the CTC register is a channel `Φ`; causally consistent
//! inputs are the fixed points of `Φ`. This crate builds `Φ` as an exact
//! natural-representation matrix, computes the fixed-point projector
//! `Λ = lim_{z→0+} z (I - (1 - z) Φ)^{-1}` symbolically in `z`, and reads
//! verdicts off the resulting consistent states. Classical and stochastic
//! programs are handled through function-graph cycles and exact Markov-chain
//! stationary distributions.

pub mod algebra;
pub mod circuits;
pub mod error;
pub mod fixpoint;
pub mod limits;
pub mod programs;
pub mod semantics;
pub mod superop;

pub use algebra::{GaussianRational, Matrix, PolyMatrix, Polynomial, Rational};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use limits::Limits;
