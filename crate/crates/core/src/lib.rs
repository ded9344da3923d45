//! Orlicz functions generated by random variables, their Luxemburg norms, and
//! Monte Carlo estimates of expected maxima of weighted (products of) random
//! variables, together with bounded-ratio experiments that check the
//! order equivalences between the two.

// Negated comparisons are used on purpose so that NaN arguments are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distributions;
pub mod error;
pub mod mc;
pub mod numerics;
pub mod orlicz;
pub mod verify;

pub use error::{Error, Result};
