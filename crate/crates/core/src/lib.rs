//! Exact prime-counting functions, their smooth regular parts, and numerical
//! checks of the identities that connect them.
//!
//! * [`sieve`] builds prime, prime-power and Möbius tables.
//! * [`exact`] evaluates π, θ, ψ, r and R and exposes them as jump series.
//! * [`approx`] evaluates Li (both conventions), Ri, the regular parts and
//!   their derivatives, and the constants γ, lim R(x) and li(2).
//! * [`analysis`] splits each function into regular + oscillatory parts and
//!   checks the Stieltjes identities by exact piecewise summation.
//! * [`cli`] is the `primeparts` command-line front end.

pub mod analysis;
pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod par;
pub mod sieve;

pub use error::{Error, Result};
pub use par::Execution;
