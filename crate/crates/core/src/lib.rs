//! Random Dirichlet characters weighted by L-functions.
//!
//! The crate builds the character group of `(Z/qZ)^x`, evaluates Dirichlet
//! L-values and polylogarithms with certified truncation error, puts the
//! L-measure `P(chi) = |L_s(chi)|^2 / Z` (and its uniform and Euler-coefficient
//! variants) on the characters, and computes mixed moments of character
//! evaluations three independent ways. The [`limit_laws`] module holds the
//! wrapped-Cauchy and Bohr-Jessen limiting objects, and [`plancherel`] carries
//! the exact symmetric-group counterpart used as a structural template.
//!
//! The crate is `no_std` and needs only `alloc`; IO, threading and file
//! formats live in the `lmeasure` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

use alloc::string::String;

pub mod arith;
pub mod char_group;
pub mod lfunction;
pub mod limit_laws;
pub mod measures;
pub mod moments;
pub mod plancherel;
pub mod rng;
pub mod stats;

pub use char_group::{Angle, CharValue, Character, CharacterTable, UnitGroupStructure};
pub use lfunction::{EulerCoefficients, TruncationPolicy, ValueWithCert};
pub use measures::{CharacterMeasure, MeasureKind, SampleBatch};
pub use moments::{MomentMethod, MomentResult, MomentSpec, Support};
pub use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be positive, got {0}")]
    InvalidModulus(u64),
    #[error("phi(q) = {phi} exceeds the character table limit {limit}")]
    TableTooLarge { phi: u64, limit: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("truncation needs {needed} terms but the cap is {cap}")]
    CapExceeded { needed: u64, cap: u64 },
    #[error("quadrature did not converge within {evaluations} evaluations (error estimate {estimate:e})")]
    QuadratureNonConvergence { evaluations: usize, estimate: f64 },
    #[error("Euler product diverges: coefficient at p = {p} is {value}")]
    Divergent { p: u64, value: f64 },
    #[error("{what} is limited to n <= {max}, got {n}")]
    SizeGuard { what: &'static str, n: usize, max: usize },
    #[error("partition sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid moment spec: {0}")]
    InvalidSpec(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for errors caused by bad input rather than by a computation
    /// running out of budget.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidModulus(_)
                | Error::InvalidParameter(_)
                | Error::SizeGuard { .. }
                | Error::SizeMismatch { .. }
                | Error::InvalidSpec(_)
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
