//! Exact analysis of Boolean functions and set families on the p-biased
//! Boolean cube.
//!
//! Families live in a dense `2^d` membership table ([`SetFamily`]), biases
//! are exact rationals ([`WeightVector`]), and every measure, Fourier kernel
//! and influence is computed without rounding. The [`verify`] module checks
//! the union-closed bounds (weighted Karpas and its simply rooted dual, the
//! minimal hitting set size bounds and the logarithmic ratio bound) on
//! individual families and on exhaustive sweeps; [`explore`] enumerates and
//! searches families.

pub mod cube;
pub mod error;
pub mod explore;
pub mod hitting;
pub mod rational;
pub mod spectral;
pub mod verify;
pub mod weights;

pub use cube::{family_measure, point_measure, subfamily_measure, CubePoint, MeasureTable, SetFamily};
pub use error::{Error, Result};
pub use rational::Rational;
pub use weights::WeightVector;

/// Largest supported dimension; the membership table then has 65536 bits.
pub const MAX_DIM: usize = 16;
