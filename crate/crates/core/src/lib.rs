//! Discrete Shannon entropy, plus executable checks of the properties that
//! single it out.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO and file formats live in the companion CLI
//! crate.
//!
//! - [`dist`]: exact count distributions ([`RationalDist`]), real probability
//!   vectors ([`RealDist`]), independent products and rational approximation.
//! - [`mod@entropy`]: the entropy functional, the uniform closed form `log x`, and
//!   the grouping identity `log N = H[p] + Σ p_i log n_i`.
//! - [`composition`]: hierarchical experiments whose total uncertainty is the
//!   path-probability weighted sum of node entropies.
//! - [`lab`]: parameter sweeps that check monotonicity, additivity,
//!   composition, the grouping identity, the constant in `x·H'(x) = k`, and
//!   convergence of rational approximations.
//!
//! ```
//! use shannon_core::{entropy, Base, RationalDist};
//!
//! let fruit = RationalDist::new(vec![3, 7]).unwrap();
//! let h = entropy(&fruit, Base::TWO);
//! assert!((h.value() - 0.881291).abs() < 1e-6);
//! ```
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod composition;
pub mod dist;
pub mod entropy;
mod error;
pub mod lab;
mod math;

pub use composition::{
    flatten, total_uncertainty, total_uncertainty_with, validate, CompTree, NodeKind, NodePath,
    NodeUncertainty, UncertaintyBreakdown, Violation, ViolationKind,
};
pub use dist::{rational_approx, Dist, Distribution, Fraction, RationalDist, RealDist};
pub use entropy::{
    decompose, decompose_with, entropy, uniform_entropy, Base, DecompositionReport,
    EntropyFunctional, EntropyValue, Shannon,
};
pub use error::{Error, Result};

/// Absolute tolerance on `|Σ p_i − 1|` accepted by [`RealDist`] and by
/// composition-tree branches.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Absolute tolerance for identities between two entropy computations
/// (additivity, grouping, composition, base change).
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;
