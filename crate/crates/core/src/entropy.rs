//! The entropy functional `H[p] = −Σ p_i log_b p_i`.
//!
//! Terms with `p_i = 0` are skipped outright, never evaluated as `0·log 0`.
//! Logarithms are taken as `ln x / ln b`.

use core::f64::consts::{E, LN_10, LN_2};

use crate::dist::{Distribution, RationalDist};
use crate::math;
use crate::{Error, Result};

/// Logarithm base, a finite real greater than one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base {
    value: f64,
    ln: f64,
}

impl Base {
    /// Base 2: bits.
    pub const TWO: Base = Base {
        value: 2.0,
        ln: LN_2,
    };
    /// Base e: nats.
    pub const E: Base = Base { value: E, ln: 1.0 };
    /// Base 10: hartleys.
    pub const TEN: Base = Base {
        value: 10.0,
        ln: LN_10,
    };

    /// Validates `value`. 2, e and 10 map onto the exact constants.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 1.0 {
            return Err(Error::InvalidBase(value));
        }
        Ok(if value == 2.0 {
            Base::TWO
        } else if value == E {
            Base::E
        } else if value == 10.0 {
            Base::TEN
        } else {
            Base {
                value,
                ln: math::ln(value),
            }
        })
    }

    /// The base itself.
    pub fn value(self) -> f64 {
        self.value
    }

    /// Natural log of the base.
    pub fn ln(self) -> f64 {
        self.ln
    }

    /// Name of the unit, if the base has a conventional one.
    pub fn unit(self) -> Option<&'static str> {
        match self {
            b if b == Base::TWO => Some("bits"),
            b if b == Base::E => Some("nats"),
            b if b == Base::TEN => Some("hartleys"),
            _ => None,
        }
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::TWO
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Base {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value)
    }
}

/// An entropy together with the base it is measured in.
///
/// Always within `[0, log_b A]` for the `A`-outcome distribution it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EntropyValue {
    value: f64,
    base: Base,
}

impl EntropyValue {
    /// The entropy.
    pub fn value(self) -> f64 {
        self.value
    }

    /// Base of the logarithm it was computed with.
    pub fn base(self) -> Base {
        self.base
    }

    /// The same quantity in another base.
    pub fn in_base(self, base: Base) -> EntropyValue {
        EntropyValue {
            value: self.value * self.base.ln / base.ln,
            base,
        }
    }
}

/// A candidate uncertainty measure.
///
/// [`Shannon`] is the real one. The checks in [`crate::lab`] are generic over
/// this trait so a broken measure can be run through them and shown to fail.
pub trait EntropyFunctional {
    /// Uncertainty of a normalized probability vector, in units of `base`.
    fn entropy_of(&self, probs: &[f64], base: Base) -> f64;

    /// `log_b x` for real `x ≥ 1`: the uncertainty of `x` equally likely
    /// outcomes, extended to the reals.
    fn log(&self, x: f64, base: Base) -> f64;
}

impl<F: EntropyFunctional + ?Sized> EntropyFunctional for &F {
    fn entropy_of(&self, probs: &[f64], base: Base) -> f64 {
        (**self).entropy_of(probs, base)
    }

    fn log(&self, x: f64, base: Base) -> f64 {
        (**self).log(x, base)
    }
}

/// Shannon entropy.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Shannon;

impl EntropyFunctional for Shannon {
    fn entropy_of(&self, probs: &[f64], base: Base) -> f64 {
        let nats = math::sum(
            probs
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| -p * math::ln(p)),
        );
        nats / base.ln
    }

    fn log(&self, x: f64, base: Base) -> f64 {
        math::ln(x) / base.ln
    }
}

/// Entropy of `dist` in base `base`.
///
/// Rounding can push the raw sum a few ulps outside `[0, log_b A]`; the result
/// is clamped back into that interval.
pub fn entropy<D: Distribution + ?Sized>(dist: &D, base: Base) -> EntropyValue {
    let raw = Shannon.entropy_of(&dist.probabilities(), base);
    let ceiling = Shannon.log(dist.outcomes() as f64, base);
    let value = if raw <= 0.0 {
        0.0
    } else if raw > ceiling {
        ceiling
    } else {
        raw
    };
    EntropyValue { value, base }
}

/// Entropy of `outcomes` equally likely outcomes: `log_b outcomes`.
pub fn uniform_entropy(outcomes: u64, base: Base) -> Result<EntropyValue> {
    if outcomes == 0 {
        return Err(Error::ZeroOutcomes);
    }
    Ok(EntropyValue {
        value: Shannon.log(outcomes as f64, base),
        base,
    })
}

/// The three terms of `log N = H[p] + Σ p_i log n_i` and what is left over.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DecompositionReport {
    /// `log_b N`.
    pub log_total: f64,
    /// `Σ p_i log_b n_i` over outcomes with `n_i > 0`.
    pub group_term: f64,
    /// `H[p]`.
    pub entropy_term: f64,
    /// `log_total − group_term − entropy_term`.
    pub residual: f64,
}

/// Splits the uncertainty of drawing one of `N` items into "which group" and
/// "which item within the group".
pub fn decompose(dist: &RationalDist, base: Base) -> DecompositionReport {
    decompose_with(&Shannon, dist, base)
}

/// [`decompose`] with an arbitrary uncertainty measure.
pub fn decompose_with<F: EntropyFunctional + ?Sized>(
    functional: &F,
    dist: &RationalDist,
    base: Base,
) -> DecompositionReport {
    let total = dist.total() as f64;
    let log_total = functional.log(total, base);
    let group_term = math::sum(
        dist.counts()
            .iter()
            .filter(|&&n| n > 0)
            .map(|&n| (n as f64 / total) * functional.log(n as f64, base)),
    );
    let entropy_term = functional.entropy_of(&dist.probabilities(), base);
    DecompositionReport {
        log_total,
        group_term,
        entropy_term,
        residual: log_total - group_term - entropy_term,
    }
}
