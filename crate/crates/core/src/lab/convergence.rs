//! Entropy of rational approximations `n_i / N` as `N` grows.

use alloc::vec::Vec;

use crate::dist::{rational_approx, Distribution, RealDist};
use crate::entropy::{Base, EntropyFunctional};
use crate::{Error, Result};

/// Width of the trailing window used by [`is_settling`].
pub const SMOOTHING_WINDOW: usize = 2;

/// One denominator of a convergence study.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConvergencePoint {
    /// `N`.
    pub denominator: u64,
    /// Apportioned counts, summing to `N`.
    pub counts: Vec<u64>,
    /// `|H(counts / N) − H(target)|`.
    pub entropy_error: f64,
    /// `max_i |n_i / N − p_i|`.
    pub max_prob_error: f64,
}

pub(crate) fn continuity_convergence<F: EntropyFunctional + ?Sized>(
    functional: &F,
    target: &RealDist,
    schedule: &[u64],
    base: Base,
) -> Result<Vec<ConvergencePoint>> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("schedule is empty"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "schedule must be strictly increasing",
        ));
    }
    if schedule[0] < target.outcomes() as u64 {
        return Err(Error::InvalidArgument(
            "every denominator must be at least the number of outcomes",
        ));
    }

    let exact = functional.entropy_of(target.probs(), base);
    schedule
        .iter()
        .map(|&denominator| {
            let approx = rational_approx(target, denominator)?;
            let probs = approx.probabilities();
            let max_prob_error = probs
                .iter()
                .zip(target.probs())
                .map(|(a, p)| (a - p).abs())
                .fold(0.0, f64::max);
            Ok(ConvergencePoint {
                denominator,
                entropy_error: (functional.entropy_of(&probs, base) - exact).abs(),
                counts: approx.counts().to_vec(),
                max_prob_error,
            })
        })
        .collect()
}

/// True when the running maximum over the last [`SMOOTHING_WINDOW`] errors
/// never increases along the sequence.
pub fn is_settling(errors: &[f64]) -> bool {
    let smoothed: Vec<f64> = (0..errors.len())
        .map(|i| {
            let start = (i + 1).saturating_sub(SMOOTHING_WINDOW);
            errors[start..=i]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    smoothed.windows(2).all(|w| w[1] <= w[0])
}
