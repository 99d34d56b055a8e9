//! Finite-difference check that `x · d/dx log_b x` is the constant `1 / ln b`.

use alloc::vec::Vec;

use crate::entropy::{Base, EntropyFunctional};
use crate::math;
use crate::{Error, Result};

/// Outcome of [`estimate_k`](super::Verifier::estimate_k).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LogFitResult {
    /// Mean of `x · ΔH/Δx` over the interior grid points.
    pub k_estimate: f64,
    /// Largest `|x · ΔH/Δx − k_estimate|`.
    pub max_deviation: f64,
    /// Largest `|x · ΔH/Δx − y · ΔH/Δy|` over pairs of grid points.
    pub separation: f64,
    /// The sample points, geometrically spaced from `x_min` to `x_max`.
    pub grid: Vec<f64>,
}

pub(crate) fn estimate_k<F: EntropyFunctional + ?Sized>(
    functional: &F,
    x_min: f64,
    x_max: f64,
    grid_points: usize,
    base: Base,
) -> Result<LogFitResult> {
    if !(x_min.is_finite() && x_max.is_finite()) {
        return Err(Error::InvalidArgument("grid bounds must be finite"));
    }
    if x_min < 1.0 || x_min >= x_max {
        return Err(Error::InvalidArgument("grid needs 1 <= x_min < x_max"));
    }
    if grid_points < 3 {
        return Err(Error::InvalidArgument("grid needs at least 3 points"));
    }

    // Geometric spacing makes the truncation error of the central difference
    // the same at every point, so the spread measures the function rather
    // than the grid.
    let (lo, hi) = (math::ln(x_min), math::ln(x_max));
    let last = grid_points - 1;
    let mut grid: Vec<f64> = (0..grid_points)
        .map(|j| math::exp(lo + (hi - lo) * j as f64 / last as f64))
        .collect();
    grid[0] = x_min;
    grid[last] = x_max;

    let values: Vec<f64> = grid.iter().map(|&x| functional.log(x, base)).collect();
    let products: Vec<f64> = (1..last)
        .map(|j| {
            let slope = (values[j + 1] - values[j - 1]) / (grid[j + 1] - grid[j - 1]);
            grid[j] * slope
        })
        .collect();
    if products.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument("grid spacing underflows"));
    }

    let k_estimate = math::sum(products.iter().copied()) / products.len() as f64;
    let max_deviation = products
        .iter()
        .map(|p| (p - k_estimate).abs())
        .fold(0.0, f64::max);
    let lowest = products.iter().copied().fold(f64::INFINITY, f64::min);
    let highest = products.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(LogFitResult {
        k_estimate,
        max_deviation,
        separation: highest - lowest,
        grid,
    })
}

// Oracle values are frozen from 40-digit evaluations.
#[allow(clippy::approx_constant, clippy::excessive_precision)]
#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::Shannon;
    use core::f64::consts::{LN_10, LN_2};

    #[test]
    fn natural_log_gives_one() {
        let fit = estimate_k(&Shannon, 1.0, 100.0, 1000, Base::E).unwrap();
        assert!((fit.k_estimate - 1.0).abs() < 1e-4);
        assert!(fit.max_deviation < 1e-4);
    }

    #[test]
    fn bits_give_inverse_ln2() {
        let fit = estimate_k(&Shannon, 1.0, 100.0, 1000, Base::TWO).unwrap();
        assert!((fit.k_estimate - 1.442_695).abs() < 1e-4);
        assert!((fit.k_estimate - 1.0 / LN_2).abs() < 1e-4);
        assert!(fit.max_deviation < 1e-4);
        assert!(fit.separation < 2e-4);
        assert_eq!(fit.grid.len(), 1000);
        assert_eq!(fit.grid[0], 1.0);
        assert_eq!(fit.grid[999], 100.0);
    }

    #[test]
    fn base_ten() {
        let fit = estimate_k(&Shannon, 1.0, 100.0, 1000, Base::TEN).unwrap();
        assert!((fit.k_estimate - 1.0 / LN_10).abs() < 1e-4);
    }

    #[test]
    fn three_points_is_enough() {
        let fit = estimate_k(&Shannon, 1.0, 4.0, 3, Base::E).unwrap();
        assert_eq!(fit.grid, [1.0, 2.0, 4.0]);
        // One interior point: 2 · (ln 4 − ln 1) / 3.
        assert!((fit.k_estimate - 2.0 * 4f64.ln() / 3.0).abs() < 1e-15);
        assert_eq!(fit.max_deviation, 0.0);
    }

    #[test]
    fn degenerate_grids() {
        for (lo, hi, n) in [
            (0.5, 10.0, 10),
            (5.0, 5.0, 10),
            (10.0, 5.0, 10),
            (1.0, 10.0, 2),
            (1.0, f64::INFINITY, 10),
        ] {
            assert!(
                matches!(
                    estimate_k(&Shannon, lo, hi, n, Base::TWO),
                    Err(Error::InvalidArgument(_))
                ),
                "{lo} {hi} {n}"
            );
        }
    }
}
