//! Executable checks of the properties that characterize entropy.
//!
//! Each check sweeps a parameter range (or a seeded random sample), computes a
//! residual per case and keeps the worst one in an [`AxiomReport`]. The checks
//! run against any [`EntropyFunctional`] through [`Verifier`]; the free
//! functions in this module use [`Shannon`].
//!
//! Every evaluated entropy must also lie in `[0, log_b A]`. A value outside
//! that interval adds its distance from the interval to the case residual, so a
//! measure that is additive but negative still fails.

mod convergence;
mod derivative;
mod random;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use convergence::{is_settling, ConvergencePoint, SMOOTHING_WINDOW};
pub use derivative::LogFitResult;
pub use random::{MAX_COUNT, TREE_LEAF_OUTCOMES, TREE_MAX_FANOUT};

use crate::composition::{flatten, total_uncertainty_with};
use crate::dist::{Distribution, RealDist};
use crate::entropy::{decompose_with, Base, EntropyFunctional, Shannon};
use crate::{math, Error, Result, AGREEMENT_TOLERANCE};

/// Pass threshold for the additivity, composition and grouping checks.
pub const IDENTITY_TOLERANCE: f64 = AGREEMENT_TOLERANCE;

/// Pass threshold for the estimated constant in `x · H'(x) = k`.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-4;

/// Pass threshold for the last entropy error of a convergence study.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-3;

/// Most outcomes drawn by [`check_decomposition`].
pub const DECOMPOSITION_MAX_OUTCOMES: usize = 32;

/// How a report's worst residual is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Criterion {
    /// Largest residual must not exceed the tolerance.
    AtMost,
    /// Smallest gap must be strictly above the tolerance.
    Above,
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AxiomReport {
    /// Short name, e.g. `additivity`.
    pub check_name: String,
    /// Parameters of the sweep.
    pub sweep_description: String,
    /// Cases evaluated.
    pub cases_run: u64,
    /// Cases skipped because an integer product overflowed.
    pub cases_skipped: u64,
    /// Worst residual seen: the largest for [`Criterion::AtMost`], the
    /// smallest gap for [`Criterion::Above`].
    pub worst_residual: f64,
    /// The case that produced `worst_residual`.
    pub worst_case_input: String,
    /// Threshold the residual is compared against.
    pub tolerance: f64,
    /// Direction of the comparison.
    pub criterion: Criterion,
    /// Whether the worst residual satisfies the criterion.
    pub passed: bool,
}

struct Sweep {
    name: &'static str,
    description: String,
    tolerance: f64,
    criterion: Criterion,
    cases: u64,
    skipped: u64,
    worst: f64,
    worst_input: String,
}

impl Sweep {
    fn new(name: &'static str, description: String, tolerance: f64, criterion: Criterion) -> Self {
        Sweep {
            name,
            description,
            tolerance,
            criterion,
            cases: 0,
            skipped: 0,
            worst: match criterion {
                Criterion::AtMost => 0.0,
                Criterion::Above => f64::INFINITY,
            },
            worst_input: String::new(),
        }
    }

    fn record(&mut self, residual: f64, input: impl FnOnce() -> String) {
        self.cases += 1;
        if self.worst.is_nan() {
            return;
        }
        let worse = residual.is_nan()
            || self.cases == 1
            || match self.criterion {
                Criterion::AtMost => residual > self.worst,
                Criterion::Above => residual < self.worst,
            };
        if worse {
            self.worst = residual;
            self.worst_input = input();
        }
    }

    fn finish(self) -> AxiomReport {
        let passed = self.cases > 0
            && match self.criterion {
                Criterion::AtMost => self.worst <= self.tolerance,
                Criterion::Above => self.worst > self.tolerance,
            };
        AxiomReport {
            check_name: self.name.into(),
            sweep_description: self.description,
            cases_run: self.cases,
            cases_skipped: self.skipped,
            worst_residual: self.worst,
            worst_case_input: self.worst_input,
            tolerance: self.tolerance,
            criterion: self.criterion,
            passed,
        }
    }
}

/// Runs the checks against a chosen uncertainty measure.
#[derive(Debug, Default, Clone)]
pub struct Verifier<F = Shannon> {
    functional: F,
}

impl Verifier<Shannon> {
    /// Checks Shannon entropy.
    pub fn new() -> Self {
        Verifier {
            functional: Shannon,
        }
    }
}

impl<F: EntropyFunctional> Verifier<F> {
    /// Checks `functional` instead.
    pub fn with_functional(functional: F) -> Self {
        Verifier { functional }
    }

    /// Distance of `h` from `[0, log_b outcomes]`, zero inside it.
    fn range_excess(&self, h: f64, outcomes: usize, base: Base) -> f64 {
        let ceiling = self.functional.log(outcomes as f64, base);
        if h.is_nan() {
            f64::NAN
        } else if h < -AGREEMENT_TOLERANCE {
            -h
        } else if h > ceiling + AGREEMENT_TOLERANCE {
            h - ceiling
        } else {
            0.0
        }
    }

    fn entropy_in_range(&self, probs: &[f64], base: Base) -> (f64, f64) {
        let h = self.functional.entropy_of(probs, base);
        (h, self.range_excess(h, probs.len(), base))
    }

    /// More equally likely outcomes means more uncertainty: the gap
    /// `H(n+1) − H(n)` must be positive for every `1 ≤ n < n_max`.
    pub fn check_monotonicity(&self, n_max: u64, base: Base) -> Result<AxiomReport> {
        if n_max < 2 {
            return Err(Error::InvalidArgument("n_max must be at least 2"));
        }
        let mut sweep = Sweep::new(
            "monotonicity",
            format!("H(n+1) - H(n) for n in 1..{n_max}, base {}", base.value()),
            0.0,
            Criterion::Above,
        );
        let mut previous = self.functional.log(1.0, base);
        for n in 1..n_max {
            let next = self.functional.log((n + 1) as f64, base);
            sweep.record(next - previous, || format!("n={n}"));
            previous = next;
        }
        Ok(sweep.finish())
    }

    /// Uniform additivity `H(x) + H(y) = H(xy)` for all `1 ≤ x, y ≤ x_max`.
    /// Pairs whose product overflows `u64` are skipped and counted.
    pub fn check_additivity(&self, x_max: u64, base: Base) -> Result<AxiomReport> {
        if x_max < 2 {
            return Err(Error::InvalidArgument("x_max must be at least 2"));
        }
        let mut sweep = Sweep::new(
            "additivity",
            format!(
                "|H(x) + H(y) - H(xy)| for x, y in 1..={x_max}, base {}",
                base.value()
            ),
            IDENTITY_TOLERANCE,
            Criterion::AtMost,
        );
        for x in 1..=x_max {
            let hx = self.functional.log(x as f64, base);
            for y in 1..=x_max {
                let Some(xy) = x.checked_mul(y) else {
                    sweep.skipped += 1;
                    continue;
                };
                let hy = self.functional.log(y as f64, base);
                let hxy = self.functional.log(xy as f64, base);
                let excess = [hx, hy, hxy]
                    .into_iter()
                    .zip([x, y, xy])
                    .map(|(h, n)| self.range_excess(h, n as usize, base))
                    .fold(0.0, f64::max);
                sweep.record((hx + hy - hxy).abs().max(excess), || format!("x={x} y={y}"));
            }
        }
        Ok(sweep.finish())
    }

    /// Additivity of independent non-uniform experiments:
    /// `H(a × b) = H(a) + H(b)` on `trials` random count pairs.
    pub fn check_general_additivity(
        &self,
        trials: u64,
        max_outcomes: usize,
        seed: u64,
        base: Base,
    ) -> Result<AxiomReport> {
        if trials == 0 || max_outcomes == 0 {
            return Err(Error::InvalidArgument(
                "trials and max_outcomes must be positive",
            ));
        }
        let mut sweep = Sweep::new(
            "general-additivity",
            format!(
                "|H(a x b) - H(a) - H(b)| over {trials} random pairs, up to {max_outcomes} outcomes, seed {seed}, base {}",
                base.value()
            ),
            IDENTITY_TOLERANCE,
            Criterion::AtMost,
        );
        let mut rng = random::rng(seed);
        for _ in 0..trials {
            let a = random::random_counts(&mut rng, max_outcomes, u64::MAX);
            let b = random::random_counts(&mut rng, max_outcomes, u64::MAX);
            let joint = a.product(&b)?;
            let (ha, ea) = self.entropy_in_range(&a.probabilities(), base);
            let (hb, eb) = self.entropy_in_range(&b.probabilities(), base);
            let (hab, eab) = self.entropy_in_range(&joint.probabilities(), base);
            let residual = (hab - ha - hb).abs().max(ea).max(eb).max(eab);
            sweep.record(residual, || {
                format!("a={:?} b={:?}", a.counts(), b.counts())
            });
        }
        Ok(sweep.finish())
    }

    /// Weighted composition: the entropy of a flattened random tree equals
    /// its path-weighted sum of node entropies.
    pub fn check_composition(
        &self,
        trials: u64,
        max_depth: usize,
        seed: u64,
        base: Base,
    ) -> Result<AxiomReport> {
        if trials == 0 || max_depth == 0 {
            return Err(Error::InvalidArgument(
                "trials and max_depth must be positive",
            ));
        }
        let mut sweep = Sweep::new(
            "composition",
            format!(
                "|H(flatten(t)) - sum p_i H_i| over {trials} random trees, depth <= {max_depth}, seed {seed}, base {}",
                base.value()
            ),
            IDENTITY_TOLERANCE,
            Criterion::AtMost,
        );
        let mut rng = random::rng(seed);
        for _ in 0..trials {
            let tree = random::random_tree(&mut rng, max_depth);
            let breakdown = total_uncertainty_with(&self.functional, &tree, base)?;
            let flat = flatten(&tree)?;
            let (h, excess) = self.entropy_in_range(flat.probs(), base);
            sweep.record((h - breakdown.total).abs().max(excess), || {
                format!("{tree}")
            });
        }
        Ok(sweep.finish())
    }

    /// The grouping identity `log N = H[p] + Σ p_i log n_i` on random counts
    /// with `N ≤ max_total`.
    pub fn check_decomposition(
        &self,
        trials: u64,
        max_total: u64,
        seed: u64,
        base: Base,
    ) -> Result<AxiomReport> {
        if trials == 0 || max_total == 0 {
            return Err(Error::InvalidArgument(
                "trials and max_total must be positive",
            ));
        }
        let mut sweep = Sweep::new(
            "decomposition",
            format!(
                "|log N - H[p] - sum p_i log n_i| over {trials} random count vectors, N <= {max_total}, seed {seed}, base {}",
                base.value()
            ),
            IDENTITY_TOLERANCE,
            Criterion::AtMost,
        );
        let mut rng = random::rng(seed);
        for _ in 0..trials {
            let dist = random::random_counts(&mut rng, DECOMPOSITION_MAX_OUTCOMES, max_total);
            let report = decompose_with(&self.functional, &dist, base);
            let excess = self.range_excess(report.entropy_term, dist.outcomes(), base);
            sweep.record(report.residual.abs().max(excess), || {
                format!("counts={:?}", dist.counts())
            });
        }
        Ok(sweep.finish())
    }

    /// Estimates `k` in `x · dH/dx = k` by central differences of
    /// `H(x) = log_b x` on a geometric grid over `[x_min, x_max]`.
    pub fn estimate_k(
        &self,
        x_min: f64,
        x_max: f64,
        grid_points: usize,
        base: Base,
    ) -> Result<LogFitResult> {
        derivative::estimate_k(&self.functional, x_min, x_max, grid_points, base)
    }

    /// [`estimate_k`](Self::estimate_k) judged against `1 / ln b`. The
    /// residual is the larger of the estimate's error and its spread over the
    /// grid.
    pub fn check_log_constant(
        &self,
        x_min: f64,
        x_max: f64,
        grid_points: usize,
        base: Base,
    ) -> Result<AxiomReport> {
        let fit = self.estimate_k(x_min, x_max, grid_points, base)?;
        let expected = 1.0 / math::ln(base.value());
        let mut sweep = Sweep::new(
            "estimate-k",
            format!(
                "x dH/dx on {grid_points} points over [{x_min}, {x_max}] against 1/ln({}) = {expected}",
                base.value()
            ),
            DERIVATIVE_TOLERANCE,
            Criterion::AtMost,
        );
        let error = (fit.k_estimate - expected).abs();
        let residual = if fit.k_estimate > 0.0 {
            error.max(fit.max_deviation)
        } else {
            f64::INFINITY
        };
        sweep.record(residual, || {
            format!(
                "k_estimate={} max_deviation={}",
                fit.k_estimate, fit.max_deviation
            )
        });
        Ok(sweep.finish())
    }

    /// Entropy error of [`rational_approx`](crate::rational_approx) at each
    /// denominator in `schedule`.
    pub fn continuity_convergence(
        &self,
        target: &RealDist,
        schedule: &[u64],
        base: Base,
    ) -> Result<Vec<ConvergencePoint>> {
        convergence::continuity_convergence(&self.functional, target, schedule, base)
    }

    /// [`continuity_convergence`](Self::continuity_convergence) judged on its
    /// last error. An error sequence that fails [`is_settling`] reports an
    /// infinite residual.
    pub fn check_continuity(
        &self,
        target: &RealDist,
        schedule: &[u64],
        base: Base,
    ) -> Result<AxiomReport> {
        let points = self.continuity_convergence(target, schedule, base)?;
        let errors: Vec<f64> = points.iter().map(|p| p.entropy_error).collect();
        let mut sweep = Sweep::new(
            "continuity",
            format!(
                "|H(round(p, N)) - H(p)| for N in {schedule:?}, target {:?}, base {}",
                target.probs(),
                base.value()
            ),
            CONVERGENCE_TOLERANCE,
            Criterion::AtMost,
        );
        let last = *errors.last().expect("schedule is non-empty");
        let residual = if is_settling(&errors) {
            last
        } else {
            f64::INFINITY
        };
        sweep.record(residual, || format!("errors={errors:?}"));
        sweep.cases = points.len() as u64;
        Ok(sweep.finish())
    }
}

/// [`Verifier::check_monotonicity`] for Shannon entropy.
pub fn check_monotonicity(n_max: u64, base: Base) -> Result<AxiomReport> {
    Verifier::new().check_monotonicity(n_max, base)
}

/// [`Verifier::check_additivity`] for Shannon entropy.
pub fn check_additivity(x_max: u64, base: Base) -> Result<AxiomReport> {
    Verifier::new().check_additivity(x_max, base)
}

/// [`Verifier::check_general_additivity`] for Shannon entropy.
pub fn check_general_additivity(
    trials: u64,
    max_outcomes: usize,
    seed: u64,
    base: Base,
) -> Result<AxiomReport> {
    Verifier::new().check_general_additivity(trials, max_outcomes, seed, base)
}

/// [`Verifier::check_composition`] for Shannon entropy.
pub fn check_composition(
    trials: u64,
    max_depth: usize,
    seed: u64,
    base: Base,
) -> Result<AxiomReport> {
    Verifier::new().check_composition(trials, max_depth, seed, base)
}

/// [`Verifier::check_decomposition`] for Shannon entropy.
pub fn check_decomposition(
    trials: u64,
    max_total: u64,
    seed: u64,
    base: Base,
) -> Result<AxiomReport> {
    Verifier::new().check_decomposition(trials, max_total, seed, base)
}

/// [`Verifier::estimate_k`] for Shannon entropy.
pub fn estimate_k(x_min: f64, x_max: f64, grid_points: usize, base: Base) -> Result<LogFitResult> {
    Verifier::new().estimate_k(x_min, x_max, grid_points, base)
}

/// [`Verifier::check_log_constant`] for Shannon entropy.
pub fn check_log_constant(
    x_min: f64,
    x_max: f64,
    grid_points: usize,
    base: Base,
) -> Result<AxiomReport> {
    Verifier::new().check_log_constant(x_min, x_max, grid_points, base)
}

/// [`Verifier::continuity_convergence`] for Shannon entropy.
pub fn continuity_convergence(
    target: &RealDist,
    schedule: &[u64],
    base: Base,
) -> Result<Vec<ConvergencePoint>> {
    Verifier::new().continuity_convergence(target, schedule, base)
}

/// [`Verifier::check_continuity`] for Shannon entropy.
pub fn check_continuity(target: &RealDist, schedule: &[u64], base: Base) -> Result<AxiomReport> {
    Verifier::new().check_continuity(target, schedule, base)
}

#[allow(clippy::excessive_precision)]
#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{coin_and_two_dice, CompTree};
    use crate::dist::RationalDist;
    use crate::entropy::entropy;
    use alloc::vec;

    #[test]
    fn monotonicity_small() {
        let r = check_monotonicity(3, Base::TWO).unwrap();
        assert_eq!(r.cases_run, 2);
        assert!(r.passed);
        // Gaps are 1 and log2(3/2); the smaller one is reported.
        assert!((r.worst_residual - 0.584_962_500_721_156_2).abs() < 1e-12);
        assert_eq!(r.worst_case_input, "n=2");

        let r = check_monotonicity(2, Base::TWO).unwrap();
        assert_eq!(r.cases_run, 1);
        assert_eq!(r.worst_residual, 1.0);
        assert!(r.passed);

        assert!(check_monotonicity(1, Base::TWO).is_err());
    }

    #[test]
    fn additivity_small_cases() {
        let r = check_additivity(2, Base::TWO).unwrap();
        assert_eq!(r.cases_run, 4);
        assert!(r.passed);
        let hx = crate::uniform_entropy(2, Base::TWO).unwrap().value();
        let hy = crate::uniform_entropy(6, Base::TWO).unwrap().value();
        let hxy = crate::uniform_entropy(12, Base::TWO).unwrap().value();
        assert!((hx + hy - hxy).abs() < 1e-15);
    }

    #[test]
    fn general_additivity_examples() {
        let a = RationalDist::new(vec![3, 7]).unwrap();
        let b = RationalDist::new(vec![1, 1]).unwrap();
        let h = |d: &RationalDist| entropy(d, Base::TWO).value();
        let joint = h(&a.product(&b).unwrap());
        assert!((joint - 1.881_290_899_230_692_6).abs() < 1e-12);
        assert!((joint - h(&a) - h(&b)).abs() < 1e-12);

        let point = RationalDist::new(vec![5]).unwrap();
        let any = RationalDist::new(vec![2, 9, 4]).unwrap();
        assert!((h(&point.product(&any).unwrap()) - h(&any)).abs() < 1e-15);
    }

    #[test]
    fn seeded_checks_are_reproducible() {
        let a = check_general_additivity(50, 10, 5, Base::TWO).unwrap();
        let b = check_general_additivity(50, 10, 5, Base::TWO).unwrap();
        assert_eq!(a, b);
        let c = check_composition(20, 4, 5, Base::TWO).unwrap();
        assert_eq!(c, check_composition(20, 4, 5, Base::TWO).unwrap());
        assert_ne!(
            check_decomposition(20, 100, 1, Base::TWO)
                .unwrap()
                .worst_case_input,
            check_decomposition(20, 100, 2, Base::TWO)
                .unwrap()
                .worst_case_input
        );
    }

    #[test]
    fn composition_of_bare_leaves_is_exact() {
        let r = check_composition(100, 1, 3, Base::TWO).unwrap();
        assert_eq!(r.worst_residual, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn coin_and_dice_residual() {
        let tree = coin_and_two_dice();
        let total = crate::total_uncertainty(&tree, Base::TWO).unwrap().total;
        let flat = entropy(&flatten(&tree).unwrap(), Base::TWO).value();
        assert!((total - flat).abs() < 1e-12);
        assert!(matches!(tree, CompTree::Branch(_)));
    }

    #[test]
    fn decomposition_all_ones() {
        let r = decompose_with(&Shannon, &RationalDist::uniform(37).unwrap(), Base::TWO);
        assert_eq!(r.group_term, 0.0);
        assert!((r.log_total - r.entropy_term).abs() < 1e-12);
    }

    #[test]
    fn log_constant_report() {
        let r = check_log_constant(1.0, 100.0, 1000, Base::TWO).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.worst_residual < 1e-4);
    }

    #[test]
    fn continuity_report() {
        let p = 1.0 / core::f64::consts::PI;
        let target = RealDist::new(vec![p, 1.0 - p]).unwrap();
        let r = check_continuity(&target, &[10, 100, 1000, 10_000], Base::TWO).unwrap();
        assert!(r.passed);
        assert_eq!(r.cases_run, 4);
        // Too coarse a schedule leaves the error above tolerance.
        let r = check_continuity(&target, &[10], Base::TWO).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn argument_errors() {
        assert!(check_additivity(1, Base::TWO).is_err());
        assert!(check_general_additivity(0, 5, 0, Base::TWO).is_err());
        assert!(check_composition(5, 0, 0, Base::TWO).is_err());
        assert!(check_decomposition(0, 10, 0, Base::TWO).is_err());
    }

    #[test]
    fn nan_residual_fails() {
        let mut s = Sweep::new("x", String::new(), 1.0, Criterion::AtMost);
        s.record(0.5, String::new);
        s.record(f64::NAN, || "bad".into());
        s.record(0.7, || "later".into());
        let r = s.finish();
        assert!(r.worst_residual.is_nan());
        assert_eq!(r.worst_case_input, "bad");
        assert!(!r.passed);
    }
}
