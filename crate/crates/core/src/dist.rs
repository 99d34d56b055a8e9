//! Discrete distributions.
//!
//! [`RationalDist`] stores integer counts `n_i` with total `N`, so the
//! probability of outcome `i` is the exact fraction `n_i / N`. [`RealDist`]
//! stores a probability vector that was within [`NORMALIZATION_TOLERANCE`] of
//! the simplex and has been renormalized onto it.
//!
//! Outcomes with zero count or zero probability are legal and contribute
//! nothing to any entropy computation.

use alloc::borrow::Cow;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::{Error, Result, NORMALIZATION_TOLERANCE};

/// Common read access to a finite distribution.
pub trait Distribution {
    /// Number of outcomes, zero-probability ones included.
    fn outcomes(&self) -> usize;

    /// Probabilities as floats, in outcome order.
    fn probabilities(&self) -> Cow<'_, [f64]>;

    /// Outcome names, when present.
    fn labels(&self) -> Option<&[String]>;
}

/// An exact fraction `numer / denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    /// Numerator.
    pub numer: u64,
    /// Denominator, never zero.
    pub denom: u64,
}

impl Fraction {
    /// Nearest float.
    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

fn check_labels(labels: &[String], outcomes: usize) -> Result<()> {
    if labels.len() != outcomes {
        return Err(Error::LabelMismatch {
            labels: labels.len(),
            outcomes,
        });
    }
    Ok(())
}

/// Distribution given by nonnegative integer counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalDist {
    counts: Vec<u64>,
    total: u64,
    labels: Option<Vec<String>>,
}

impl RationalDist {
    /// Builds a distribution from counts. Zero counts are kept as outcomes of
    /// probability zero; at least one count must be positive.
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Empty);
        }
        let total = counts
            .iter()
            .try_fold(0u64, |acc, &n| acc.checked_add(n))
            .ok_or(Error::CountOverflow)?;
        if total == 0 {
            return Err(Error::AllZero);
        }
        Ok(Self {
            counts,
            total,
            labels: None,
        })
    }

    /// Builds a distribution from signed counts, rejecting negatives.
    pub fn from_signed(counts: &[i64]) -> Result<Self> {
        let counts = counts
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u64::try_from(value).map_err(|_| Error::NegativeCount { index, value })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(counts)
    }

    /// The equiprobable distribution over `outcomes` outcomes.
    pub fn uniform(outcomes: usize) -> Result<Self> {
        if outcomes == 0 {
            return Err(Error::ZeroOutcomes);
        }
        Self::new(alloc::vec![1; outcomes])
    }

    /// Attaches outcome names; there must be exactly one per outcome.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels, self.counts.len())?;
        self.labels = Some(labels);
        Ok(self)
    }

    /// Counts `n_i`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total `N = Σ n_i`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Exact probability `n_i / N` of outcome `index`, unreduced.
    pub fn probability(&self, index: usize) -> Option<Fraction> {
        self.counts.get(index).map(|&numer| Fraction {
            numer,
            denom: self.total,
        })
    }

    /// Joint distribution of two independent experiments.
    ///
    /// Outcomes are ordered row-major: every pair with `self`'s first outcome,
    /// then every pair with its second, and so on. Counts multiply, so the
    /// total is `self.total() * other.total()`; overflow is an error.
    pub fn product(&self, other: &RationalDist) -> Result<RationalDist> {
        self.total
            .checked_mul(other.total)
            .ok_or(Error::CountOverflow)?;
        let mut counts = Vec::with_capacity(self.counts.len() * other.counts.len());
        for &a in &self.counts {
            for &b in &other.counts {
                counts.push(a.checked_mul(b).ok_or(Error::CountOverflow)?);
            }
        }
        let joint = RationalDist::new(counts)?;
        match (&self.labels, &other.labels) {
            (Some(left), Some(right)) => {
                let labels = left
                    .iter()
                    .flat_map(|a| right.iter().map(move |b| format!("{a},{b}")))
                    .collect();
                joint.with_labels(labels)
            }
            _ => Ok(joint),
        }
    }
}

impl Distribution for RationalDist {
    fn outcomes(&self) -> usize {
        self.counts.len()
    }

    fn probabilities(&self) -> Cow<'_, [f64]> {
        let total = self.total as f64;
        Cow::Owned(self.counts.iter().map(|&n| n as f64 / total).collect())
    }

    fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// Distribution given by real probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct RealDist {
    probs: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl RealDist {
    /// Validates a probability vector and renormalizes it by its sum.
    ///
    /// Every entry must be finite and nonnegative, and the sum must be within
    /// [`NORMALIZATION_TOLERANCE`] of one.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteProbability { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let sum = math::sum(probs.iter().copied());
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        let probs = if sum == 1.0 {
            probs
        } else {
            probs.into_iter().map(|p| p / sum).collect()
        };
        Ok(Self {
            probs,
            labels: None,
        })
    }

    /// Float view of an exact distribution, `n_i / N` per outcome. Labels are
    /// carried over.
    pub fn from_rational(dist: &RationalDist) -> Self {
        Self {
            probs: dist.probabilities().into_owned(),
            labels: dist.labels.clone(),
        }
    }

    /// Attaches outcome names; there must be exactly one per outcome.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_labels(&labels, self.probs.len())?;
        self.labels = Some(labels);
        Ok(self)
    }

    /// Probabilities `p_i`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

impl Distribution for RealDist {
    fn outcomes(&self) -> usize {
        self.probs.len()
    }

    fn probabilities(&self) -> Cow<'_, [f64]> {
        Cow::Borrowed(&self.probs)
    }

    fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// Either kind of distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum Dist {
    /// Exact counts.
    Rational(RationalDist),
    /// Real probabilities.
    Real(RealDist),
}

impl Distribution for Dist {
    fn outcomes(&self) -> usize {
        match self {
            Dist::Rational(d) => d.outcomes(),
            Dist::Real(d) => d.outcomes(),
        }
    }

    fn probabilities(&self) -> Cow<'_, [f64]> {
        match self {
            Dist::Rational(d) => d.probabilities(),
            Dist::Real(d) => d.probabilities(),
        }
    }

    fn labels(&self) -> Option<&[String]> {
        match self {
            Dist::Rational(d) => d.labels(),
            Dist::Real(d) => d.labels(),
        }
    }
}

impl From<RationalDist> for Dist {
    fn from(d: RationalDist) -> Self {
        Dist::Rational(d)
    }
}

impl From<RealDist> for Dist {
    fn from(d: RealDist) -> Self {
        Dist::Real(d)
    }
}

/// Rounds `dist` to counts over a fixed denominator.
///
/// Uses largest-remainder apportionment of `N·p_i`: every outcome first gets
/// `floor(N·p_i)`, then the leftover units go to the largest fractional parts,
/// ties to the lowest index. The counts sum to exactly `N` and each
/// `|n_i/N − p_i|` is below `1/N`.
pub fn rational_approx(dist: &RealDist, denominator: u64) -> Result<RationalDist> {
    if denominator == 0 {
        return Err(Error::ZeroDenominator);
    }
    let scale = denominator as f64;
    let mut counts = Vec::with_capacity(dist.probs.len());
    let mut remainders = Vec::with_capacity(dist.probs.len());
    let mut assigned: u128 = 0;
    for &p in &dist.probs {
        let scaled = scale * p;
        let whole = math::floor(scaled);
        counts.push(whole as u64);
        remainders.push(scaled - whole);
        assigned += whole as u128;
    }

    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| remainders[b].total_cmp(&remainders[a]).then(a.cmp(&b)));

    let target = denominator as u128;
    if assigned <= target {
        let deficit = (target - assigned) as usize;
        for &i in order.iter().cycle().take(deficit) {
            counts[i] += 1;
        }
    } else {
        // Only reachable through float rounding when the sum sits just above one.
        let mut surplus = assigned - target;
        for &i in order.iter().rev().cycle() {
            if surplus == 0 {
                break;
            }
            if counts[i] > 0 {
                counts[i] -= 1;
                surplus -= 1;
            }
        }
    }

    let approx = RationalDist::new(counts)?;
    match &dist.labels {
        Some(labels) => approx.with_labels(labels.clone()),
        None => Ok(approx),
    }
}
