//! Seeded generators for the randomized checks.
//!
//! The stream is ChaCha8 seeded through `seed_from_u64`, so a given seed
//! produces the same cases on every platform.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::composition::CompTree;
use crate::dist::RationalDist;

/// Largest count drawn for a single outcome.
pub const MAX_COUNT: u64 = 20;

/// Outcomes per leaf in random composition trees.
pub const TREE_LEAF_OUTCOMES: usize = 8;

/// Largest fan-out of a random branch.
pub const TREE_MAX_FANOUT: usize = 6;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Between 1 and `max_outcomes` outcomes, counts uniform on `[0, MAX_COUNT]`.
/// Draws with no positive count or a total above `max_total` are rejected.
///
/// Both ranges shrink to `max_total` when it is small so rejection terminates
/// quickly.
pub(crate) fn random_counts<R: Rng>(
    rng: &mut R,
    max_outcomes: usize,
    max_total: u64,
) -> RationalDist {
    let max_outcomes = max_outcomes.clamp(1, usize::try_from(max_total).unwrap_or(usize::MAX));
    let max_count = MAX_COUNT.min(max_total);
    loop {
        let outcomes = rng.gen_range(1..=max_outcomes);
        let counts: Vec<u64> = (0..outcomes)
            .map(|_| rng.gen_range(0..=max_count))
            .collect();
        let total: u64 = counts.iter().sum();
        if total == 0 || total > max_total {
            continue;
        }
        return RationalDist::new(counts).expect("positive total");
    }
}

/// A random tree of depth at most `max_depth`; depth 1 is a bare leaf.
///
/// Below the depth limit a node is a leaf with probability 1/3, otherwise a
/// branch with 1 to [`TREE_MAX_FANOUT`] children. Each branch weight is zero
/// with probability 1/10 and uniform on `[0, 1)` otherwise, then normalized.
pub(crate) fn random_tree<R: Rng>(rng: &mut R, max_depth: usize) -> CompTree {
    if max_depth <= 1 || rng.gen_ratio(1, 3) {
        return CompTree::leaf(random_counts(rng, TREE_LEAF_OUTCOMES, u64::MAX));
    }
    let fanout = rng.gen_range(1..=TREE_MAX_FANOUT);
    let mut weights: Vec<f64> = (0..fanout)
        .map(|_| {
            if rng.gen_ratio(1, 10) {
                0.0
            } else {
                rng.gen::<f64>()
            }
        })
        .collect();
    let sum: f64 = weights.iter().sum();
    if sum > 0.0 {
        weights.iter_mut().for_each(|w| *w /= sum);
    } else {
        weights[0] = 1.0;
    }
    CompTree::branch(
        weights
            .into_iter()
            .map(|w| (w, random_tree(rng, max_depth - 1)))
            .collect::<Vec<_>>(),
    )
}
