//! Hierarchical experiments.
//!
//! A [`CompTree`] is either a leaf distribution or a branch that picks one of
//! its children with given probabilities. The path probability of a node is
//! the product of branch probabilities from the root down to it (the root has
//! path probability one). The total uncertainty of the tree is
//!
//! ```text
//! Σ_nodes path_prob(node) · H(node)
//! ```
//!
//! where `H` of a branch is the entropy of its selection probabilities and `H`
//! of a leaf is the entropy of its distribution. [`flatten`] turns the tree
//! into the single distribution over root-to-outcome paths; the entropy of
//! that distribution equals the total uncertainty.
//!
//! Outcomes in the flattened distribution are identified by path position
//! only. Two leaves that share labels still produce distinct outcomes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use crate::dist::{Dist, Distribution, RealDist};
use crate::entropy::{Base, EntropyFunctional, Shannon};
use crate::math;
use crate::{Error, Result, NORMALIZATION_TOLERANCE};

/// A hierarchical experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum CompTree {
    /// A terminal experiment.
    Leaf(Dist),
    /// Pick one child with the paired probability.
    Branch(Vec<(f64, CompTree)>),
}

impl CompTree {
    /// Leaf over `dist`.
    pub fn leaf(dist: impl Into<Dist>) -> Self {
        CompTree::Leaf(dist.into())
    }

    /// Branch over `(probability, subtree)` pairs.
    pub fn branch(children: impl IntoIterator<Item = (f64, CompTree)>) -> Self {
        CompTree::Branch(children.into_iter().collect())
    }

    /// Number of nodes, branches and leaves together.
    pub fn node_count(&self) -> usize {
        match self {
            CompTree::Leaf(_) => 1,
            CompTree::Branch(children) => {
                1 + children.iter().map(|(_, c)| c.node_count()).sum::<usize>()
            }
        }
    }
}

/// Compact one-line form, e.g. `branch[0.5: leaf[1,1], 0.5: leaf[0.25,0.75]]`.
impl fmt::Display for CompTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{item}")?;
            }
            Ok(())
        }
        match self {
            CompTree::Leaf(Dist::Rational(d)) => {
                f.write_str("leaf[")?;
                list(f, d.counts())?;
                f.write_str("]")
            }
            CompTree::Leaf(Dist::Real(d)) => {
                f.write_str("leaf[")?;
                list(f, d.probs())?;
                f.write_str("]")
            }
            CompTree::Branch(children) => {
                f.write_str("branch[")?;
                for (i, (p, child)) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}: {child}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Location of a node: child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    fn child(&self, index: usize) -> NodePath {
        let mut steps = self.0.clone();
        steps.push(index);
        NodePath(steps)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for step in &self.0 {
            write!(f, "/{step}")?;
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for NodePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// What is wrong with a branch.
#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    /// A branch with no children.
    EmptyBranch,
    /// A branch probability below zero.
    NegativeProbability {
        /// Child index.
        child: usize,
        /// The offending value.
        value: f64,
    },
    /// A branch probability that is NaN or infinite.
    NonFiniteProbability {
        /// Child index.
        child: usize,
    },
    /// Branch probabilities that do not sum to one.
    NotNormalized {
        /// The observed sum.
        sum: f64,
    },
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::EmptyBranch => f.write_str("branch has no children"),
            ViolationKind::NegativeProbability { child, value } => {
                write!(f, "negative probability {value} for child {child}")
            }
            ViolationKind::NonFiniteProbability { child } => {
                write!(f, "non-finite probability for child {child}")
            }
            ViolationKind::NotNormalized { sum } => {
                write!(f, "branch probabilities sum to {sum}")
            }
        }
    }
}

/// The first invalid node found in pre-order, and why.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Where.
    pub path: NodePath,
    /// What.
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.path, self.kind)
    }
}

/// Checks every branch: non-empty, probabilities finite and nonnegative, and
/// summing to one within [`NORMALIZATION_TOLERANCE`].
pub fn validate(tree: &CompTree) -> core::result::Result<(), Violation> {
    validate_at(tree, &NodePath::default())
}

fn validate_at(tree: &CompTree, path: &NodePath) -> core::result::Result<(), Violation> {
    let CompTree::Branch(children) = tree else {
        return Ok(());
    };
    let fail = |kind| {
        Err(Violation {
            path: path.clone(),
            kind,
        })
    };
    if children.is_empty() {
        return fail(ViolationKind::EmptyBranch);
    }
    for (child, &(p, _)) in children.iter().enumerate() {
        if !p.is_finite() {
            return fail(ViolationKind::NonFiniteProbability { child });
        }
        if p < 0.0 {
            return fail(ViolationKind::NegativeProbability { child, value: p });
        }
    }
    let sum = math::sum(children.iter().map(|(p, _)| *p));
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return fail(ViolationKind::NotNormalized { sum });
    }
    for (i, (_, subtree)) in children.iter().enumerate() {
        validate_at(subtree, &path.child(i))?;
    }
    Ok(())
}

/// Branch probabilities divided by their sum.
fn selection(children: &[(f64, CompTree)]) -> Vec<f64> {
    let sum = math::sum(children.iter().map(|(p, _)| *p));
    children.iter().map(|(p, _)| p / sum).collect()
}

/// Whether a node selects among children or is terminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum NodeKind {
    /// Selector node.
    Branch,
    /// Terminal node.
    Leaf,
}

/// One node's share of the total.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NodeUncertainty {
    /// Where the node sits.
    pub path: NodePath,
    /// Branch or leaf.
    pub kind: NodeKind,
    /// Probability that the experiment reaches this node.
    pub path_prob: f64,
    /// Entropy of the node's own distribution.
    pub local_entropy: f64,
}

/// Per-node uncertainties in pre-order, and their weighted sum.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct UncertaintyBreakdown {
    /// Every node, root first, children left to right.
    pub nodes: Vec<NodeUncertainty>,
    /// `Σ path_prob · local_entropy`.
    pub total: f64,
}

/// Total uncertainty of a hierarchical experiment under Shannon entropy.
pub fn total_uncertainty(tree: &CompTree, base: Base) -> Result<UncertaintyBreakdown> {
    total_uncertainty_with(&Shannon, tree, base)
}

/// [`total_uncertainty`] with an arbitrary uncertainty measure.
pub fn total_uncertainty_with<F: EntropyFunctional + ?Sized>(
    functional: &F,
    tree: &CompTree,
    base: Base,
) -> Result<UncertaintyBreakdown> {
    validate(tree).map_err(Error::InvalidTree)?;
    let mut nodes = Vec::with_capacity(tree.node_count());
    collect_nodes(functional, tree, base, NodePath::default(), 1.0, &mut nodes);
    let total = math::sum(nodes.iter().map(|n| n.path_prob * n.local_entropy));
    Ok(UncertaintyBreakdown { nodes, total })
}

fn collect_nodes<F: EntropyFunctional + ?Sized>(
    functional: &F,
    tree: &CompTree,
    base: Base,
    path: NodePath,
    path_prob: f64,
    out: &mut Vec<NodeUncertainty>,
) {
    match tree {
        CompTree::Leaf(dist) => out.push(NodeUncertainty {
            path,
            kind: NodeKind::Leaf,
            path_prob,
            local_entropy: functional.entropy_of(&dist.probabilities(), base),
        }),
        CompTree::Branch(children) => {
            let weights = selection(children);
            out.push(NodeUncertainty {
                path: path.clone(),
                kind: NodeKind::Branch,
                path_prob,
                local_entropy: functional.entropy_of(&weights, base),
            });
            for (i, ((_, subtree), w)) in children.iter().zip(&weights).enumerate() {
                collect_nodes(functional, subtree, base, path.child(i), path_prob * w, out);
            }
        }
    }
}

/// The flat experiment over all root-to-outcome paths, depth-first and left
/// to right.
///
/// Each outcome's probability is the product of branch probabilities along
/// its path times the leaf probability. Labels are the child indices joined
/// by `/`, ending in the leaf outcome's label (or its index). A bare leaf
/// comes back with its own probabilities unchanged.
pub fn flatten(tree: &CompTree) -> Result<RealDist> {
    validate(tree).map_err(Error::InvalidTree)?;
    if let CompTree::Leaf(dist) = tree {
        let flat = match dist {
            Dist::Rational(d) => RealDist::from_rational(d),
            Dist::Real(d) => d.clone(),
        };
        return Ok(flat);
    }
    let mut probs = Vec::new();
    let mut labels = Vec::new();
    flatten_into(tree, String::new(), 1.0, &mut probs, &mut labels);
    RealDist::new(probs)?.with_labels(labels)
}

fn flatten_into(
    tree: &CompTree,
    prefix: String,
    path_prob: f64,
    probs: &mut Vec<f64>,
    labels: &mut Vec<String>,
) {
    match tree {
        CompTree::Leaf(dist) => {
            let names = dist.labels();
            for (i, p) in dist.probabilities().iter().enumerate() {
                probs.push(path_prob * p);
                let name = match names {
                    Some(names) => names[i].clone(),
                    None => i.to_string(),
                };
                labels.push(format!("{prefix}{name}"));
            }
        }
        CompTree::Branch(children) => {
            let weights = selection(children);
            for (i, ((_, subtree), w)) in children.iter().zip(weights).enumerate() {
                flatten_into(
                    subtree,
                    format!("{prefix}{i}/"),
                    path_prob * w,
                    probs,
                    labels,
                );
            }
        }
    }
}

/// Coin flip choosing between two fair six-sided dice.
pub fn coin_and_two_dice() -> CompTree {
    let die = || CompTree::leaf(crate::RationalDist::uniform(6).expect("six faces"));
    CompTree::branch(vec![(0.5, die()), (0.5, die())])
}
