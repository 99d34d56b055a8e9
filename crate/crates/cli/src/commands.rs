//! The four subcommands.

use std::fmt::Write as _;
use std::path::Path;
use std::thread;

use clap::ValueEnum;
use serde::Serialize;
use shannon_core::lab::{self, AxiomReport, ConvergencePoint, Criterion};
use shannon_core::{
    decompose, entropy, flatten, total_uncertainty, validate, Base, DecompositionReport,
    Distribution, Error, NodeKind, NodeUncertainty, RealDist, AGREEMENT_TOLERANCE,
};

use crate::format::{fixed, sci, unit};
use crate::histogram::{self, Histogram};
use crate::{tree, CliError, Output};

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_histogram(path: &Path) -> Result<Histogram, CliError> {
    histogram::parse(&read(path)?)
}

fn usage(err: Error) -> CliError {
    CliError::Usage(err.to_string())
}

#[derive(Serialize)]
struct EntropyJson<'a> {
    command: &'static str,
    mode: &'static str,
    base: Base,
    outcomes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<u64>,
    entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionReport>,
}

/// `shannon entropy FILE`: entropy of a histogram, plus the grouping identity
/// for count files.
pub fn entropy_cmd(path: &Path, base: Base) -> Result<Output, CliError> {
    let hist = read_histogram(path)?;
    let (value, outcomes, labels, total, decomposition) = match &hist {
        Histogram::Counts(d) => (
            entropy(d, base).value(),
            d.outcomes(),
            d.labels(),
            Some(d.total()),
            Some(decompose(d, base)),
        ),
        Histogram::Probs(d) => (
            entropy(d, base).value(),
            d.outcomes(),
            d.labels(),
            None,
            None,
        ),
    };

    let mut human = String::new();
    writeln!(human, "entropy   {} {}", fixed(value), unit(base)).unwrap();
    writeln!(human, "base      {}", base.value()).unwrap();
    writeln!(human, "outcomes  {outcomes}").unwrap();
    if let Some(total) = total {
        writeln!(human, "total     {total}").unwrap();
    }
    if let Some(r) = &decomposition {
        writeln!(human, "decomposition: log N = H[p] + sum p_i log n_i").unwrap();
        writeln!(human, "  log N            {}", fixed(r.log_total)).unwrap();
        writeln!(human, "  sum p_i log n_i  {}", fixed(r.group_term)).unwrap();
        writeln!(human, "  H[p]             {}", fixed(r.entropy_term)).unwrap();
        writeln!(human, "  residual         {}", sci(r.residual)).unwrap();
    }

    let json = json(&EntropyJson {
        command: "entropy",
        mode: hist.mode(),
        base,
        outcomes,
        total,
        entropy: value,
        labels,
        decomposition,
    });
    Ok(Output {
        human,
        json,
        exit_code: 0,
    })
}

#[derive(Serialize)]
struct ComposeJson<'a> {
    command: &'static str,
    base: Base,
    nodes: &'a [NodeUncertainty],
    total: f64,
    flattened_outcomes: usize,
    flattened_entropy: f64,
    residual: f64,
    tolerance: f64,
    passed: bool,
}

/// `shannon compose FILE`: weighted node uncertainties of a tree against the
/// entropy of its flattened experiment.
pub fn compose_cmd(path: &Path, base: Base) -> Result<Output, CliError> {
    let tree = tree::read(path)?;
    validate(&tree).map_err(|v| CliError::Validation(v.to_string()))?;
    let breakdown = total_uncertainty(&tree, base).map_err(usage)?;
    let flat = flatten(&tree).map_err(usage)?;
    let flat_entropy = entropy(&flat, base).value();
    let residual = (flat_entropy - breakdown.total).abs();
    let passed = residual <= AGREEMENT_TOLERANCE;

    let mut human = String::new();
    let width = breakdown
        .nodes
        .iter()
        .map(|n| n.path.to_string().len())
        .max()
        .unwrap_or(4)
        .max(4);
    writeln!(human, "{:width$}  kind    path prob  entropy", "node").unwrap();
    for n in &breakdown.nodes {
        let kind = match n.kind {
            NodeKind::Branch => "branch",
            NodeKind::Leaf => "leaf",
        };
        writeln!(
            human,
            "{:width$}  {kind:6}  {}   {}",
            n.path.to_string(),
            fixed(n.path_prob),
            fixed(n.local_entropy)
        )
        .unwrap();
    }
    writeln!(
        human,
        "total uncertainty  {} {}",
        fixed(breakdown.total),
        unit(base)
    )
    .unwrap();
    writeln!(
        human,
        "flattened entropy  {} {} ({} outcomes)",
        fixed(flat_entropy),
        unit(base),
        flat.outcomes()
    )
    .unwrap();
    writeln!(
        human,
        "residual           {} ({})",
        sci(residual),
        if passed { "ok" } else { "FAILED" }
    )
    .unwrap();

    let json = json(&ComposeJson {
        command: "compose",
        base,
        nodes: &breakdown.nodes,
        total: breakdown.total,
        flattened_outcomes: flat.outcomes(),
        flattened_entropy: flat_entropy,
        residual,
        tolerance: AGREEMENT_TOLERANCE,
        passed,
    });
    Ok(Output {
        human,
        json,
        exit_code: if passed { 0 } else { 4 },
    })
}

/// Names accepted by `verify --check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Monotonicity,
    Additivity,
    GeneralAdditivity,
    Composition,
    Decomposition,
    EstimateK,
    Continuity,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Monotonicity,
        CheckName::Additivity,
        CheckName::GeneralAdditivity,
        CheckName::Composition,
        CheckName::Decomposition,
        CheckName::EstimateK,
        CheckName::Continuity,
    ];
}

/// Parameters for `verify`. Defaults reproduce the reference sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyPlan {
    pub checks: Vec<CheckName>,
    /// Overrides every per-check seed when set.
    pub seed: Option<u64>,
    pub n_max: u64,
    pub x_max: u64,
    pub pairs: u64,
    pub max_outcomes: usize,
    pub trees: u64,
    pub max_depth: usize,
    pub dists: u64,
    pub max_total: u64,
    pub grid_points: usize,
    pub denominators: Vec<u64>,
}

impl Default for VerifyPlan {
    fn default() -> Self {
        VerifyPlan {
            checks: CheckName::ALL.to_vec(),
            seed: None,
            n_max: 1_000_000,
            x_max: 64,
            pairs: 1000,
            max_outcomes: 20,
            trees: 500,
            max_depth: 5,
            dists: 1000,
            max_total: 10_000,
            grid_points: 1000,
            denominators: vec![10, 100, 1000, 10_000],
        }
    }
}

pub const GENERAL_ADDITIVITY_SEED: u64 = 42;
pub const COMPOSITION_SEED: u64 = 7;
pub const DECOMPOSITION_SEED: u64 = 1;

/// Target of the continuity check: a coin with heads probability 1/π.
pub fn inverse_pi_coin() -> RealDist {
    let p = std::f64::consts::FRAC_1_PI;
    RealDist::new(vec![p, 1.0 - p]).expect("valid coin")
}

impl VerifyPlan {
    fn run_one(&self, check: CheckName, base: Base) -> shannon_core::Result<AxiomReport> {
        let seed = |default| self.seed.unwrap_or(default);
        match check {
            CheckName::Monotonicity => lab::check_monotonicity(self.n_max, base),
            CheckName::Additivity => lab::check_additivity(self.x_max, base),
            CheckName::GeneralAdditivity => lab::check_general_additivity(
                self.pairs,
                self.max_outcomes,
                seed(GENERAL_ADDITIVITY_SEED),
                base,
            ),
            CheckName::Composition => {
                lab::check_composition(self.trees, self.max_depth, seed(COMPOSITION_SEED), base)
            }
            CheckName::Decomposition => {
                lab::check_decomposition(self.dists, self.max_total, seed(DECOMPOSITION_SEED), base)
            }
            CheckName::EstimateK => lab::check_log_constant(1.0, 100.0, self.grid_points, base),
            CheckName::Continuity => {
                lab::check_continuity(&inverse_pi_coin(), &self.denominators, base)
            }
        }
    }

    /// Runs the selected checks in parallel; reports keep the selection order.
    pub fn run(&self, base: Base) -> Result<Vec<AxiomReport>, CliError> {
        thread::scope(|scope| {
            let handles: Vec<_> = self
                .checks
                .iter()
                .map(|&check| scope.spawn(move || self.run_one(check, base)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("check thread panicked").map_err(usage))
                .collect()
        })
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    command: &'static str,
    base: Base,
    seed: Option<u64>,
    passed: bool,
    reports: &'a [AxiomReport],
}

/// `shannon verify`: runs the property checks and tabulates them.
pub fn verify_cmd(plan: &VerifyPlan, base: Base) -> Result<Output, CliError> {
    let reports = plan.run(base)?;
    let passed = reports.iter().all(|r| r.passed);

    let mut human = String::new();
    writeln!(
        human,
        "{:<20}{:>10}  {:>16}  {:>12}  result",
        "check", "cases", "worst residual", "tolerance"
    )
    .unwrap();
    for r in &reports {
        let tolerance = match r.criterion {
            Criterion::AtMost => format!("<= {}", sci(r.tolerance)),
            Criterion::Above => format!("> {}", sci(r.tolerance)),
        };
        writeln!(
            human,
            "{:<20}{:>10}  {:>16}  {:>12}  {}",
            r.check_name,
            r.cases_run,
            sci(r.worst_residual),
            tolerance,
            if r.passed { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    for r in reports.iter().filter(|r| !r.passed) {
        writeln!(human, "{} failed at {}", r.check_name, r.worst_case_input).unwrap();
    }
    writeln!(
        human,
        "{}",
        if passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();

    let json = json(&VerifyJson {
        command: "verify",
        base,
        seed: plan.seed,
        passed,
        reports: &reports,
    });
    Ok(Output {
        human,
        json,
        exit_code: if passed { 0 } else { 4 },
    })
}

#[derive(Serialize)]
struct ApproxJson<'a> {
    command: &'static str,
    base: Base,
    target: &'a [f64],
    target_entropy: f64,
    points: &'a [ConvergencePoint],
    settling: bool,
}

/// `shannon approx FILE --N ...`: entropy error of rounding a probability
/// histogram to each denominator.
pub fn approx_cmd(path: &Path, denominators: &[u64], base: Base) -> Result<Output, CliError> {
    let target = match read_histogram(path)? {
        Histogram::Probs(d) => d,
        Histogram::Counts(_) => {
            return Err(CliError::Usage("approx requires probability mode".into()))
        }
    };
    let points = lab::continuity_convergence(&target, denominators, base).map_err(usage)?;
    let errors: Vec<f64> = points.iter().map(|p| p.entropy_error).collect();
    let settling = lab::is_settling(&errors);
    let target_entropy = entropy(&target, base).value();

    let mut human = String::new();
    writeln!(
        human,
        "target entropy  {} {}",
        fixed(target_entropy),
        unit(base)
    )
    .unwrap();
    writeln!(
        human,
        "{:>12}  {:>14}  {:>12}  counts",
        "N", "entropy error", "max |dp|"
    )
    .unwrap();
    for p in &points {
        let counts: Vec<String> = p.counts.iter().map(u64::to_string).collect();
        writeln!(
            human,
            "{:>12}  {:>14}  {:>12}  {}",
            p.denominator,
            sci(p.entropy_error),
            sci(p.max_prob_error),
            counts.join(",")
        )
        .unwrap();
    }

    let json = json(&ApproxJson {
        command: "approx",
        base,
        target: target.probs(),
        target_entropy,
        points: &points,
        settling,
    });
    Ok(Output {
        human,
        json,
        exit_code: 0,
    })
}
