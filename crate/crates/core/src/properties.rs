//! Randomized checks of the measure's defining properties.
//!
//! Each trial draws its own generator from [`trial_seed`], so trials can run
//! in any order or in parallel and any single trial can be replayed from its
//! sub-seed.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::ensemble::{
    coarse_grain, decompose_member, fine_grain, is_classical, probabilistic_union, quantumness,
    unitary_conjugate, Ensemble, Partition,
};
use crate::error::{Error, Result};
use crate::norm::NormSpec;
use crate::random::{random_density_matrix, random_probabilities, random_unitary, seeded_rng, trial_seed, DetRng};
use crate::states::DensityMatrix;

/// Additive slack allowed on every inequality and equality check.
pub const PROPERTY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Positivity,
    UnitaryInvariance,
    UnionConcavity,
    DecompositionConvexity,
    FineGraining,
    CoarseGraining,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Positivity,
        Property::UnitaryInvariance,
        Property::UnionConcavity,
        Property::DecompositionConvexity,
        Property::FineGraining,
        Property::CoarseGraining,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Positivity => "positivity",
            Property::UnitaryInvariance => "unitary-invariance",
            Property::UnionConcavity => "union-concavity",
            Property::DecompositionConvexity => "decomposition-convexity",
            Property::FineGraining => "fine-graining",
            Property::CoarseGraining => "coarse-graining",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub dim: usize,
    pub members: usize,
    pub spec: NormSpec,
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::ParamOutOfRange("dimension must be >= 2".into()));
        }
        if self.members < 2 {
            return Err(Error::ParamOutOfRange("need at least 2 members".into()));
        }
        self.spec.validate_for(self.dim)
    }
}

/// Result of one property on one trial.
///
/// `excess` is signed: it is how far the checked quantity went past the
/// bound the property asserts (negative when the bound holds strictly).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub property: Property,
    pub excess: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub sub_seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn random_ensemble(dim: usize, members: usize, rng: &mut DetRng) -> Result<Ensemble> {
    let probs = random_probabilities(members, rng)?;
    let states = probs
        .into_iter()
        .map(|p| {
            let rank = rng.gen_range(1..=dim);
            Ok((p, random_density_matrix(dim, rank, rng)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(states)
}

/// Pairwise-commuting ensemble: random diagonal states in one random basis.
fn random_commuting_ensemble(dim: usize, members: usize, rng: &mut DetRng) -> Result<Ensemble> {
    let probs = random_probabilities(members, rng)?;
    let states = probs
        .into_iter()
        .map(|p| Ok((p, DensityMatrix::diagonal(&random_probabilities(dim, rng)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let u = random_unitary(dim, rng)?;
    unitary_conjugate(&Ensemble::new(states)?, &u)
}

fn random_partition(n: usize, rng: &mut DetRng) -> Partition {
    let blocks = rng.gen_range(1..=n);
    let mut labels: Vec<usize> = (0..n).map(|i| i % blocks).collect();
    labels.shuffle(rng);
    let groups: Vec<Vec<usize>> = (0..blocks)
        .map(|b| (0..n).filter(|&i| labels[i] == b).collect())
        .filter(|g: &Vec<usize>| !g.is_empty())
        .collect();
    Partition::new(groups, n).expect("labels cover 0..n")
}

fn outcome(property: Property, excess: f64, extra_ok: bool) -> CheckOutcome {
    CheckOutcome {
        property,
        excess,
        passed: extra_ok && excess <= PROPERTY_SLACK,
    }
}

/// Runs all six property checks on freshly drawn ensembles.
pub fn run_trial(config: &CheckConfig, trial: u64, sub_seed: u64) -> Result<TrialOutcome> {
    config.validate()?;
    let CheckConfig { dim, members, spec } = *config;
    let mut rng = seeded_rng(sub_seed);
    let m = |e: &Ensemble| quantumness(e, spec);

    let ensemble = random_ensemble(dim, members, &mut rng)?;
    let base = m(&ensemble)?;
    let mut checks = Vec::with_capacity(Property::ALL.len());

    // zero exactly on commuting families, positive otherwise
    let commuting = random_commuting_ensemble(dim, members, &mut rng)?;
    let m_commuting = m(&commuting)?;
    let iff_holds = (base <= PROPERTY_SLACK) == is_classical(&ensemble, PROPERTY_SLACK)
        && is_classical(&commuting, PROPERTY_SLACK);
    checks.push(outcome(Property::Positivity, (-base).max(m_commuting), iff_holds));

    let u = random_unitary(dim, &mut rng)?;
    let rotated = m(&unitary_conjugate(&ensemble, &u)?)?;
    checks.push(outcome(Property::UnitaryInvariance, (rotated - base).abs(), true));

    let parts = rng.gen_range(2..=3);
    let pieces = (0..parts)
        .map(|_| {
            let size = rng.gen_range(1..=members);
            random_ensemble(dim, size, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = random_probabilities(parts, &mut rng)?;
    let union = m(&probabilistic_union(&pieces, &weights)?)?;
    let mut mixed = 0.0;
    for (piece, w) in pieces.iter().zip(&weights) {
        mixed += w * m(piece)?;
    }
    checks.push(outcome(Property::UnionConcavity, mixed - union, true));

    let c = rng.gen_range(0..members);
    let split = ensemble.members()[c].state.spectral_decomposition();
    let branches = decompose_member(&ensemble, c, &split)?;
    let mut averaged = 0.0;
    for ((w, _), branch) in split.iter().zip(&branches) {
        averaged += w * m(branch)?;
    }
    checks.push(outcome(Property::DecompositionConvexity, base - averaged, true));

    let decompositions: Vec<_> = ensemble
        .members()
        .iter()
        .map(|mem| mem.state.spectral_decomposition())
        .collect();
    let fine = m(&fine_grain(&ensemble, &decompositions)?)?;
    checks.push(outcome(Property::FineGraining, base - fine, true));

    let partition = random_partition(members, &mut rng);
    let coarse = m(&coarse_grain(&ensemble, &partition)?)?;
    checks.push(outcome(Property::CoarseGraining, coarse - base, true));

    Ok(TrialOutcome {
        trial,
        sub_seed,
        checks,
    })
}

/// Pass counts and worst excess per property over a run.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyTally {
    pub property: Property,
    pub passed: u64,
    pub failed: u64,
    pub worst_excess: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub trials: u64,
    pub tallies: Vec<PropertyTally>,
    /// `(trial, sub_seed)` of every trial with at least one failure.
    pub failures: Vec<(u64, u64)>,
}

impl RunSummary {
    pub fn new() -> Self {
        Self {
            trials: 0,
            tallies: Property::ALL
                .iter()
                .map(|&property| PropertyTally {
                    property,
                    passed: 0,
                    failed: 0,
                    worst_excess: f64::NEG_INFINITY,
                })
                .collect(),
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, outcome: &TrialOutcome) {
        self.trials += 1;
        for check in &outcome.checks {
            let tally = self
                .tallies
                .iter_mut()
                .find(|t| t.property == check.property)
                .expect("every property is tallied");
            if check.passed {
                tally.passed += 1;
            } else {
                tally.failed += 1;
            }
            tally.worst_excess = tally.worst_excess.max(check.excess);
        }
        if !outcome.passed() {
            self.failures.push((outcome.trial, outcome.sub_seed));
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn worst_excess(&self) -> f64 {
        self.tallies
            .iter()
            .map(|t| t.worst_excess)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl Default for RunSummary {
    fn default() -> Self {
        Self::new()
    }
}

/// Runs `trials` trials sequentially.
pub fn run_checks(config: &CheckConfig, seed: u64, trials: u64) -> Result<RunSummary> {
    config.validate()?;
    let mut summary = RunSummary::new();
    for trial in 0..trials {
        summary.record(&run_trial(config, trial, trial_seed(seed, trial))?);
    }
    Ok(summary)
}
