//! Ensembles of states, the commutator-based quantumness measure, and the
//! transformations it is monotone under.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{commutator, ComplexMatrix};
use crate::norm::{norm, NormSpec};
use crate::states::{DensityMatrix, STATE_TOL};

/// One `(p, ρ)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub probability: f64,
    pub state: DensityMatrix,
}

/// An indexed family `{(p_i, ρ_i)}` with `Σ p_i = 1`.
///
/// Members are never merged: two equal states at different indices stay
/// separate members.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<Member>,
}

fn check_weights(weights: impl IntoIterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for w in weights {
        if w < 0.0 || !w.is_finite() {
            return Err(Error::InvalidProbability(format!(
                "weight {w} is not a nonnegative number"
            )));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > STATE_TOL {
        return Err(Error::WeightSumInvalid { sum });
    }
    Ok(())
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyEnsemble)?;
        let dim = first.1.dim();
        for (_, rho) in &members {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rho.dim(),
                });
            }
        }
        check_weights(members.iter().map(|m| m.0))?;
        Ok(Self {
            members: members
                .into_iter()
                .map(|(probability, state)| Member { probability, state })
                .collect(),
        })
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].state.dim()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.probability).collect()
    }

    /// The density operator `Σ p_i ρ_i` the ensemble prepares.
    pub fn average_state(&self) -> Result<DensityMatrix> {
        let parts: Vec<(f64, &DensityMatrix)> =
            self.members.iter().map(|m| (m.probability, &m.state)).collect();
        DensityMatrix::mixture(&parts)
    }

    fn from_members_unchecked(members: Vec<Member>) -> Self {
        Self { members }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `M(E) = Σ_{i,j} √(p_i p_j) ‖[ρ_i, ρ_j]‖`.
///
/// Diagonal terms vanish and the summand is symmetric, so this evaluates
/// `2 Σ_{i<j}` with pairs in lexicographic order. Members with zero
/// probability contribute nothing.
pub fn quantumness(ensemble: &Ensemble, spec: NormSpec) -> Result<f64> {
    spec.validate_for(ensemble.dim())?;
    let members = &ensemble.members;
    let mut acc = CompensatedSum::default();
    for (i, a) in members.iter().enumerate() {
        if a.probability == 0.0 {
            continue;
        }
        for b in &members[i + 1..] {
            if b.probability == 0.0 {
                continue;
            }
            let k = commutator(a.state.matrix(), b.state.matrix())?;
            let weight = libm::sqrt(a.probability * b.probability);
            acc.add(weight * norm(&k, spec)?);
        }
    }
    Ok(2.0 * acc.value())
}

/// True iff every pair of members with positive probability commutes, in the
/// sense `‖[ρ_i, ρ_j]‖_F ≤ tol`.
pub fn is_classical(ensemble: &Ensemble, tol: f64) -> bool {
    let live: Vec<&Member> = ensemble
        .members
        .iter()
        .filter(|m| m.probability > 0.0)
        .collect();
    live.iter().enumerate().all(|(i, a)| {
        live[i + 1..].iter().all(|b| {
            commutator(a.state.matrix(), b.state.matrix())
                .map(|k| k.frobenius_entrywise() <= tol)
                .unwrap_or(false)
        })
    })
}

/// `{(p_i, U ρ_i U†)}`
pub fn unitary_conjugate(ensemble: &Ensemble, u: &ComplexMatrix) -> Result<Ensemble> {
    if u.dim() != ensemble.dim() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.dim(),
            found: u.dim(),
        });
    }
    let deviation = u.unitary_deviation();
    if deviation > STATE_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let members = ensemble
        .members
        .iter()
        .map(|m| {
            Ok(Member {
                probability: m.probability,
                state: m.state.conjugate_by(u)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble::from_members_unchecked(members))
}

/// `∪_μ λ_μ E_μ = {(λ_μ p_μi, ρ_μi)}`, members concatenated in order.
pub fn probabilistic_union(ensembles: &[Ensemble], weights: &[f64]) -> Result<Ensemble> {
    if ensembles.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    if ensembles.len() != weights.len() {
        return Err(Error::ParamOutOfRange(format!(
            "{} ensembles but {} weights",
            ensembles.len(),
            weights.len()
        )));
    }
    check_weights(weights.iter().copied())?;
    let dim = ensembles[0].dim();
    let mut members = Vec::new();
    for (e, &w) in ensembles.iter().zip(weights) {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: e.dim(),
            });
        }
        members.extend(e.members.iter().map(|m| Member {
            probability: w * m.probability,
            state: m.state.clone(),
        }));
    }
    Ok(Ensemble::from_members_unchecked(members))
}

fn check_decomposition(target: &DensityMatrix, parts: &[(f64, DensityMatrix)]) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::DecompositionMismatch {
            deviation: f64::INFINITY,
        });
    }
    check_weights(parts.iter().map(|p| p.0))?;
    let mut acc = ComplexMatrix::zeros(target.dim());
    for (w, rho) in parts {
        acc = acc.add(&rho.matrix().scale_real(*w))?;
    }
    let deviation = acc.max_abs_diff(target.matrix())?;
    if deviation > STATE_TOL {
        return Err(Error::DecompositionMismatch { deviation });
    }
    Ok(())
}

/// Splits member `c` along `ρ_c = Σ_μ λ_μ ρ_cμ` into one ensemble per part,
/// each with `ρ_c` replaced by `ρ_cμ` at unchanged probability `p_c`.
pub fn decompose_member(
    ensemble: &Ensemble,
    index: usize,
    parts: &[(f64, DensityMatrix)],
) -> Result<Vec<Ensemble>> {
    let target = ensemble.members.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: ensemble.len(),
    })?;
    check_decomposition(&target.state, parts)?;
    Ok(parts
        .iter()
        .map(|(_, rho)| {
            let mut members = ensemble.members.clone();
            members[index].state = rho.clone();
            Ensemble::from_members_unchecked(members)
        })
        .collect())
}

/// `E_F = {(p_i λ_iμ, ρ_iμ)}` from one decomposition per member.
pub fn fine_grain(ensemble: &Ensemble, decompositions: &[Vec<(f64, DensityMatrix)>]) -> Result<Ensemble> {
    if decompositions.len() != ensemble.len() {
        return Err(Error::ParamOutOfRange(format!(
            "{} decompositions for {} members",
            decompositions.len(),
            ensemble.len()
        )));
    }
    let mut members = Vec::new();
    for (m, parts) in ensemble.members.iter().zip(decompositions) {
        check_decomposition(&m.state, parts)?;
        members.extend(parts.iter().map(|(w, rho)| Member {
            probability: m.probability * w,
            state: rho.clone(),
        }));
    }
    Ok(Ensemble::from_members_unchecked(members))
}

/// A partition of `0..n` into nonempty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::InvalidPartition(format!("index {i} out of range 0..{n}")));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("index {missing} not covered")));
        }
        Ok(Self { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn covers(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

/// `E_C = {(p_cs, ρ_cs)}` with `p_cs = Σ_{i∈c_s} p_i` and
/// `ρ_cs = Σ_{i∈c_s} p_i ρ_i / p_cs`.
pub fn coarse_grain(ensemble: &Ensemble, partition: &Partition) -> Result<Ensemble> {
    if partition.covers() != ensemble.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} indices but ensemble has {} members",
            partition.covers(),
            ensemble.len()
        )));
    }
    let members = partition
        .blocks
        .iter()
        .enumerate()
        .map(|(s, block)| {
            let p: f64 = block.iter().map(|&i| ensemble.members[i].probability).sum();
            if p <= 0.0 {
                return Err(Error::ZeroBlockProbability { block: s });
            }
            if let [only] = block.as_slice() {
                return Ok(ensemble.members[*only].clone());
            }
            let mut acc = ComplexMatrix::zeros(ensemble.dim());
            for &i in block {
                let m = &ensemble.members[i];
                acc = acc.add(&m.state.matrix().scale_real(m.probability / p))?;
            }
            Ok(Member {
                probability: p,
                state: DensityMatrix::new(acc)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble::from_members_unchecked(members))
}
