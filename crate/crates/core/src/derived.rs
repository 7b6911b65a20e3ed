//! Closed-form quantities that the quantumness measure reduces to for pure
//! pairs, qubit coherence, two-qubit entanglement, and classical-quantum
//! states.

use alloc::format;
use alloc::vec::Vec;

use crate::ensemble::{quantumness, Ensemble};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::norm::NormSpec;
use crate::states::{schmidt_coefficients, DensityMatrix, PureState, STATE_TOL};

/// `M` of `{(p1, |ψ⟩), (p2, |φ⟩)}` under the trace norm, given `c = |⟨ψ|φ⟩|`:
/// `4c√(p1 p2)√(1−c²)`.
pub fn pure_pair_quantumness(p1: f64, p2: f64, c: f64) -> Result<f64> {
    if !(p1 >= 0.0 && p2 >= 0.0) || (p1 + p2 - 1.0).abs() > STATE_TOL {
        return Err(Error::ParamOutOfRange(format!(
            "probabilities ({p1}, {p2}) do not form a distribution"
        )));
    }
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::ParamOutOfRange(format!("overlap modulus {c} outside [0, 1]")));
    }
    Ok(4.0 * c * libm::sqrt(p1 * p2) * libm::sqrt(1.0 - c * c))
}

/// `(α, β)` of a qubit state with real amplitudes.
fn real_qubit_amplitudes(psi: &PureState) -> Result<(f64, f64)> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let a = psi.amplitudes();
    let max_imag = a[0].im.abs().max(a[1].im.abs());
    if max_imag > STATE_TOL {
        return Err(Error::NonRealAmplitudes { max_imag });
    }
    Ok((a[0].re, a[1].re))
}

/// l1-norm coherence `2|αβ|` of `α|0⟩ + β|1⟩` with real `α, β`.
pub fn coherence_l1_pure_qubit(psi: &PureState) -> Result<f64> {
    let (alpha, beta) = real_qubit_amplitudes(psi)?;
    Ok(2.0 * (alpha * beta).abs())
}

/// Concurrence `2αβ` of a two-qubit pure state from its Schmidt
/// coefficients.
pub fn concurrence_pure_two_qubit(psi: &PureState) -> Result<f64> {
    let (alpha, beta) = schmidt_coefficients(psi)?;
    Ok((2.0 * alpha * beta).min(1.0))
}

fn half_half_trace_quantumness(a: &PureState, b: &PureState) -> Result<f64> {
    let e = Ensemble::new(alloc::vec![(0.5, a.projector()), (0.5, b.projector())])?;
    quantumness(&e, NormSpec::TRACE)
}

/// `(M, C_l1)` for `{(½, |ψ⟩), (½, |+⟩)}` under the trace norm. These
/// satisfy `M = √(1 − C²)`.
pub fn quantumness_coherence_relation(psi: &PureState) -> Result<(f64, f64)> {
    let c = coherence_l1_pure_qubit(psi)?;
    let m = half_half_trace_quantumness(psi, &PureState::plus())?;
    Ok((m, c))
}

/// `(M, C)` for `{(½, |ψ⟩), (½, |φ⁺⟩)}` under the trace norm, `ψ` in
/// Schmidt form `α|00⟩ + β|11⟩`. These satisfy `M = √(1 − C²)`.
pub fn quantumness_concurrence_relation(psi: &PureState) -> Result<(f64, f64)> {
    let c = concurrence_pure_two_qubit(psi)?;
    let m = half_half_trace_quantumness(psi, &PureState::bell_phi_plus())?;
    Ok((m, c))
}

/// A classical-quantum state `Σ_i p_i |i⟩⟨i| ⊗ ρ_i`, kept in block form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalQuantumState {
    probs: Vec<f64>,
    blocks: Vec<DensityMatrix>,
}

impl ClassicalQuantumState {
    pub fn new(probs: Vec<f64>, blocks: Vec<DensityMatrix>) -> Result<Self> {
        if probs.len() != blocks.len() {
            return Err(Error::ParamOutOfRange(format!(
                "{} probabilities for {} blocks",
                probs.len(),
                blocks.len()
            )));
        }
        // shares the ensemble's validation of weights and dimensions
        let _ = Ensemble::new(probs.iter().copied().zip(blocks.iter().cloned()).collect())?;
        Ok(Self { probs, blocks })
    }

    /// Reads a block-diagonal `(k·d) × (k·d)` density matrix with `k` flag
    /// values. Blocks of zero weight are given the maximally mixed state.
    pub fn from_block_diagonal(rho: &DensityMatrix, flags: usize) -> Result<Self> {
        let n = rho.dim();
        if flags == 0 || !n.is_multiple_of(flags) {
            return Err(Error::DimensionMismatch {
                expected: flags.max(1) * (n / flags.max(1)),
                found: n,
            });
        }
        let d = n / flags;
        let m = rho.matrix();
        for i in 0..n {
            for j in 0..n {
                if i / d != j / d && m.get(i, j).norm() > STATE_TOL {
                    return Err(Error::NotDensity(format!(
                        "entry ({i}, {j}) lies outside the diagonal blocks"
                    )));
                }
            }
        }
        let mut probs = Vec::with_capacity(flags);
        let mut blocks = Vec::with_capacity(flags);
        for b in 0..flags {
            let mut block = ComplexMatrix::zeros(d);
            for i in 0..d {
                for j in 0..d {
                    block.set(i, j, m.get(b * d + i, b * d + j));
                }
            }
            let p = block.trace().re;
            if p > STATE_TOL {
                blocks.push(DensityMatrix::new(block.scale_real(1.0 / p))?);
                probs.push(p);
            } else {
                blocks.push(DensityMatrix::maximally_mixed(d));
                probs.push(0.0);
            }
        }
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        Self::new(probs, blocks)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn blocks(&self) -> &[DensityMatrix] {
        &self.blocks
    }

    pub fn block_dim(&self) -> usize {
        self.blocks[0].dim()
    }

    /// The ensemble `{(p_i, ρ_i)}` the state encodes.
    pub fn ensemble(&self) -> Ensemble {
        Ensemble::new(self.probs.iter().copied().zip(self.blocks.iter().cloned()).collect())
            .expect("validated on construction")
    }

    /// The full block-diagonal density matrix.
    pub fn to_density_matrix(&self) -> DensityMatrix {
        let d = self.block_dim();
        let n = d * self.blocks.len();
        let mut m = ComplexMatrix::zeros(n);
        for (b, (p, rho)) in self.probs.iter().zip(&self.blocks).enumerate() {
            for i in 0..d {
                for j in 0..d {
                    m.set(b * d + i, b * d + j, rho.matrix().get(i, j) * *p);
                }
            }
        }
        DensityMatrix::new(m).expect("block-diagonal mixture of density matrices")
    }
}

/// `D(ρ^ab)`: the quantumness of the ensemble a classical-quantum state
/// encodes.
pub fn cq_quantumness(state: &ClassicalQuantumState, spec: NormSpec) -> Result<f64> {
    quantumness(&state.ensemble(), spec)
}

/// Applies `I ⊗ U` to the state, i.e. conjugates every block by `U`.
pub fn cq_local_unitary(state: &ClassicalQuantumState, u: &ComplexMatrix) -> Result<ClassicalQuantumState> {
    let moved = crate::ensemble::unitary_conjugate(&state.ensemble(), u)?;
    Ok(ClassicalQuantumState {
        probs: state.probs.clone(),
        blocks: moved.members().iter().map(|m| m.state.clone()).collect(),
    })
}

/// Attaches an ancilla to the quantum side: `ρ_i ↦ ρ_i ⊗ σ`.
pub fn cq_append_ancilla(state: &ClassicalQuantumState, ancilla: &DensityMatrix) -> ClassicalQuantumState {
    ClassicalQuantumState {
        probs: state.probs.clone(),
        blocks: state.blocks.iter().map(|b| b.tensor(ancilla)).collect(),
    }
}

/// `|ψ⟩ = α|0⟩ + β|1⟩` with `β = √(1 − α²)` times a sign.
pub fn real_qubit(alpha: f64, beta_sign: f64) -> Result<PureState> {
    let beta = libm::sqrt((1.0 - alpha * alpha).max(0.0)) * beta_sign.signum();
    PureState::new(alloc::vec![C64::new(alpha, 0.0), C64::new(beta, 0.0)])
}

/// `α|00⟩ + β|11⟩`
pub fn schmidt_form(alpha: f64, beta: f64) -> Result<PureState> {
    PureState::from_real(&[alpha, 0.0, 0.0, beta])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;
    use crate::norm::norm;
    use crate::random::{random_density_matrix, random_unitary, seeded_rng};
    use core::f64::consts::FRAC_1_SQRT_2;
    use rand::Rng;

    #[test]
    fn pure_pair_examples() {
        assert_eq!(pure_pair_quantumness(0.3, 0.7, 0.0).unwrap(), 0.0);
        assert_eq!(pure_pair_quantumness(0.3, 0.7, 1.0).unwrap(), 0.0);
        let peak = pure_pair_quantumness(0.5, 0.5, FRAC_1_SQRT_2).unwrap();
        assert!((peak - 1.0).abs() < 1e-15);
        assert!(pure_pair_quantumness(0.5, 0.6, 0.5).is_err());
        assert!(pure_pair_quantumness(0.5, 0.5, 1.5).is_err());
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(coherence_l1_pure_qubit(&PureState::basis(2, 0).unwrap()).unwrap(), 0.0);
        assert!((coherence_l1_pure_qubit(&PureState::plus()).unwrap() - 1.0).abs() < 1e-15);
        let psi = PureState::from_real(&[0.8, 0.6]).unwrap();
        assert!((coherence_l1_pure_qubit(&psi).unwrap() - 0.96).abs() < 1e-15);
        let complex = PureState::new(alloc::vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        assert!(matches!(
            coherence_l1_pure_qubit(&complex),
            Err(Error::NonRealAmplitudes { .. })
        ));
    }

    #[test]
    fn coherence_is_sum_of_off_diagonal_moduli() {
        let mut rng = seeded_rng(1);
        for _ in 0..100 {
            let psi = real_qubit(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).unwrap();
            let p = psi.projector();
            let off = p.matrix().get(0, 1).norm() + p.matrix().get(1, 0).norm();
            assert!((off - coherence_l1_pure_qubit(&psi).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence_pure_two_qubit(&PureState::basis(4, 0).unwrap()).unwrap(), 0.0);
        assert!((concurrence_pure_two_qubit(&PureState::bell_phi_plus()).unwrap() - 1.0).abs() < 1e-15);
        let psi = schmidt_form(0.8, 0.6).unwrap();
        assert!((concurrence_pure_two_qubit(&psi).unwrap() - 0.96).abs() < 1e-15);
        assert!(concurrence_pure_two_qubit(&PureState::plus()).is_err());
    }

    #[test]
    fn concurrence_matches_spin_flip_formula() {
        // |⟨ψ|σy⊗σy|ψ*⟩| is the standard pure-state concurrence
        let mut rng = seeded_rng(2);
        let yy = crate::pauli::y().kron(&crate::pauli::y());
        for _ in 0..100 {
            let psi = crate::random::random_pure_state(4, &mut rng).unwrap();
            let conj: Vec<C64> = psi.amplitudes().iter().map(|a| a.conj()).collect();
            let flipped = yy.apply(&conj).unwrap();
            let c: C64 = psi.amplitudes().iter().zip(&flipped).map(|(a, b)| a.conj() * b).sum();
            assert!((c.norm() - concurrence_pure_two_qubit(&psi).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn coherence_relation_examples() {
        let (m, c) = quantumness_coherence_relation(&PureState::plus()).unwrap();
        assert!(m.abs() < 1e-12 && (c - 1.0).abs() < 1e-15);
        let (m, c) = quantumness_coherence_relation(&PureState::basis(2, 0).unwrap()).unwrap();
        assert!((m - 1.0).abs() < 1e-12 && c == 0.0);
        let (m, c) = quantumness_coherence_relation(&PureState::from_real(&[0.8, 0.6]).unwrap()).unwrap();
        assert!((m - 0.28).abs() < 1e-12 && (c - 0.96).abs() < 1e-15);
    }

    #[test]
    fn concurrence_relation_examples() {
        let (m, c) = quantumness_concurrence_relation(&PureState::bell_phi_plus()).unwrap();
        assert!(m.abs() < 1e-12 && (c - 1.0).abs() < 1e-15);
        let (m, c) = quantumness_concurrence_relation(&PureState::basis(4, 0).unwrap()).unwrap();
        assert!((m - 1.0).abs() < 1e-12 && c == 0.0);
        let (m, c) = quantumness_concurrence_relation(&schmidt_form(0.8, 0.6).unwrap()).unwrap();
        assert!((m - 0.28).abs() < 1e-12 && (c - 0.96).abs() < 1e-15);
    }

    fn zero_plus_state() -> ClassicalQuantumState {
        ClassicalQuantumState::new(
            alloc::vec![0.5, 0.5],
            alloc::vec![PureState::basis(2, 0).unwrap().projector(), PureState::plus().projector()],
        )
        .unwrap()
    }

    #[test]
    fn cq_examples() {
        let diag = ClassicalQuantumState::new(
            alloc::vec![0.3, 0.7],
            alloc::vec![
                DensityMatrix::diagonal(&[0.9, 0.1]).unwrap(),
                DensityMatrix::diagonal(&[0.2, 0.8]).unwrap()
            ],
        )
        .unwrap();
        assert_eq!(cq_quantumness(&diag, NormSpec::TRACE).unwrap(), 0.0);

        let single = ClassicalQuantumState::new(
            alloc::vec![1.0],
            alloc::vec![random_density_matrix(2, 2, &mut seeded_rng(3)).unwrap()],
        )
        .unwrap();
        assert_eq!(cq_quantumness(&single, NormSpec::TRACE).unwrap(), 0.0);

        // c = 1/√2, p = ½: 4·(1/√2)·½·(1/√2) = 1; also checked against the
        // direct commutator computation
        let s = zero_plus_state();
        let d = cq_quantumness(&s, NormSpec::TRACE).unwrap();
        let k = commutator(s.blocks()[0].matrix(), s.blocks()[1].matrix()).unwrap();
        let direct = 2.0 * 0.5 * norm(&k, NormSpec::TRACE).unwrap();
        assert!((d - direct).abs() < 1e-15);
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cq_block_diagonal_round_trip() {
        let s = zero_plus_state();
        let rho = s.to_density_matrix();
        assert_eq!(rho.dim(), 4);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
        let back = ClassicalQuantumState::from_block_diagonal(&rho, 2).unwrap();
        for (a, b) in back.probs().iter().zip(s.probs()) {
            assert!((a - b).abs() < 1e-15);
        }
        for (a, b) in back.blocks().iter().zip(s.blocks()) {
            assert!(a.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-15);
        }
        let entangled = PureState::bell_phi_plus().projector();
        assert!(ClassicalQuantumState::from_block_diagonal(&entangled, 2).is_err());
    }

    #[test]
    fn cq_local_unitary_examples() {
        let s = zero_plus_state();
        let d0 = cq_quantumness(&s, NormSpec::TRACE).unwrap();
        assert_eq!(cq_local_unitary(&s, &ComplexMatrix::identity(2)).unwrap(), s);
        let flipped = cq_local_unitary(&s, &crate::pauli::x()).unwrap();
        assert!((cq_quantumness(&flipped, NormSpec::TRACE).unwrap() - d0).abs() < 1e-9);
        let u = random_unitary(2, &mut seeded_rng(4)).unwrap();
        let moved = cq_local_unitary(&s, &u).unwrap();
        assert!((cq_quantumness(&moved, NormSpec::TRACE).unwrap() - d0).abs() < 1e-9);
        assert!(cq_local_unitary(&s, &ComplexMatrix::from_real_diagonal(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn cq_ancilla_examples() {
        let s = zero_plus_state();
        let d0 = cq_quantumness(&s, NormSpec::TRACE).unwrap();
        let pure_anc = cq_append_ancilla(&s, &PureState::basis(2, 0).unwrap().projector());
        assert!((cq_quantumness(&pure_anc, NormSpec::TRACE).unwrap() - d0).abs() < 1e-9);
        let mixed_anc = cq_append_ancilla(&s, &DensityMatrix::maximally_mixed(2));
        assert!((cq_quantumness(&mixed_anc, NormSpec::TRACE).unwrap() - d0 / 2.0).abs() < 1e-9);
    }
}
