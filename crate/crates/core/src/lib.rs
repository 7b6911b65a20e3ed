//! Quantumness of quantum ensembles.
//!
//! An ensemble `{(p_i, ρ_i)}` is scored by
//! `M(E) = Σ_{i,j} √(p_i p_j) ‖[ρ_i, ρ_j]‖`, where `‖·‖` is any norm with
//! `‖UAU†‖ = ‖A‖`. This crate provides the Schatten and Ky Fan families of
//! such norms over dense complex matrices, the state and channel machinery
//! needed to build ensembles, the ensemble transformations the measure is
//! monotone under, and closed-form companions (pure-pair overlap, l1
//! coherence, concurrence, classical-quantum states).
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod derived;
pub mod eigen;
pub mod ensemble;
mod error;
pub mod matrix;
pub mod norm;
pub mod pauli;
pub mod properties;
pub mod random;
pub mod states;

pub use derived::{
    concurrence_pure_two_qubit, coherence_l1_pure_qubit, cq_append_ancilla, cq_local_unitary,
    cq_quantumness, pure_pair_quantumness, quantumness_coherence_relation,
    quantumness_concurrence_relation, ClassicalQuantumState,
};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use ensemble::{
    coarse_grain, decompose_member, fine_grain, is_classical, probabilistic_union, quantumness,
    unitary_conjugate, Ensemble, Member, Partition,
};
pub use error::{Error, Result};
pub use matrix::{commutator, ComplexMatrix, C64};
pub use norm::{norm, singular_values, NormSpec, SchattenExponent};
pub use states::{
    apply_channel, bloch_from_density, density_from_bloch, overlap, phase_damping,
    schmidt_coefficients, BlochVector, DensityMatrix, PureState, QuantumChannel,
};
