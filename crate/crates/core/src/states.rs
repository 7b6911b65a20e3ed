//! Density matrices, pure states, qubit Bloch vectors and Kraus channels.

use alloc::format;
use alloc::vec::Vec;

use crate::eigen::{hermitian_eigen, reconstruct_with, HermitianEigen};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::pauli;

/// Tolerance on Hermiticity, trace, normalization and PSD checks.
pub const STATE_TOL: f64 = 1e-10;

/// A Hermitian, unit-trace, positive semidefinite matrix.
///
/// The stored matrix is exactly Hermitian: construction replaces the input
/// with its Hermitian part.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m` as a density matrix.
    ///
    /// Eigenvalues in `[-STATE_TOL, 0)` are clamped to zero and the trace is
    /// renormalized; anything more negative is rejected.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let deviation = m.hermitian_deviation();
        if deviation > STATE_TOL {
            return Err(Error::NotDensity(format!(
                "not Hermitian (max deviation {deviation:e})"
            )));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotDensity(format!("trace {tr} differs from 1")));
        }
        let h = m.hermitian_part();
        let eig = hermitian_eigen(&h, f64::INFINITY)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::NotDensity(format!("negative eigenvalue {min:e}")));
        }
        if min >= 0.0 {
            return Ok(Self { matrix: h });
        }
        let clamped: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let rebuilt = reconstruct_with(&eig.vectors, &clamped).scale_real(1.0 / total);
        Ok(Self {
            matrix: rebuilt.hermitian_part(),
        })
    }

    /// Wraps a matrix already known to be a density matrix, e.g. a unitary
    /// conjugate of one.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        Self {
            matrix: m.hermitian_part(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(populations))
    }

    /// `Σ w_k ρ_k`; the weights must form a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyEnsemble)?;
        let dim = first.1.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for (w, rho) in parts {
            check_dim(dim, rho.dim())?;
            acc = acc.add(&rho.matrix.scale_real(*w))?;
        }
        Self::new(acc)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> HermitianEigen {
        hermitian_eigen(&self.matrix, 0.0).expect("stored matrix is exactly Hermitian")
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().values
    }

    /// `tr(ρ²)`
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum += self.matrix.get(i, j).norm_sqr();
            }
        }
        sum
    }

    /// Eigen-decomposition into pure states, skipping zero weights. The
    /// weights sum to one.
    pub fn spectral_decomposition(&self) -> Vec<(f64, DensityMatrix)> {
        let eig = self.eigen();
        let weights: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0)).collect();
        let total: f64 = weights.iter().sum();
        weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(k, &w)| {
                let v = eig.vector(k);
                let proj = ComplexMatrix::outer(&v, &v).expect("nonempty");
                (w / total, Self::from_trusted(proj))
            })
            .collect()
    }

    /// `U ρ U†`; `u` must be unitary, which the caller checks.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Ok(Self::from_trusted(self.matrix.conjugate_by(u)?))
    }

    /// `ρ ⊗ σ`
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        Self::from_trusted(self.matrix.kron(&other.matrix))
    }
}

/// A unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Requires unit 2-norm within [`STATE_TOL`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vector_norm(&amplitudes);
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::IndexOutOfRange { index: k, len: dim });
        }
        let mut amps = alloc::vec![ZERO; dim];
        amps[k] = ONE;
        Ok(Self { amplitudes: amps })
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let h = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: alloc::vec![h, h],
        }
    }

    /// `(|00⟩ + |11⟩)/√2`
    pub fn bell_phi_plus() -> Self {
        let h = C64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: alloc::vec![h, ZERO, ZERO, h],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> DensityMatrix {
        let m = ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("nonempty");
        DensityMatrix::from_trusted(m)
    }

    /// `M |ψ⟩` renormalized; used for local unitaries.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::normalized(u.apply(&self.amplitudes)?)
    }
}

fn vector_norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|a| a.norm_sqr()).sum())
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `⟨ψ|φ⟩`, conjugating the first argument.
pub fn overlap(psi: &PureState, phi: &PureState) -> Result<C64> {
    check_dim(psi.dim(), phi.dim())?;
    Ok(psi
        .amplitudes
        .iter()
        .zip(&phi.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Schmidt coefficients `(α, β)`, `α ≥ β ≥ 0`, of a two-qubit pure state.
///
/// These are the singular values of the amplitude matrix
/// `[[a00, a01], [a10, a11]]`, taken in closed form: `αβ = |det|` and
/// `α² + β² = 1`. This stays accurate for nearly product states, where the
/// square root of a tiny Gram eigenvalue would not.
pub fn schmidt_coefficients(psi: &PureState) -> Result<(f64, f64)> {
    check_dim(4, psi.dim())?;
    let a = &psi.amplitudes;
    let det = (a[0] * a[3] - a[1] * a[2]).norm();
    let total: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let disc = libm::sqrt((total * total - 4.0 * det * det).max(0.0));
    let alpha = libm::sqrt((total + disc) / 2.0);
    let beta = if alpha > 0.0 { det / alpha } else { 0.0 };
    Ok((alpha, beta.min(alpha)))
}

/// A point of the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        let length = v.length();
        if !length.is_finite() || length > 1.0 + STATE_TOL {
            return Err(Error::BlochOutOfBall { length });
        }
        Ok(v)
    }

    pub fn length(&self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross_length(&self, other: &Self) -> f64 {
        let cx = self.y * other.z - self.z * other.y;
        let cy = self.z * other.x - self.x * other.z;
        let cz = self.x * other.y - self.y * other.x;
        libm::sqrt(cx * cx + cy * cy + cz * cz)
    }

    /// Angle to `other` in `[0, π]`; zero if either vector vanishes.
    pub fn angle_to(&self, other: &Self) -> f64 {
        libm::atan2(self.cross_length(other), self.dot(other))
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// `(I + r·σ)/2`
pub fn density_from_bloch(r: &BlochVector) -> DensityMatrix {
    let half = 0.5;
    let m = ComplexMatrix::from_rows(&[
        [C64::new(half * (1.0 + r.z), 0.0), C64::new(half * r.x, -half * r.y)],
        [C64::new(half * r.x, half * r.y), C64::new(half * (1.0 - r.z), 0.0)],
    ])
    .expect("2x2");
    DensityMatrix::from_trusted(m)
}

/// `r_a = tr(ρ σ_a)`
pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    check_dim(2, rho.dim())?;
    let [sx, sy, sz] = pauli::all();
    let component = |s: &ComplexMatrix| rho.matrix().matmul_unchecked(s).trace().re;
    // the trace formula keeps the result inside the ball up to round-off
    let (x, y, z) = (component(&sx), component(&sy), component(&sz));
    Ok(BlochVector { x, y, z })
}

/// A completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
}

impl QuantumChannel {
    /// Requires a nonempty, equal-dimension Kraus set with
    /// `Σ E_k† E_k = I` within [`STATE_TOL`].
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyEnsemble)?;
        let dim = first.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        for k in &kraus {
            check_dim(dim, k.dim())?;
            acc = acc.add(&k.adjoint().matmul_unchecked(k))?;
        }
        let deviation = acc.max_abs_diff(&ComplexMatrix::identity(dim))?;
        if deviation > STATE_TOL {
            return Err(Error::IncompleteChannel { deviation });
        }
        Ok(Self { kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: alloc::vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    /// `Φ(ρ) = Σ E_k ρ E_k†`
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        check_dim(self.dim(), rho.dim())?;
        let mut acc = ComplexMatrix::zeros(rho.dim());
        for e in &self.kraus {
            let term = e
                .matmul_unchecked(rho.matrix())
                .matmul_unchecked(&e.adjoint());
            acc = acc.add(&term)?;
        }
        DensityMatrix::new(acc)
    }
}

pub fn apply_channel(channel: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    channel.apply(rho)
}

/// Qubit phase damping with `E0 = |0⟩⟨0| + √(1−λ)|1⟩⟨1|`, `E1 = √λ|1⟩⟨1|`.
pub fn phase_damping(lambda: f64) -> Result<QuantumChannel> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::ParamOutOfRange(format!(
            "phase damping strength {lambda} outside [0, 1]"
        )));
    }
    let e0 = ComplexMatrix::from_real_diagonal(&[1.0, libm::sqrt(1.0 - lambda)]);
    let e1 = ComplexMatrix::from_real_diagonal(&[0.0, libm::sqrt(lambda)]);
    QuantumChannel::new(alloc::vec![e0, e1])
}
