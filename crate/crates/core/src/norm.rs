//! Singular values and the unitary similarity invariant norm family.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Relative entrywise tolerance under which a matrix is treated as
/// anti-Hermitian by [`singular_values`].
const ANTI_HERMITIAN_TOL: f64 = 1e-12;

/// Exponent of a Schatten norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenExponent {
    Finite(f64),
    Infinity,
}

/// Selector for one norm of the Schatten or Ky Fan family.
///
/// `trace`, `frobenius` and `spectral` are Schatten 1, 2 and ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormSpec {
    Schatten(SchattenExponent),
    KyFan(usize),
}

impl NormSpec {
    pub const TRACE: NormSpec = NormSpec::Schatten(SchattenExponent::Finite(1.0));
    pub const FROBENIUS: NormSpec = NormSpec::Schatten(SchattenExponent::Finite(2.0));
    pub const SPECTRAL: NormSpec = NormSpec::Schatten(SchattenExponent::Infinity);

    /// Schatten p-norm; `p` must be at least 1 (or infinite).
    pub fn schatten(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidSpec(format!(
                "schatten exponent must be >= 1, got {p}"
            )));
        }
        if p.is_infinite() {
            return Ok(Self::SPECTRAL);
        }
        Ok(NormSpec::Schatten(SchattenExponent::Finite(p)))
    }

    /// Ky Fan k-norm; the upper bound on `k` is checked at evaluation time.
    pub fn ky_fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("ky fan index must be >= 1".into()));
        }
        Ok(NormSpec::KyFan(k))
    }

    /// Checks the spec against a matrix dimension.
    pub fn validate_for(&self, dim: usize) -> Result<()> {
        match *self {
            NormSpec::Schatten(SchattenExponent::Finite(p)) if p.is_nan() || p < 1.0 => Err(
                Error::InvalidSpec(format!("schatten exponent must be >= 1, got {p}")),
            ),
            NormSpec::KyFan(k) if k == 0 || k > dim => Err(Error::InvalidSpec(format!(
                "ky fan index {k} outside 1..={dim}"
            ))),
            _ => Ok(()),
        }
    }

    /// Applies the norm to a nonincreasing list of singular values.
    pub fn from_singular_values(&self, sv: &[f64]) -> Result<f64> {
        self.validate_for(sv.len())?;
        Ok(match *self {
            NormSpec::Schatten(SchattenExponent::Infinity) => sv.first().copied().unwrap_or(0.0),
            NormSpec::Schatten(SchattenExponent::Finite(p)) => schatten_sum(sv, p),
            NormSpec::KyFan(k) => sv[..k].iter().sum(),
        })
    }
}

fn schatten_sum(sv: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return sv.iter().sum();
    }
    // scale by the largest value to avoid overflow in s^p
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        let sum: f64 = sv.iter().map(|s| (s / top) * (s / top)).sum();
        return top * libm::sqrt(sum);
    }
    let sum: f64 = sv.iter().map(|s| libm::pow(s / top, p)).sum();
    top * libm::pow(sum, 1.0 / p)
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormSpec::Schatten(SchattenExponent::Infinity) => f.write_str("spectral"),
            NormSpec::Schatten(SchattenExponent::Finite(1.0)) => f.write_str("trace"),
            NormSpec::Schatten(SchattenExponent::Finite(2.0)) => f.write_str("frobenius"),
            NormSpec::Schatten(SchattenExponent::Finite(p)) => write!(f, "schatten:{p}"),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
        }
    }
}

/// Parses `trace | frobenius | spectral | schatten:<p> | kyfan:<k>`.
/// `schatten:inf` is accepted as an alias for `spectral`.
impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "trace" => return Ok(Self::TRACE),
            "frobenius" => return Ok(Self::FROBENIUS),
            "spectral" => return Ok(Self::SPECTRAL),
            _ => {}
        }
        let bad = || Error::InvalidSpec(format!("unrecognized norm `{s}`"));
        let (family, param) = s.split_once(':').ok_or_else(bad)?;
        match family {
            "schatten" => {
                let p = match param {
                    "inf" | "infinity" => f64::INFINITY,
                    _ => param.parse::<f64>().map_err(|_| bad())?,
                };
                Self::schatten(p)
            }
            "kyfan" => Self::ky_fan(param.parse::<usize>().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

/// Singular values of a square matrix, nonincreasing.
///
/// Anti-Hermitian inputs (every commutator of two Hermitian matrices) go
/// through the eigenvalues of `iA`; everything else through `A†A` with
/// negative round-off clamped to zero.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let scale = a.max_abs().max(1.0);
    if a.anti_hermitian_deviation() <= ANTI_HERMITIAN_TOL * scale {
        return singular_values_anti_hermitian(a);
    }
    singular_values_gram(a)
}

/// Singular values from the Hermitian eigendecomposition of `A†A`.
pub fn singular_values_gram(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let gram = a.adjoint().matmul_unchecked(a);
    let eig = hermitian_eigen(&gram, f64::INFINITY)?;
    // eigenvalues are already nonincreasing, and sqrt is monotone
    Ok(eig
        .values
        .into_iter()
        .map(|l| libm::sqrt(l.max(0.0)))
        .collect())
}

/// Singular values of an anti-Hermitian matrix as `|eig(iA)|`.
pub fn singular_values_anti_hermitian(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let ia = a.scale(C64::new(0.0, 1.0));
    let eig = hermitian_eigen(&ia, f64::INFINITY)?;
    let mut sv: Vec<f64> = eig.values.into_iter().map(f64::abs).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Evaluates `‖A‖` for the selected norm.
pub fn norm(a: &ComplexMatrix, spec: NormSpec) -> Result<f64> {
    spec.validate_for(a.dim())?;
    spec.from_singular_values(&singular_values(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::commutator;
    use crate::random::{random_complex_matrix, random_pure_state, seeded_rng};
    use alloc::string::ToString;
    use alloc::vec;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn parses_grammar() {
        assert_eq!("trace".parse::<NormSpec>().unwrap(), NormSpec::TRACE);
        assert_eq!("frobenius".parse::<NormSpec>().unwrap(), NormSpec::FROBENIUS);
        assert_eq!("spectral".parse::<NormSpec>().unwrap(), NormSpec::SPECTRAL);
        assert_eq!(
            "schatten:3".parse::<NormSpec>().unwrap(),
            NormSpec::Schatten(SchattenExponent::Finite(3.0))
        );
        assert_eq!("schatten:inf".parse::<NormSpec>().unwrap(), NormSpec::SPECTRAL);
        assert_eq!("kyfan:2".parse::<NormSpec>().unwrap(), NormSpec::KyFan(2));
        for bad in ["schatten:0.5", "kyfan:0", "kyfan:x", "max", "schatten", "l1:2"] {
            assert!(bad.parse::<NormSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["trace", "frobenius", "spectral", "schatten:3", "schatten:1.5", "kyfan:2"] {
            let spec: NormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn nilpotent_block_singular_values() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(singular_values(&m).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn diagonal_singular_values() {
        let m = ComplexMatrix::from_real_diagonal(&[3.0, -4.0]);
        assert_eq!(singular_values(&m).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn norm_examples() {
        let id = ComplexMatrix::identity(3);
        assert!(close(norm(&id, NormSpec::TRACE).unwrap(), 3.0, 1e-15));
        let d = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert!(close(norm(&d, NormSpec::KyFan(2)).unwrap(), 5.0, 1e-15));
    }

    #[test]
    fn ky_fan_out_of_range() {
        let id = ComplexMatrix::identity(2);
        assert!(matches!(
            norm(&id, NormSpec::KyFan(3)),
            Err(Error::InvalidSpec(_))
        ));
    }

    /// Oracle: in the span of |ψ⟩, |φ⟩ the commutator of the two projectors
    /// has the 2×2 form c√(1−c²)·[[0, e^{iθ}], [−e^{−iθ}, 0]] in an
    /// orthonormal basis, whose singular values are both c√(1−c²).
    #[test]
    fn projector_commutator_singular_values() {
        let mut rng = seeded_rng(21);
        for dim in [2, 3, 5] {
            let psi = random_pure_state(dim, &mut rng).unwrap();
            let phi = random_pure_state(dim, &mut rng).unwrap();
            let c = crate::states::overlap(&psi, &phi).unwrap().norm();
            let k = commutator(psi.projector().matrix(), phi.projector().matrix()).unwrap();
            let sv = singular_values(&k).unwrap();
            let expected = c * libm::sqrt(1.0 - c * c);
            assert!(close(sv[0], expected, 1e-12));
            assert!(close(sv[1], expected, 1e-12));
            assert!(sv[2..].iter().all(|&s| s < 1e-12));
            assert!(close(
                norm(&k, NormSpec::TRACE).unwrap(),
                2.0 * expected,
                1e-12
            ));
        }
    }

    #[test]
    fn anti_hermitian_paths_agree() {
        let mut rng = seeded_rng(4);
        for _ in 0..50 {
            let a = random_complex_matrix(4, &mut rng).hermitian_part();
            let b = random_complex_matrix(4, &mut rng).hermitian_part();
            let k = commutator(&a, &b).unwrap();
            let fast = singular_values_anti_hermitian(&k).unwrap();
            let gram = singular_values_gram(&k).unwrap();
            for (x, y) in fast.iter().zip(&gram) {
                assert!(close(*x, *y, 1e-10), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn schatten_limits() {
        let d = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let s3 = norm(&d, "schatten:3".parse().unwrap()).unwrap();
        assert!(close(s3, libm::cbrt(36.0), 1e-13));
        let big = norm(&d, "schatten:400".parse().unwrap()).unwrap();
        assert!(close(big, 3.0, 1e-2));
        assert_eq!(norm(&ComplexMatrix::zeros(3), NormSpec::FROBENIUS).unwrap(), 0.0);
    }
}
