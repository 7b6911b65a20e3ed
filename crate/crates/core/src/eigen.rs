//! Cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius mass, relative to `‖A‖_F`, below which a matrix is
/// considered diagonal.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;

/// Eigenvalues in nonincreasing order with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Eigenvector `k` as an owned vector.
    pub fn vector(&self, k: usize) -> Vec<C64> {
        let n = self.vectors.dim();
        (0..n).map(|i| self.vectors.get(i, k)).collect()
    }

    /// `V diag(values) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        reconstruct_with(&self.vectors, &self.values)
    }
}

pub(crate) fn reconstruct_with(vectors: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = vectors.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in values.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vectors.get(i, k) * lambda;
            for j in 0..n {
                let cur = out.get(i, j);
                out.set(i, j, cur + vik * vectors.get(j, k).conj());
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix, nonincreasing.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(a, tol)?.values)
}

/// Full eigendecomposition of a matrix that is Hermitian within `tol`.
///
/// The input is symmetrized to `(A + A†)/2` before rotating, so the deviation
/// allowed by `tol` does not leak into the eigenvalues beyond its own size.
pub fn hermitian_eigen(a: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let deviation = a.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    jacobi(a.hermitian_part())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += a.get(i, j).norm_sqr();
        }
    }
    libm::sqrt(2.0 * sum)
}

/// Cyclic Jacobi on an exactly Hermitian matrix.
///
/// Each rotation acts on the `(p, q)` plane with
/// `G = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]`, where `a_pq = |a_pq| e^{iφ}`,
/// and zeroes `a_pq` in `G† A G`.
fn jacobi(mut a: ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_THRESHOLD * a.frobenius_entrywise();

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps solver order among ties
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / magnitude;

    let theta = (aqq - app) / (2.0 * magnitude);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    // G_pq = s·e^{iφ}, G_qp = −s·e^{−iφ}
    let g_pq = phase * s;
    let g_qp = -phase.conj() * s;

    let n = a.dim();
    // A ← A G (columns p, q)
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c + akq * g_qp);
        a.set(k, q, akp * g_pq + akq * c);
    }
    // A ← G† A (rows p, q)
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c + aqk * g_qp.conj());
        a.set(q, k, apk * g_pq.conj() + aqk * c);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    a.set(p, p, C64::new(app - t * magnitude, 0.0));
    a.set(q, q, C64::new(aqq + t * magnitude, 0.0));

    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c + vkq * g_qp);
        v.set(k, q, vkp * g_pq + vkq * c);
    }
}
