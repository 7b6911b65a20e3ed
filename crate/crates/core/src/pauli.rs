//! Pauli matrices in the computational basis.

use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

const I: C64 = C64::new(0.0, 1.0);

pub fn x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]).expect("2x2")
}

pub fn y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).expect("2x2")
}

pub fn z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]).expect("2x2")
}

/// `[σx, σy, σz]`
pub fn all() -> [ComplexMatrix; 3] {
    [x(), y(), z()]
}
