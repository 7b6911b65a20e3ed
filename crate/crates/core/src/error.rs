use alloc::string::String;

/// Errors raised by matrix, state, and ensemble operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix data of length {len} is not square")]
    NonSquare { len: usize },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid norm: {0}")]
    InvalidSpec(String),
    #[error("Bloch vector length {length} exceeds 1")]
    BlochOutOfBall { length: f64 },
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("state vector norm {norm} differs from 1")]
    NotNormalized { norm: f64 },
    #[error("Kraus operators are not complete (max deviation {deviation:e})")]
    IncompleteChannel { deviation: f64 },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("invalid probabilities: {0}")]
    InvalidProbability(String),
    #[error("ensemble must have at least one member")]
    EmptyEnsemble,
    #[error("weights sum to {sum}, expected 1")]
    WeightSumInvalid { sum: f64 },
    #[error("decomposition does not recombine to the original state (max deviation {deviation:e})")]
    DecompositionMismatch { deviation: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition block {block} has zero total probability")]
    ZeroBlockProbability { block: usize },
    #[error("amplitudes are not real (max imaginary part {max_imag:e})")]
    NonRealAmplitudes { max_imag: f64 },
    #[error("index {index} out of range for {len} members")]
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
