use thiserror::Error;

/// Errors raised while building or checking states and generators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (defect {defect:.3e})")]
    NonSymmetric { defect: f64 },
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NonHermitian { defect: f64 },
    #[error("imaginary part of Z is not positive definite (min eigenvalue {min_eig:.3e})")]
    NonPositiveU { min_eig: f64 },
    #[error("spectral norm {norm:.12} is not below 1")]
    NormAtOrAboveOne { norm: f64 },
    #[error("linear solve failed: {0}")]
    SingularSolve(&'static str),
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NonUnitary { defect: f64 },
    #[error("graph matrix G is not symmetric (defect {defect:.3e})")]
    NonSymmetricG { defect: f64 },
    #[error("graph matrix G is not self-inverse (defect {defect:.3e})")]
    NotSelfInverse { defect: f64 },
    #[error("squeezing parameter must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("mode index {index} out of range for {n} modes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("axis {axis} needs two distinct modes, got ({index}, {index})")]
    EqualIndices { axis: char, index: usize },
    #[error("D does not commute with the singular values of K0 (defect {defect:.3e})")]
    NonCommutingD { defect: f64 },
    #[error("invalid block shape: {0}")]
    InvalidBlockShape(String),
    #[error("all Schwinger coefficients are zero")]
    AllZeroCoefficients,
    #[error("unknown Bell variant {0:?} (expected phi+, phi-, psi+ or psi-)")]
    UnknownVariant(String),
    #[error("a periodic wire needs at least 3 spins, got {0}")]
    TooFewSpins(usize),
    #[error("global Z nullifier needs an even number of spins, got {0}")]
    OddSpinCount(usize),
    #[error("chain span of {len} spins is not in 1..={n}")]
    SpanTooLong { len: usize, n: usize },
    #[error("six-mode symmetry needs a wire with at least 3 spins, got {0}")]
    WireTooSmall(usize),
    #[error("Fock cutoff must be even and at least 2, got {0}")]
    OddCutoff(usize),
    #[error("Fock recursion is inconsistent at occupation {occupation:?} (mismatch {mismatch:.3e})")]
    InconsistentRecursion { occupation: Vec<u32>, mismatch: f64 },
    #[error("pairing does not partition the modes: {0}")]
    BadPairing(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
