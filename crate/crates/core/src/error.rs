use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector {components:?} has modulus {modulus} > 1 (non-physical state)")]
    NonPhysicalBloch { components: [f64; 3], modulus: f64 },

    #[error("matrix is not Hermitian: max |M - M†| entry = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace} (expected 1)")]
    TraceNotUnit { trace: f64 },

    #[error("density matrix has negative eigenvalue {min_eigenvalue:e}")]
    NegativeEigenvalue { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("Jacobi diagonalization did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("effective field has zero modulus")]
    ZeroField,

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("positivity breach at t = {t}: minimum eigenvalue {min_eigenvalue:e}")]
    PositivityBreach { t: f64, min_eigenvalue: f64 },

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("a subsystem selector is required for dimension-4 trajectories")]
    MissingSubsystem,
}
