use thiserror::Error;

/// Errors produced by the numeric kernels and channel operations.
///
/// Diagram parsing and type checking use their own error type
/// ([`crate::diagram::DiagramError`]) because those carry source positions.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes or declared dimensions are inconsistent.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument is outside the operation's domain (zero dimension, empty
    /// set, non-finite entry, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A matrix required to be hermitian is not, beyond tolerance.
    #[error(
        "matrix is not hermitian: ‖m − m†‖_F = {residual:.3e} exceeds threshold {threshold:.3e}"
    )]
    NotHermitian { residual: f64, threshold: f64 },

    /// A matrix required to be normal ( f†f = ff† ) is not, beyond tolerance.
    #[error(
        "matrix is not normal: ‖f†f − ff†‖_F = {residual:.3e} exceeds threshold {threshold:.3e}"
    )]
    NotNormal { residual: f64, threshold: f64 },

    /// A matrix required to be positive semidefinite has a negative eigenvalue
    /// beyond tolerance.
    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eigenvalue:.6e}")]
    NotPsd { min_eigenvalue: f64 },

    /// A channel required to be completely positivity preserving has a Choi
    /// matrix with a negative eigenvalue beyond tolerance.
    #[error("channel is not completely positivity preserving: Choi matrix has eigenvalue {min_eigenvalue:.6e}")]
    NotCpp { min_eigenvalue: f64 },

    /// A matrix required to be unitary is not, beyond tolerance.
    #[error(
        "matrix is not unitary: ‖u†u − 1‖_F = {residual:.3e} exceeds threshold {threshold:.3e}"
    )]
    NotUnitary { residual: f64, threshold: f64 },

    /// A matrix required to be a density operator fails one of its defining
    /// properties (hermitian, positive semidefinite, unit trace).
    #[error("matrix is not a density operator: {0}")]
    NotDensity(String),

    /// An iterative factorization failed to converge.
    #[error("computation failed: {0}")]
    Computation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
