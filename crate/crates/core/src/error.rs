use thiserror::Error;

pub type Result<T, E = CurveError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("derivative order {requested} is not supported (maximum {max})")]
    UnsupportedOrder { requested: usize, max: usize },

    #[error("non-finite value encountered: {0}")]
    NumericDomain(String),

    /// A Gram–Schmidt pivot fell below the threshold: the first `level`
    /// derivatives are (numerically) linearly dependent at `t`.
    #[error("degenerate Frenet frame at t = {t}: pivot {level} has norm {pivot:e}")]
    DegenerateFrame { t: f64, level: usize, pivot: f64 },

    #[error("quadrature did not converge: |I(N) - I(2N)| = {difference:e} exceeds {tolerance:e}")]
    QuadratureFailure { difference: f64, tolerance: f64 },

    #[error("invalid curve specification: {0}")]
    InvalidSpec(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidQuadrature(String),

    #[error("degenerate osculating plane: wedge norm {norm:e}")]
    DegenerateOsculatingPlane { norm: f64 },

    #[error("bivector is not decomposable: Plücker quadric residual {residual:e}")]
    NotDecomposable { residual: f64 },

    #[error("curve cannot be transformed: k{index} falls to {floor:e} at t = {t}")]
    NotTransformable { index: usize, floor: f64, t: f64 },

    #[error("irregular curve: speed falls to {min_speed:e}")]
    IrregularCurve { min_speed: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
