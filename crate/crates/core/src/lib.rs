//! Numerical differential geometry of closed curves in `R^n`: Frenet
//! apparatus, total-curvature functionals, constant-curvature curves on
//! Clifford tori, their osculating indicatrices in the Plücker-embedded
//! Grassmannian `G(2,4) ⊂ R^6`, and a simplex explorer for the mixed
//! curvature functional over trigonometric closed curves.

pub mod ccc;
pub mod curve;
pub mod error;
pub mod explorer;
pub mod frenet;
pub mod functionals;
pub mod grassmann;
mod linalg;
pub mod quadrature;

pub use ccc::{
    closed_form_curvatures, make_ccc, make_even_ccc, minimal_admissible_value, minimal_period,
    total_mixed_curvature_exact, CccSpec, EvenCccSpec,
};
pub use curve::{DerivativeMode, ParametricCurve};
pub use error::{CurveError, Result};
pub use explorer::{
    make_fourier_curve, minimize_functional, penalized_objective, ExplorationResult,
    ExplorerConfig, FourierCurveSpec, InitialCurve, PenaltyWeights,
};
pub use frenet::{curvature_profile, frenet_at, CurvatureProfile, FrenetApparatus};
pub use functionals::{
    inequality_report, mixed_curvature_functional, sharp_bound, total_first_curvature, Evaluation,
    FunctionalReport,
};
pub use grassmann::{
    indicatrix_closed_form, indicatrix_invariants, iterate_transform, osculating_indicatrix,
    plucker_normalize, verify_theorem2, wedge2, IndicatrixInvariants, IterationReport,
    PluckerPoint, Theorem2Report,
};
pub use quadrature::{arc_length, integrate_scalar_along, QuadratureConfig, QuadratureScheme};

/// Helpers shared with the command-line front end.
pub mod util {
    pub use crate::linalg::{gcd, mean_and_std};
}
