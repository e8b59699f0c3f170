//! Numerical verification of coordinate-chart contact, symplectic and
//! Liouville conditions on sample grids.
//!
//! Built-in model families carry exact symbolic derivatives; tabulated
//! profiles (user data) are differentiated by finite differences. Grid
//! positivity is a verification heuristic, not a proof: every report states
//! the number of sample points checked.

mod chart;
mod checks;
mod expr;
mod form;
pub mod models;
mod profile;
mod threshold;

pub use chart::{Axis, Chart};
pub use checks::{
    boundary_profile_check, collar_model_check, contact_check, giroux_interface_check,
    symplectic_check, CheckKind, CheckReport, Tolerances,
};
pub use expr::Expr;
pub use form::ChartForm;
pub use profile::{boundary_collar_profiles, corner_smoothing_profiles, Profile};
pub use threshold::{thurston_threshold, ThresholdFamily, ThresholdResult};

#[derive(Debug, Clone, thiserror::Error)]
pub enum FormsError {
    #[error("chart must be {expected}-dimensional, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected a degree-{expected} form, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("axis {axis} needs at least 2 samples")]
    BadResolution { axis: usize },
    #[error("profile precondition violated: {0}")]
    BadProfile(String),
}
