//! Line fields on a surface chart: ν-principal, asymptotic and mean
//! directionally curved lines, their integral curves and their singular
//! points.

pub mod bde;
pub mod directions;
pub mod trace;
pub mod umbilic;

pub use bde::{asymptotic_bde, mean_directional_bde, principal_bde, solve_directions, Bde, BdeCoeffs, BdeKind, Directions};
pub use directions::{adapted_direction_forms, asymptotic_angle, asymptotic_frame_form, mean_field_normal, mean_frame_form, wong_residual, AdaptedForms};
pub use trace::{integrate_line, Branch, Polyline, StopReason, TraceOptions};
pub use umbilic::{
    darboux_type, find_umbilics, poincare_hopf_check, umbilic_index, DarbouxType, PoincareHopfReport, PoincareHopfStatus,
    UmbilicPoint, UmbilicReport,
};
