use core::fmt;

/// Failures of the geometric layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeometryError {
    /// The induced metric is not Riemannian at the point (or `φ_u`, `φ_v`
    /// are dependent).
    NotSpacelike { e: f64, f: f64, g: f64 },
    /// A vector passed as a normal has a tangential component beyond
    /// tolerance.
    NotNormal { residual: f64 },
    /// `u_Φ` is not invertible (`K_N ≈ 0`).
    SingularPhi { k_n: f64 },
    /// The adapted frame of the curvature ellipse needs a diagonalizable
    /// `u_Φ` with a non-zero form `Φ`.
    DegenerateFrame,
    /// A triple `(L, Φ, A)` is not the image of a quadratic map.
    InvalidTriple { identity_residual: f64, min_phi: f64 },
    /// A line trace was seeded at (or too close to) a singular point.
    SeedAtSingularity { u: f64, v: f64 },
    /// The binary differential equation has no real solution at the point.
    NoRealDirections { u: f64, v: f64 },
    /// The winding number around a point could not be resolved.
    AmbiguousWinding { u: f64, v: f64 },
    /// The umbilic linearisation is too degenerate to classify.
    NonDarbouxian,
    /// A parameter point lies outside the chart domain.
    OutsideDomain { u: f64, v: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeometryError::NotSpacelike { e, f: ff, g } => {
                write!(f, "point is not spacelike (E={e}, F={ff}, G={g})")
            }
            GeometryError::NotNormal { residual } => {
                write!(f, "vector is not normal to the surface (residual {residual:e})")
            }
            GeometryError::SingularPhi { k_n } => {
                write!(f, "u_Phi is singular (K_N={k_n:e})")
            }
            GeometryError::DegenerateFrame => {
                f.write_str("curvature ellipse has no adapted frame (u_Phi not diagonalizable or Phi = 0)")
            }
            GeometryError::InvalidTriple { identity_residual, min_phi } => write!(
                f,
                "(L, Phi, A) is not realisable: identity residual {identity_residual:e}, min Phi {min_phi:e}"
            ),
            GeometryError::SeedAtSingularity { u, v } => {
                write!(f, "seed ({u}, {v}) is at a singularity of the line field")
            }
            GeometryError::NoRealDirections { u, v } => {
                write!(f, "no real directions at ({u}, {v})")
            }
            GeometryError::AmbiguousWinding { u, v } => {
                write!(f, "winding number around ({u}, {v}) is ambiguous")
            }
            GeometryError::NonDarbouxian => f.write_str("umbilic is not Darbouxian"),
            GeometryError::OutsideDomain { u, v } => {
                write!(f, "({u}, {v}) is outside the chart domain")
            }
        }
    }
}

impl core::error::Error for GeometryError {}
