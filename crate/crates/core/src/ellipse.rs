//! The curvature ellipse `{ q(cos θ, sin θ) }` in the normal plane.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeometryError;
use crate::lorentz::{null_basis, CausalCharacter, Frame2L, Vec2L};
use crate::quadratic::{reduce_phi_scaled, QuadraticMap, ReductionResult};
use crate::tol::TAU_CLASS;

/// Shape of the curvature ellipse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EllipseCase {
    /// A proper ellipse with semi-axes `a ũ1` and `b ũ2`.
    NonDegenerate { frame: Frame2L, a: f64, b: f64 },
    /// The segment `[H − ξ, H + ξ]`.
    Segment { xi: Vec2L, character: CausalCharacter },
    /// The single point `H`.
    Point,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseData {
    pub center: Vec2L,
    pub case: EllipseCase,
}

/// Position of the origin of the normal plane relative to the ellipse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OriginPosition {
    Inside,
    On,
    Outside,
    Undefined,
}

impl OriginPosition {
    pub fn as_str(self) -> &'static str {
        match self {
            OriginPosition::Inside => "inside",
            OriginPosition::On => "on",
            OriginPosition::Outside => "outside",
            OriginPosition::Undefined => "undefined",
        }
    }
}

/// `(X(θ), Y(θ))` with `X = μ cos 2θ + ν sin 2θ`, `Y = μ' cos 2θ + ν' sin 2θ`.
pub fn ellipse_offset(q: QuadraticMap, theta: f64) -> (f64, f64) {
    let (s, c) = (2.0 * theta).sin_cos();
    (q.mu() * c + q.nu() * s, q.mu_p() * c + q.nu_p() * s)
}

/// `H + X(θ)·N1 + Y(θ)·N2`.
pub fn ellipse_point(q: QuadraticMap, theta: f64) -> Vec2L {
    let (x, y) = ellipse_offset(q, theta);
    q.mean_vector() + Vec2L::from_null(x, y)
}

/// `(ν'X − νY)² + (μY − μ'X)² − (νμ' − ν'μ)²`, zero on the ellipse.
pub fn ellipse_equation_residual(q: QuadraticMap, x: f64, y: f64) -> f64 {
    let (mu, nu, mp, np) = (q.mu(), q.nu(), q.mu_p(), q.nu_p());
    let a = np * x - nu * y;
    let b = mu * y - mp * x;
    let d = nu * mp - np * mu;
    a * a + b * b - d * d
}

/// Half-vector `ξ` of the degenerate segment, normalised so that its
/// `N1`-coordinate is non-negative.
pub fn segment_half_vector(q: QuadraticMap) -> Vec2L {
    let phi = q.phi_form();
    let (sr, sp) = (phi.r.max(0.0).sqrt(), phi.p.max(0.0).sqrt());
    let sign = if sr == 0.0 || phi.m >= 0.0 { 1.0 } else { -1.0 };
    Vec2L::from_null(sr, sign * sp)
}

/// Shape of the ellipse with thresholds relative to `scale`.
pub fn ellipse_data(q: QuadraticMap, scale: f64) -> EllipseData {
    let center = q.mean_vector();
    let red = reduce_phi_scaled(q, scale);
    let case = match red {
        ReductionResult::NullPhi => EllipseCase::Point,
        ReductionResult::Diagonalizable { frame, a2, b2, .. } if q.k_n().abs() > TAU_CLASS * scale * scale => {
            EllipseCase::NonDegenerate { frame, a: a2.sqrt(), b: b2.sqrt() }
        }
        ReductionResult::Diagonalizable { .. } => {
            let character = if q.trace_phi() > 0.0 {
                CausalCharacter::Spacelike
            } else {
                CausalCharacter::Timelike
            };
            EllipseCase::Segment { xi: segment_half_vector(q), character }
        }
        ReductionResult::NonDiagonalizable { .. } => EllipseCase::Segment {
            xi: segment_half_vector(q),
            character: CausalCharacter::Lightlike,
        },
    };
    EllipseData { center, case }
}

/// `Φ*(ν) = ⟨ν, u_Φ⁻¹(ν)⟩`. The curvature ellipse is `{H + ν : Φ*(ν) = 1}`.
pub fn phi_star(q: QuadraticMap, nu: Vec2L) -> Result<f64, GeometryError> {
    let s = q.magnitude();
    let k_n = q.k_n();
    if k_n.abs() <= TAU_CLASS * s * s {
        return Err(GeometryError::SingularPhi { k_n });
    }
    let phi = q.phi_form();
    let (a1, a2) = nu.null_coords();
    let num = phi.p * a1 * a1 - 2.0 * phi.m * a1 * a2 + phi.r * a2 * a2;
    Ok(4.0 * num / (k_n * k_n))
}

/// `u_Φ⁻¹(ν)`.
pub fn phi_inverse_apply(q: QuadraticMap, nu: Vec2L) -> Result<Vec2L, GeometryError> {
    let s = q.magnitude();
    let k_n = q.k_n();
    if k_n.abs() <= TAU_CLASS * s * s {
        return Err(GeometryError::SingularPhi { k_n });
    }
    let phi = q.phi_form();
    let det = phi.det();
    let (a1, a2) = nu.null_coords();
    Ok(Vec2L::from_null((-phi.m * a1 + phi.r * a2) / det, (phi.p * a1 - phi.m * a2) / det))
}

/// `h(ν) = √Φ(ν)`.
pub fn support_function(q: QuadraticMap, nu: Vec2L) -> f64 {
    q.phi_form().value(nu).max(0.0).sqrt()
}

/// Where the origin lies, by the sign of `Δ` when `K_N ≠ 0`.
pub fn origin_position(q: QuadraticMap, scale: f64) -> OriginPosition {
    let s2 = scale * scale;
    if q.k_n().abs() <= TAU_CLASS * s2 {
        return OriginPosition::Undefined;
    }
    let d = q.delta();
    if d > TAU_CLASS * s2 * s2 {
        OriginPosition::Outside
    } else if d < -TAU_CLASS * s2 * s2 {
        OriginPosition::Inside
    } else {
        OriginPosition::On
    }
}

/// Endpoints `(H − ξ, H + ξ)` of a segment, `None` otherwise.
pub fn segment_endpoints(data: &EllipseData) -> Option<(Vec2L, Vec2L)> {
    match data.case {
        EllipseCase::Segment { xi, .. } => Some((data.center - xi, data.center + xi)),
        _ => None,
    }
}

/// The null pair, for callers assembling ellipse points by hand.
pub fn null_pair() -> (Vec2L, Vec2L) {
    null_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::inner2;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::FRAC_PI_4;

    const Q_REG: QuadraticMap = QuadraticMap::new(1.0, -1.0, 0.0, 0.0, 0.0, 1.0);
    const Q_SEMI: QuadraticMap = QuadraticMap::new(2.0, 0.0, 0.0, 1.0, 1.0, 0.0);

    fn close_vec(a: Vec2L, b: Vec2L) {
        assert_abs_diff_eq!(a.c1, b.c1, epsilon = 1e-14);
        assert_abs_diff_eq!(a.c2, b.c2, epsilon = 1e-14);
    }

    #[test]
    fn point_examples() {
        let (n1, n2) = null_basis();
        close_vec(ellipse_point(QuadraticMap::ZERO, 0.3), Vec2L::ZERO);
        close_vec(ellipse_point(Q_REG, 0.0), n1);
        close_vec(ellipse_point(Q_REG, FRAC_PI_4), n2);
    }

    #[test]
    fn data_examples() {
        let d = ellipse_data(Q_REG, 1.0);
        close_vec(d.center, Vec2L::ZERO);
        match d.case {
            EllipseCase::NonDegenerate { a, b, .. } => {
                assert_abs_diff_eq!(a, 1.0, epsilon = 1e-14);
                assert_abs_diff_eq!(b, 1.0, epsilon = 1e-14);
            }
            other => panic!("{other:?}"),
        }
        let d = ellipse_data(Q_SEMI, 1.0);
        match d.case {
            EllipseCase::Segment { xi, character } => {
                close_vec(xi, null_basis().0);
                assert_eq!(character, CausalCharacter::Lightlike);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(ellipse_data(QuadraticMap::ZERO, 1.0).case, EllipseCase::Point);
    }

    #[test]
    fn segment_characters() {
        let q = QuadraticMap::new(1.0, 0.0, 0.0, -1.0, 0.0, 0.0);
        let EllipseCase::Segment { xi, character } = ellipse_data(q, 1.0).case else { panic!() };
        assert_eq!(character, CausalCharacter::Spacelike);
        assert_abs_diff_eq!(xi.norm2(), q.trace_phi(), epsilon = 1e-14);
        let q = QuadraticMap::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0);
        let EllipseCase::Segment { xi, character } = ellipse_data(q, 1.0).case else { panic!() };
        assert_eq!(character, CausalCharacter::Timelike);
        assert_abs_diff_eq!(xi.norm2(), q.trace_phi(), epsilon = 1e-14);
    }

    #[test]
    fn phi_star_examples() {
        assert_abs_diff_eq!(phi_star(Q_REG, Vec2L::new(1.0, 0.0)).unwrap(), 1.0, epsilon = 1e-14);
        assert!(matches!(phi_star(Q_SEMI, Vec2L::new(1.0, 0.0)), Err(GeometryError::SingularPhi { .. })));
        let q = QuadraticMap::new(0.3, -0.2, 0.9, 1.1, 0.4, -0.6);
        let h = q.mean_vector();
        for i in 0..16 {
            let p = ellipse_point(q, i as f64 * 0.2);
            assert_abs_diff_eq!(phi_star(q, p - h).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn phi_inverse_roundtrip() {
        let q = QuadraticMap::new(0.3, -0.2, 0.9, 1.1, 0.4, -0.6);
        let v = Vec2L::new(0.7, -0.2);
        let w = phi_inverse_apply(q, v).unwrap();
        let back = q.phi_form().apply(w);
        close_vec(back, v);
        assert_abs_diff_eq!(inner2(v, w), phi_star(q, v).unwrap(), epsilon = 1e-13);
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_function(QuadraticMap::ZERO, Vec2L::new(1.0, 2.0)), 0.0);
        let (_, n2) = null_basis();
        assert_abs_diff_eq!(support_function(Q_SEMI, n2), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn origin_examples() {
        assert_eq!(origin_position(Q_REG, 1.0), OriginPosition::Inside);
        assert_eq!(origin_position(Q_SEMI, 1.0), OriginPosition::Undefined);
        // H large compared with the ellipse: the origin is outside.
        let q = QuadraticMap::new(3.0, 2.0, 0.1, -2.0, -3.0, 0.3);
        assert!(q.k_n().abs() > 0.1 && q.delta() > 0.0);
        assert_eq!(origin_position(q, 1.0), OriginPosition::Outside);
    }
}
