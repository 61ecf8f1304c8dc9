//! Frame forms of the asymptotic and mean-directional line fields.
//!
//! Both fields are null directions of a quadratic form on the tangent plane.
//! The direct forms below are written in the orthonormal tangent frame in
//! which the second fundamental form is given. The adapted route goes through
//! the reduction of `u_Φ` and a rotated tangent frame in which the forms are
//! nearly diagonal; it is used as an independent check.

use core::f64::consts::FRAC_PI_4;

#[allow(unused_imports)]
use num_traits::Float;

use crate::ellipse::phi_inverse_apply;
use crate::error::GeometryError;
use crate::fields::bde::{solve_directions, BdeCoeffs, Directions};
use crate::lorentz::{Mat2, Vec2L};
use crate::quadratic::{reduce_phi, QuadraticMap, ReductionResult, Sym2};

/// Null directions of this form are the asymptotic directions.
///
/// Trace `K_N` and determinant `−Δ`.
pub fn asymptotic_frame_form(q: QuadraticMap) -> Sym2 {
    let (h1, h2) = (q.h1(), q.h2());
    let (mu, nu, mup, nup) = (q.mu(), q.nu(), q.mu_p(), q.nu_p());
    let k0 = mu * nup - nu * mup;
    let p = h1 * nup - h2 * nu;
    let s = h2 * mu - h1 * mup;
    Sym2::new(k0 + p, s, k0 - p)
}

/// Null directions of this traceless form are the mean directional ones.
pub fn mean_frame_form(q: QuadraticMap) -> Sym2 {
    let (h1, h2) = (q.h1(), q.h2());
    let m11 = h1 * q.mu_p() - h2 * q.mu();
    let m12 = h1 * q.nu_p() - h2 * q.nu();
    Sym2::new(m11, m12, -m11)
}

/// The normal field whose principal directions are the mean directional ones.
pub fn mean_field_normal(q: QuadraticMap) -> Result<Vec2L, GeometryError> {
    phi_inverse_apply(q, q.mean_vector())
}

/// Forms in the frame adapted to the curvature ellipse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptedForms {
    /// Angle of `e1'` from `e1`.
    pub theta0: f64,
    /// `e2'` is `sigma` times `e1'` rotated by a right angle.
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Forms in `(e1', e2')`.
    pub mean_adapted: Sym2,
    pub delta_adapted: Sym2,
    /// The same forms in `(e1, e2)`.
    pub mean: Sym2,
    pub delta: Sym2,
}

impl AdaptedForms {
    /// Columns `e1'`, `e2'` in `(e1, e2)`.
    pub fn rotation(&self) -> Mat2 {
        let (s, c) = self.theta0.sin_cos();
        Mat2::new(c, -self.sigma * s, s, self.sigma * c)
    }
}

/// Builds the adapted tangent frame and the forms in it.
///
/// Needs a diagonalizable `u_Φ`; fails with `DegenerateFrame` otherwise.
pub fn adapted_direction_forms(q: QuadraticMap) -> Result<AdaptedForms, GeometryError> {
    let ReductionResult::Diagonalizable { frame, a2, b2, alpha, beta } = reduce_phi(q) else {
        return Err(GeometryError::DegenerateFrame);
    };
    let (a, b) = (a2.sqrt(), b2.sqrt());
    // II°(θ) = Vc·cos 2θ + Vs·sin 2θ, split along (ũ1, ũ2)
    let (pc, rc) = frame.coords(Vec2L::from_null(q.mu(), q.mu_p()));
    let (ps, rs) = frame.coords(Vec2L::from_null(q.nu(), q.nu_p()));
    let x1 = |t: f64| pc * (2.0 * t).cos() + ps * (2.0 * t).sin();
    let x2 = |t: f64| rc * (2.0 * t).cos() + rs * (2.0 * t).sin();
    let (theta0, sigma) = if a >= b {
        let t = 0.5 * ps.atan2(pc);
        if x2(t + FRAC_PI_4) >= 0.0 {
            (t, 1.0)
        } else {
            (t, -1.0)
        }
    } else {
        let t1 = 0.5 * rs.atan2(rc);
        if x1(t1 - FRAC_PI_4) >= 0.0 {
            (t1 - FRAC_PI_4, 1.0)
        } else {
            (t1 + FRAC_PI_4, -1.0)
        }
    };
    let mean_adapted = Sym2::new(-beta * a, alpha * b, beta * a);
    let delta_adapted = Sym2::new(b * (a + alpha), a * beta, b * (a - alpha));
    let mut out = AdaptedForms {
        theta0,
        sigma,
        a,
        b,
        alpha,
        beta,
        mean_adapted,
        delta_adapted,
        mean: Sym2::ZERO,
        delta: Sym2::ZERO,
    };
    // x' = Rᵀx, so a form M' in the new frame is R M' Rᵀ in the old one
    let rt = out.rotation().transpose();
    out.mean = mean_adapted.congruence(rt);
    out.delta = delta_adapted.congruence(rt);
    Ok(out)
}

/// Angle in `[0, π/2]` between the two asymptotic lines, if there are two.
pub fn asymptotic_angle(q: QuadraticMap) -> Option<f64> {
    let Directions::Two(d1, d2) = solve_directions(BdeCoeffs::from_form(asymptotic_frame_form(q), 0.0)) else {
        return None;
    };
    let c = (d1.0 * d2.0 + d1.1 * d2.1).abs().min(1.0);
    Some(c.acos())
}

/// `|sin²ϑ·K_N² − 4Δ·cos²ϑ| / (K_N² + 4|Δ|)`: zero when the asymptotic
/// angle obeys `tan²ϑ = 4Δ/K_N²`.
pub fn wong_residual(q: QuadraticMap) -> Option<f64> {
    let t = asymptotic_angle(q)?;
    let (k, d) = (q.k_n(), q.delta());
    let (s, c) = t.sin_cos();
    let den = k * k + 4.0 * d.abs();
    (den > 0.0).then(|| (s * s * k * k - 4.0 * d * c * c).abs() / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::shape_operator;
    use approx::assert_abs_diff_eq;

    const Q_SEMI: QuadraticMap = QuadraticMap::new(2.0, 0.0, 0.0, 1.0, 1.0, 0.0);

    fn samples() -> [QuadraticMap; 4] {
        [
            QuadraticMap::new(1.0, 0.3, 0.7, 0.2, -0.5, 0.4),
            QuadraticMap::new(2.0, -1.0, 0.1, -0.6, 0.8, -0.3),
            QuadraticMap::new(0.4, 1.7, -0.2, 0.9, 0.0, 1.1),
            QuadraticMap::new(-1.3, 0.5, 0.6, 0.2, 1.4, -0.7),
        ]
    }

    #[test]
    fn asymptotic_form_invariants() {
        for q in samples() {
            let d = asymptotic_frame_form(q);
            assert_abs_diff_eq!(d.trace(), q.k_n(), epsilon = 1e-12);
            assert_abs_diff_eq!(d.det(), -q.delta(), epsilon = 1e-12);
        }
        let d = asymptotic_frame_form(Q_SEMI);
        assert_abs_diff_eq!(d.det(), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(Q_SEMI.delta(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn asymptotic_directions_have_degenerate_shape_operator() {
        // at an asymptotic direction X the operator S_ν with ν ⟂ II(X) kills X
        for q in samples() {
            let Directions::Two(d1, d2) = solve_directions(BdeCoeffs::from_form(asymptotic_frame_form(q), 0.0)) else {
                continue;
            };
            for d in [d1, d2] {
                let w = q.eval(d);
                let (w1, w2) = w.null_coords();
                // ν with ⟨ν, w⟩ = 0: null coordinates (w1, −w2)
                let s = shape_operator(q, Vec2L::from_null(w1, -w2));
                let sx = (s.a11 * d.0 + s.a12 * d.1, s.a12 * d.0 + s.a22 * d.1);
                let scale = q.magnitude() * w.magnitude().max(1e-300);
                assert!(sx.0.hypot(sx.1) <= 1e-10 * scale.max(1.0), "{q:?} {sx:?}");
            }
        }
    }

    #[test]
    fn adapted_forms_match_direct_forms() {
        for q in samples() {
            let Ok(f) = adapted_direction_forms(q) else { continue };
            let m = mean_frame_form(q);
            let d = asymptotic_frame_form(q);
            // same null directions: proportional forms
            assert_abs_diff_eq!(f.mean.commutator(m), 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(f.delta.a11 * d.a12 - f.delta.a12 * d.a11, 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(f.delta.a22 * d.a12 - f.delta.a12 * d.a22, 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(f.delta.trace(), q.k_n().abs(), epsilon = 1e-10);
            assert_abs_diff_eq!(f.delta.det(), -q.delta(), epsilon = 1e-10);
        }
    }

    #[test]
    fn wong_relation() {
        for q in samples() {
            if let Some(r) = wong_residual(q) {
                assert!(r <= 1e-10, "{r}");
            }
        }
    }
}
