use proptest::prelude::*;

use spacelike_core::ellipse::{ellipse_offset, ellipse_point, phi_star, support_function};
use spacelike_core::fields::{solve_directions, BdeCoeffs, Directions};
use spacelike_core::lorentz::{boost, inner2, rotation};
use spacelike_core::quadratic::{
    act, compose_normal, equivalent, form_a, form_phi, form_phi_polar, forms, reconstruct, shape_operator,
};
use spacelike_core::{QuadraticMap, Vec2L};

fn qmap() -> impl Strategy<Value = QuadraticMap> {
    prop::array::uniform6(-2.0f64..2.0).prop_map(QuadraticMap::from_array)
}

fn normal() -> impl Strategy<Value = Vec2L> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| Vec2L::new(a, b))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0f64.max(a.abs()).max(b.abs())
}

/// Matrix of the bilinear form Φ̃ in the canonical basis, from polarisation
/// only, and the operator G⁻¹M with G = diag(1, −1).
fn phi_operator(q: QuadraticMap) -> (f64, f64) {
    let e1 = Vec2L::new(1.0, 0.0);
    let e2 = Vec2L::new(0.0, 1.0);
    let m11 = form_phi(q, e1);
    let m22 = form_phi(q, e2);
    let m12 = 0.5 * (form_phi(q, e1 + e2) - m11 - m22);
    // G⁻¹M = [[m11, m12], [−m12, −m22]]
    (m11 - m22, -m11 * m22 + m12 * m12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn lagrange_identity(q in qmap(), n1 in normal(), n2 in normal()) {
        let lhs = form_phi(q, n1) * form_phi(q, n2);
        let p = form_phi_polar(q, n1, n2);
        let a = form_a(q, n1, n2);
        prop_assert!((lhs - p * p - a * a).abs() <= 1e-10 * lhs.max(1.0));
    }

    #[test]
    fn trace_and_determinant_of_phi(q in qmap()) {
        let (tr, det) = phi_operator(q);
        let k_n = q.k_n();
        prop_assert!(rel(tr, q.h_norm2() - q.k()) <= 1e-10);
        prop_assert!(rel(det, -0.25 * k_n * k_n) <= 1e-10);
    }

    #[test]
    fn invariants_are_equivariant(q in qmap(), t in -2.0f64..2.0, th in -4.0f64..4.0) {
        let g = act(q, t, th);
        let s = q.magnitude().max(1.0).powi(4) * (2.0f64).exp();
        prop_assert!((g.h_norm2() - q.h_norm2()).abs() <= 1e-8 * s);
        prop_assert!((g.k() - q.k()).abs() <= 1e-8 * s);
        prop_assert!((g.k_n() - q.k_n()).abs() <= 1e-8 * s);
        prop_assert!((g.delta() - q.delta()).abs() <= 1e-8 * s * s);
        prop_assert!(equivalent(q, g, 1e-6));
    }

    #[test]
    fn act_matches_composition(q in qmap(), t in -2.0f64..2.0, th in -4.0f64..4.0) {
        // boosting the values and rotating the argument commute with act
        let via_act = act(q, t, th);
        let r = rotation(th);
        let rotated = QuadraticMap::from_parts(q.q1().congruence(r), q.q2().congruence(r));
        let via_compose = compose_normal(boost(t), rotated);
        for (a, b) in via_act.to_array().iter().zip(via_compose.to_array()) {
            prop_assert!((a - b).abs() <= 1e-10 * q.magnitude().max(1.0) * 8.0);
        }
    }

    #[test]
    fn reconstruction_round_trip(q in qmap()) {
        let (l, phi, a0) = forms(q);
        let r = reconstruct(l, phi, a0).unwrap();
        let s = q.magnitude().max(1.0);
        prop_assert!((r.h_norm2() - q.h_norm2()).abs() <= 1e-9 * s * s);
        prop_assert!((r.k() - q.k()).abs() <= 1e-9 * s * s);
        prop_assert!((r.k_n() - q.k_n()).abs() <= 1e-9 * s * s);
        prop_assert!((r.delta() - q.delta()).abs() <= 1e-9 * s.powi(4));
        let (l2, phi2, a2) = forms(r);
        prop_assert!((l2 - l).magnitude() <= 1e-9 * s);
        prop_assert!((phi2.sub(phi)).max_abs() <= 1e-9 * s * s);
        prop_assert!((a2 - a0).abs() <= 1e-9 * s * s);
    }

    #[test]
    fn shape_operator_is_linear(q in qmap(), n1 in normal(), n2 in normal(), c in -3.0f64..3.0) {
        let lhs = shape_operator(q, n1 + c * n2);
        let rhs = shape_operator(q, n1).add(shape_operator(q, n2).scale(c));
        prop_assert!(lhs.sub(rhs).max_abs() <= 1e-12 * 32.0);
    }

    #[test]
    fn ellipse_points_satisfy_the_intrinsic_equation(q in qmap(), th in 0.0f64..6.3) {
        prop_assume!(q.k_n().abs() > 0.1);
        let x = ellipse_point(q, th) - q.mean_vector();
        prop_assert!((phi_star(q, x).unwrap() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn support_function_is_the_sampled_maximum(q in qmap(), nu in normal()) {
        let n = 4096;
        let best = (0..n)
            .map(|k| {
                let (x, y) = ellipse_offset(q, std::f64::consts::PI * k as f64 / n as f64);
                inner2(Vec2L::from_null(x, y), nu)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let h = support_function(q, nu);
        prop_assert!((best - h).abs() <= 1e-5 * h.max(1.0), "{best} {h}");
    }

    #[test]
    fn bde_roots_solve_their_equation(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let k = BdeCoeffs::new(a, b, c);
        let m = a.abs().max(b.abs()).max(c.abs());
        let res = |d: (f64, f64)| (a * d.0 * d.0 + b * d.0 * d.1 + c * d.1 * d.1).abs();
        match solve_directions(k) {
            Directions::Two(d1, d2) => {
                prop_assert!(res(d1) <= 1e-10 * m && res(d2) <= 1e-10 * m);
                prop_assert!(b * b - 4.0 * a * c > 0.0);
            }
            Directions::Double(d) => prop_assert!(res(d) <= 1e-6 * m),
            Directions::None => prop_assert!(b * b - 4.0 * a * c < 0.0),
            Directions::Degenerate => prop_assert_eq!(m, 0.0),
        }
    }
}
