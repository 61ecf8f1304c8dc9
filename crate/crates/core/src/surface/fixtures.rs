//! Built-in surfaces with exact jets.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use super::{ChartJet, Domain, SurfaceChart};
use crate::jet::{Jet2, Scalar};
use crate::lorentz::Vec4L;

/// Origin of the periodic azimuth of closed fixtures. Keeps the seam and the
/// grid lines away from the symmetry planes where umbilics sit.
pub const AZIMUTH_ORIGIN: f64 = 0.1234;

/// Polar angle bounding the equator chart of sphere-type atlases.
pub const CAP_ANGLE: f64 = 0.5;
const EQUATOR_MARGIN: f64 = 0.4;

/// `φ(u, v) = u·e1 + v·e2 + A(u, v)·N1 + B(u, v)·N2` with cubic `A`, `B`
/// and `N1 = (e3 + e4)/√2`, `N2 = (e4 − e3)/√2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Graph4 {
    pub a20: f64,
    pub a11: f64,
    pub a02: f64,
    pub a30: f64,
    pub a21: f64,
    pub a12: f64,
    pub a03: f64,
    pub k: f64,
    pub b30: f64,
    pub b21: f64,
    pub b12: f64,
    pub b03: f64,
}

impl Graph4 {
    fn a<S: Scalar>(&self, u: S, v: S) -> S {
        let quad = u.sq().scale(self.a20) + (u * v).scale(2.0 * self.a11) + v.sq().scale(self.a02);
        let cubic = (u.sq() * u).scale(self.a30)
            + (u.sq() * v).scale(3.0 * self.a21)
            + (u * v.sq()).scale(3.0 * self.a12)
            + (v.sq() * v).scale(self.a03);
        quad.scale(0.5) + cubic.scale(1.0 / 6.0)
    }

    fn b<S: Scalar>(&self, u: S, v: S) -> S {
        let quad = (u.sq() + v.sq()).scale(0.5 * self.k);
        let cubic = (u.sq() * u).scale(self.b30)
            + (u.sq() * v).scale(3.0 * self.b21)
            + (u * v.sq()).scale(3.0 * self.b12)
            + (v.sq() * v).scale(self.b03);
        quad + cubic.scale(1.0 / 6.0)
    }
}

/// `(u, v, h(u, v), √(1 + u² + v² + h²))` on the hyperboloid `⟨φ, φ⟩ = −1`
/// with `h = c20·u² + c11·uv + c02·v² + c_sin·sin(u + 2v)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HyperbolicGraph {
    pub c20: f64,
    pub c11: f64,
    pub c02: f64,
    pub c_sin: f64,
}

/// Adds `eps·g(x1, x2, x3)` to the time coordinate, tilting a surface of the
/// hyperplane `x4 = 0` out of it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perturbation {
    pub eps: f64,
}

impl Perturbation {
    fn g<S: Scalar>(x1: S, x2: S, x3: S) -> S {
        x1 * x2 + (x2 * x3).scale(0.6) - (x1 * x3).scale(0.3) + (x1.sq() * x1).scale(0.2)
    }
}

/// The immersion behind an [`AnalyticChart`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fixture {
    Plane,
    Graph4(Graph4),
    /// Round sphere of the hyperplane `x4 = 0`, chart `(polar, azimuth)`.
    Sphere { r: f64 },
    /// `(a sin θ cos ϕ, b sin θ sin ϕ, c cos θ, 0)`, chart `(θ, ϕ)`.
    Ellipsoid { a: f64, b: f64, c: f64 },
    /// Graph chart around a pole of the ellipsoid, outward oriented.
    EllipsoidCap { a: f64, b: f64, c: f64, north: bool },
    /// Torus of revolution of the hyperplane `x4 = 0`.
    Torus { big_r: f64, r: f64 },
    Hyperbolic(HyperbolicGraph),
}

impl Fixture {
    pub fn point<S: Scalar>(&self, u: S, v: S) -> [S; 4] {
        let zero = S::cst(0.0);
        match *self {
            Fixture::Plane => [u, v, zero, zero],
            Fixture::Graph4(g) => {
                let (a, b) = (g.a(u, v), g.b(u, v));
                [u, v, (a - b).scale(FRAC_1_SQRT_2), (a + b).scale(FRAC_1_SQRT_2)]
            }
            Fixture::Sphere { r } => Fixture::Ellipsoid { a: r, b: r, c: r }.point(u, v),
            Fixture::Ellipsoid { a, b, c } => {
                let st = u.sin();
                [(st * v.cos()).scale(a), (st * v.sin()).scale(b), u.cos().scale(c), zero]
            }
            Fixture::EllipsoidCap { a, b, c, north } => {
                if north {
                    let w = (S::cst(1.0) - u.sq().scale(1.0 / (a * a)) - v.sq().scale(1.0 / (b * b))).sqrt();
                    [u, v, w.scale(c), zero]
                } else {
                    let w = (S::cst(1.0) - v.sq().scale(1.0 / (a * a)) - u.sq().scale(1.0 / (b * b))).sqrt();
                    [v, u, w.scale(-c), zero]
                }
            }
            Fixture::Torus { big_r, r } => {
                let rho = v.cos().scale(r).offset(big_r);
                [rho * u.cos(), rho * u.sin(), v.sin().scale(r), zero]
            }
            Fixture::Hyperbolic(h) => {
                let z = u.sq().scale(h.c20)
                    + (u * v).scale(h.c11)
                    + v.sq().scale(h.c02)
                    + (u + v.scale(2.0)).sin().scale(h.c_sin);
                let t = (S::cst(1.0) + u.sq() + v.sq() + z.sq()).sqrt();
                [u, v, z, t]
            }
        }
    }

    /// Whether the image lies in the hyperplane `x4 = 0`.
    pub fn in_hyperplane(&self) -> bool {
        matches!(
            self,
            Fixture::Plane | Fixture::Sphere { .. } | Fixture::Ellipsoid { .. } | Fixture::EllipsoidCap { .. } | Fixture::Torus { .. }
        )
    }
}

/// A fixture restricted to a parameter domain, optionally perturbed.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticChart {
    pub name: String,
    pub fixture: Fixture,
    pub perturbation: Option<Perturbation>,
    pub domain: Domain,
}

fn sphere_type_domain() -> Domain {
    Domain {
        u0: EQUATOR_MARGIN,
        u1: PI - EQUATOR_MARGIN,
        v0: AZIMUTH_ORIGIN,
        v1: AZIMUTH_ORIGIN + 2.0 * PI,
        periodic_u: false,
        periodic_v: true,
    }
}

impl AnalyticChart {
    pub fn new(name: &str, fixture: Fixture, domain: Domain) -> Self {
        AnalyticChart { name: name.into(), fixture, perturbation: None, domain }
    }

    pub fn plane(half_width: f64) -> Self {
        AnalyticChart::new("plane", Fixture::Plane, Domain::rect(-half_width, half_width, -half_width, half_width))
    }

    pub fn graph4(g: Graph4, half_width: f64) -> Self {
        AnalyticChart::new("graph4", Fixture::Graph4(g), Domain::rect(-half_width, half_width, -half_width, half_width))
    }

    pub fn sphere(r: f64) -> Self {
        AnalyticChart::new("sphere", Fixture::Sphere { r }, sphere_type_domain())
    }

    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Self {
        AnalyticChart::new("ellipsoid", Fixture::Ellipsoid { a, b, c }, sphere_type_domain())
    }

    pub fn ellipsoid_cap(a: f64, b: f64, c: f64, north: bool) -> Self {
        let s = Float::sin(CAP_ANGLE);
        let domain = if north {
            Domain::rect(-a * s, a * s, -b * s, b * s)
        } else {
            Domain::rect(-b * s, b * s, -a * s, a * s)
        };
        let name = if north { "ellipsoid_cap_north" } else { "ellipsoid_cap_south" };
        AnalyticChart::new(name, Fixture::EllipsoidCap { a, b, c, north }, domain)
    }

    pub fn torus(big_r: f64, r: f64) -> Self {
        let o = AZIMUTH_ORIGIN;
        let domain = Domain {
            u0: o,
            u1: o + 2.0 * PI,
            v0: o,
            v1: o + 2.0 * PI,
            periodic_u: true,
            periodic_v: true,
        };
        AnalyticChart::new("torus", Fixture::Torus { big_r, r }, domain)
    }

    pub fn hyperbolic(h: HyperbolicGraph, half_width: f64) -> Self {
        AnalyticChart::new("hyperbolic", Fixture::Hyperbolic(h), Domain::rect(-half_width, half_width, -half_width, half_width))
    }

    pub fn perturbed(mut self, eps: f64) -> Self {
        self.perturbation = Some(Perturbation { eps });
        self
    }

    fn eval<S: Scalar>(&self, u: S, v: S) -> [S; 4] {
        let mut x = self.fixture.point(u, v);
        if let Some(p) = self.perturbation {
            x[3] = x[3] + Perturbation::g(x[0], x[1], x[2]).scale(p.eps);
        }
        x
    }

    pub fn point(&self, u: f64, v: f64) -> Vec4L {
        Vec4L::from_array(self.eval(u, v))
    }
}

impl SurfaceChart for AnalyticChart {
    fn name(&self) -> &str {
        &self.name
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn jet_at(&self, u: f64, v: f64) -> ChartJet {
        let x = self.eval(Jet2::var_u(u), Jet2::var_v(v));
        let pick = |f: fn(&Jet2) -> f64| Vec4L::new(f(&x[0]), f(&x[1]), f(&x[2]), f(&x[3]));
        ChartJet {
            p: pick(|j| j.v),
            du: pick(|j| j.du),
            dv: pick(|j| j.dv),
            duu: pick(|j| j.duu),
            duv: pick(|j| j.duv),
            dvv: pick(|j| j.dvv),
        }
    }
}

/// A closed surface covered by overlapping charts.
#[derive(Clone, Debug, PartialEq)]
pub struct Atlas {
    pub name: String,
    pub charts: Vec<AnalyticChart>,
    pub euler_characteristic: i32,
    /// Characteristic ambient size, used to merge points seen by two charts.
    pub ambient_diameter: f64,
}

impl Atlas {
    /// Equator chart plus two polar caps.
    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Self {
        Atlas {
            name: "ellipsoid".into(),
            charts: vec![
                AnalyticChart::ellipsoid(a, b, c),
                AnalyticChart::ellipsoid_cap(a, b, c, true),
                AnalyticChart::ellipsoid_cap(a, b, c, false),
            ],
            euler_characteristic: 2,
            ambient_diameter: 2.0 * a.max(b).max(c),
        }
    }

    pub fn sphere(r: f64) -> Self {
        let mut at = Atlas::ellipsoid(r, r, r);
        at.name = "sphere".into();
        at.charts[0].fixture = Fixture::Sphere { r };
        at.charts[0].name = "sphere".into();
        at
    }

    /// A single doubly periodic chart.
    pub fn torus(big_r: f64, r: f64) -> Self {
        Atlas {
            name: "torus".into(),
            charts: vec![AnalyticChart::torus(big_r, r)],
            euler_characteristic: 0,
            ambient_diameter: 2.0 * (big_r + r),
        }
    }

    pub fn perturbed(mut self, eps: f64) -> Self {
        for c in &mut self.charts {
            c.perturbation = Some(Perturbation { eps });
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::inner4;
    use crate::surface::{point_geometry, second_fundamental};
    use approx::assert_abs_diff_eq;

    #[test]
    fn sphere_frames_are_outward() {
        let ch = AnalyticChart::sphere(2.0);
        for &(u, v) in &[(1.0, 0.3), (0.7, 2.5), (2.2, 5.0)] {
            let pg = point_geometry(&ch.jet_at(u, v)).unwrap();
            let x = ch.point(u, v);
            let n = (1.0 / 2.0) * x;
            assert_abs_diff_eq!((pg.frames.ns - n).magnitude(), 0.0, epsilon = 1e-13);
            assert_abs_diff_eq!((pg.frames.nt - Vec4L::E4).magnitude(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn caps_are_outward() {
        let (a, b, c) = (3.0, 2.0, 1.0);
        for north in [true, false] {
            let ch = AnalyticChart::ellipsoid_cap(a, b, c, north);
            let pg = point_geometry(&ch.jet_at(0.1, -0.05)).unwrap();
            let x = ch.point(0.1, -0.05);
            let grad = Vec4L::new(x.x1 / (a * a), x.x2 / (b * b), x.x3 / (c * c), 0.0);
            assert!(inner4(pg.frames.ns, grad) > 0.0);
        }
    }

    #[test]
    fn graph4_second_form_at_origin() {
        let g = Graph4 { a20: 0.4, a11: -0.3, a02: 1.2, k: 0.7, b21: 0.5, a30: 0.9, ..Default::default() };
        let q = second_fundamental(&AnalyticChart::graph4(g, 1.0).jet_at(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(q.x, 0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(q.z, -0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(q.y, 1.2, epsilon = 1e-14);
        assert_abs_diff_eq!(q.u, 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(q.w, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q.v, 0.7, epsilon = 1e-14);
    }

    #[test]
    fn hyperbolic_graph_is_on_the_hyperboloid() {
        let h = HyperbolicGraph { c20: 0.3, c11: -0.2, c02: 0.5, c_sin: 0.1 };
        let x = AnalyticChart::hyperbolic(h, 1.0).point(0.4, -0.7);
        assert_abs_diff_eq!(x.norm2(), -1.0, epsilon = 1e-14);
        assert!(x.x4 > 0.0);
    }

    #[test]
    fn domain_wrap() {
        let d = AnalyticChart::torus(2.0, 1.0).domain;
        let (u, v) = d.wrap(d.u0 - 0.1, d.v1 + 0.2);
        assert_abs_diff_eq!(u, d.u1 - 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(v, d.v0 + 0.2, epsilon = 1e-12);
    }
}
