//! Spacelike surfaces given by charts with second-order jets.

mod fd;
pub mod fixtures;

pub use fd::{finite_difference_adapter, FiniteDifferenceChart};
pub use fixtures::{AnalyticChart, Atlas, Fixture, Graph4, HyperbolicGraph, Perturbation};

use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::ellipse::{ellipse_data, phi_inverse_apply, EllipseData};
use crate::error::GeometryError;
use crate::lorentz::{det4, inner4, lorentz_cross4, Vec4L};
use crate::quadratic::{classify, invariants, InvariantSet, PointClass, QuadraticMap, Sym2};
use crate::tol::TAU_CAUSAL;

/// Value and first and second partial derivatives of an immersion.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ChartJet {
    pub p: Vec4L,
    pub du: Vec4L,
    pub dv: Vec4L,
    pub duu: Vec4L,
    pub duv: Vec4L,
    pub dvv: Vec4L,
}

/// A parameter rectangle. Periodic directions wrap around.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
    pub periodic_u: bool,
    pub periodic_v: bool,
}

impl Domain {
    pub const fn rect(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Domain { u0, u1, v0, v1, periodic_u: false, periodic_v: false }
    }

    pub fn diameter(&self) -> f64 {
        (self.u1 - self.u0).hypot(self.v1 - self.v0)
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        (self.periodic_u || (u >= self.u0 && u <= self.u1)) && (self.periodic_v || (v >= self.v0 && v <= self.v1))
    }

    /// Folds periodic coordinates into `[u0, u1)` and `[v0, v1)`.
    pub fn wrap(&self, u: f64, v: f64) -> (f64, f64) {
        let fold = |x: f64, a: f64, b: f64| {
            let w = b - a;
            a + num_traits::Euclid::rem_euclid(&(x - a), &w)
        };
        let u = if self.periodic_u { fold(u, self.u0, self.u1) } else { u };
        let v = if self.periodic_v { fold(v, self.v0, self.v1) } else { v };
        (u, v)
    }
}

/// How a chart produces its jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetKind {
    Analytic,
    FiniteDifference { h: f64 },
}

/// A parameterised piece of surface.
pub trait SurfaceChart: Sync {
    fn name(&self) -> &str;
    fn domain(&self) -> Domain;
    fn jet_at(&self, u: f64, v: f64) -> ChartJet;
    fn jet_kind(&self) -> JetKind {
        JetKind::Analytic
    }
}

/// Orthonormal tangent frame, the `(ns, nt)` normal frame and its null pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptedFrames {
    pub e1: Vec4L,
    pub e2: Vec4L,
    pub ns: Vec4L,
    pub nt: Vec4L,
    pub n1: Vec4L,
    pub n2: Vec4L,
}

/// Everything needed about a surface point to run the quadratic-map layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointGeometry {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub frames: AdaptedFrames,
    /// Second fundamental form in `(e1, e2)` and `(N1, N2)`.
    pub ii: QuadraticMap,
    /// `[φ_u φ_v] = [e1 e2]·P`, upper triangular.
    pub p: (f64, f64, f64),
}

impl PointGeometry {
    /// `c1·N1 + c2·N2` for null coordinates `(c1, c2)`.
    pub fn normal_from_null(&self, c: (f64, f64)) -> Vec4L {
        c.0 * self.frames.n1 + c.1 * self.frames.n2
    }

    /// Coefficients of a symmetric form on `(e1, e2)` re-expressed on
    /// `(φ_u, φ_v)`: `Pᵀ M P`.
    pub fn frame_to_chart(&self, m: Sym2) -> Sym2 {
        let (p11, p12, p22) = self.p;
        let p = crate::lorentz::Mat2::new(p11, p12, 0.0, p22);
        m.congruence(p)
    }
}

/// `(E, F, G)`, rejecting non-spacelike points.
pub fn first_fundamental(jet: &ChartJet) -> Result<(f64, f64, f64), GeometryError> {
    let e = inner4(jet.du, jet.du);
    let f = inner4(jet.du, jet.dv);
    let g = inner4(jet.dv, jet.dv);
    let det = e * g - f * f;
    let ok = e.is_finite() && g.is_finite() && f.is_finite() && e > 0.0 && det > TAU_CAUSAL * (e * g + f * f);
    if ok {
        Ok((e, f, g))
    } else {
        Err(GeometryError::NotSpacelike { e, f, g })
    }
}

/// Tangent and normal frames anchored to `φ_u`.
pub fn adapted_frames(jet: &ChartJet) -> Result<AdaptedFrames, GeometryError> {
    let (e, f, _) = first_fundamental(jet)?;
    let e1 = (1.0 / e.sqrt()) * jet.du;
    let w = jet.dv - f / e * jet.du;
    let e2 = (1.0 / inner4(w, w).sqrt()) * w;
    // Projection of the time axis onto the normal plane: always timelike and
    // future directed for a spacelike tangent plane.
    let t = Vec4L::E4;
    let proj = t - inner4(t, e1) * e1 - inner4(t, e2) * e2;
    let nt = (1.0 / (-inner4(proj, proj)).sqrt()) * proj;
    let c = lorentz_cross4(e1, e2, nt);
    let mut ns = (1.0 / inner4(c, c).sqrt()) * c;
    if det4(e1, e2, ns, nt) < 0.0 {
        ns = -ns;
    }
    let s = FRAC_1_SQRT_2;
    Ok(AdaptedFrames { e1, e2, ns, nt, n1: s * (ns + nt), n2: s * (nt - ns) })
}

/// The full per-point geometry.
pub fn point_geometry(jet: &ChartJet) -> Result<PointGeometry, GeometryError> {
    let (e, f, g) = first_fundamental(jet)?;
    let frames = adapted_frames(jet)?;
    let p11 = e.sqrt();
    let p12 = f / p11;
    let p22 = (g - p12 * p12).sqrt();
    let pinv = crate::lorentz::Mat2::new(1.0 / p11, -p12 / (p11 * p22), 0.0, 1.0 / p22);
    // N1-coefficient of a normal vector n is −⟨n, N2⟩, N2-coefficient −⟨n, N1⟩
    let c1 = |x: Vec4L| -inner4(x, frames.n2);
    let c2 = |x: Vec4L| -inner4(x, frames.n1);
    let q1 = Sym2::new(c1(jet.duu), c1(jet.duv), c1(jet.dvv)).congruence(pinv);
    let q2 = Sym2::new(c2(jet.duu), c2(jet.duv), c2(jet.dvv)).congruence(pinv);
    Ok(PointGeometry { e, f, g, frames, ii: QuadraticMap::from_parts(q1, q2), p: (p11, p12, p22) })
}

/// Second fundamental form in the adapted frames.
pub fn second_fundamental(jet: &ChartJet) -> Result<QuadraticMap, GeometryError> {
    point_geometry(jet).map(|pg| pg.ii)
}

/// `nt + ns`.
pub fn lightcone_normal(pg: &PointGeometry) -> Vec4L {
    pg.frames.nt + pg.frames.ns
}

/// Relative tolerance for the normality check of [`nu_form_coeffs`].
pub const NORMAL_TOL: f64 = 1e-8;

/// `(e_ν, f_ν, g_ν) = (⟨φ_uu, ν⟩, ⟨φ_uv, ν⟩, ⟨φ_vv, ν⟩)`.
pub fn nu_form_coeffs(jet: &ChartJet, nu: Vec4L) -> Result<(f64, f64, f64), GeometryError> {
    let nm = nu.magnitude();
    let ru = inner4(nu, jet.du).abs() / (nm * jet.du.magnitude());
    let rv = inner4(nu, jet.dv).abs() / (nm * jet.dv.magnitude());
    let residual = ru.max(rv);
    if (residual.is_nan() || residual > NORMAL_TOL) && nm > 0.0 {
        return Err(GeometryError::NotNormal { residual });
    }
    Ok((inner4(jet.duu, nu), inner4(jet.duv, nu), inner4(jet.dvv, nu)))
}

/// A normal vector field along a chart, described relative to the adapted
/// frames at each point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormalField {
    /// `a·ns + b·nt`. The lightcone field is `a = b = 1`.
    Frame { ns: f64, nt: f64 },
    /// `c1·N1 + c2·N2`.
    Null { n1: f64, n2: f64 },
    /// `u_Φ⁻¹(H)`; undefined where `K_N = 0`.
    MeanDirectional,
}

impl NormalField {
    pub const LIGHTCONE: NormalField = NormalField::Frame { ns: 1.0, nt: 1.0 };

    pub fn at(&self, pg: &PointGeometry) -> Result<Vec4L, GeometryError> {
        match *self {
            NormalField::Frame { ns, nt } => Ok(ns * pg.frames.ns + nt * pg.frames.nt),
            NormalField::Null { n1, n2 } => Ok(pg.normal_from_null((n1, n2))),
            NormalField::MeanDirectional => {
                let v = phi_inverse_apply(pg.ii, pg.ii.mean_vector())?;
                Ok(pg.normal_from_null(v.null_coords()))
            }
        }
    }
}

/// Per-point report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointReport {
    pub u: f64,
    pub v: f64,
    pub geometry: PointGeometry,
    pub invariants: InvariantSet,
    pub class: PointClass,
    pub ellipse: EllipseData,
}

/// Geometry, invariants, class and ellipse at a parameter point.
pub fn analyze_point(chart: &dyn SurfaceChart, u: f64, v: f64) -> Result<PointReport, GeometryError> {
    let d = chart.domain();
    if !(d.contains(u, v) && u.is_finite() && v.is_finite()) {
        return Err(GeometryError::OutsideDomain { u, v });
    }
    let (u, v) = d.wrap(u, v);
    let geometry = point_geometry(&chart.jet_at(u, v))?;
    let q = geometry.ii;
    let scale = q.magnitude();
    Ok(PointReport {
        u,
        v,
        geometry,
        invariants: invariants(q),
        class: classify(q, scale),
        ellipse: ellipse_data(q, scale),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lightlike_tangent_is_rejected() {
        let jet = ChartJet {
            du: Vec4L::new(1.0, 0.0, 0.0, 1.0),
            dv: Vec4L::E2,
            ..Default::default()
        };
        assert!(matches!(first_fundamental(&jet), Err(GeometryError::NotSpacelike { .. })));
    }

    #[test]
    fn plane_has_zero_second_form() {
        let jet = ChartJet { du: Vec4L::E1, dv: Vec4L::new(0.3, 1.0, 0.0, 0.0), ..Default::default() };
        assert_eq!(first_fundamental(&jet).unwrap(), (1.0, 0.3, 1.09));
        assert_eq!(second_fundamental(&jet).unwrap().magnitude(), 0.0);
        let nu = Vec4L::new(0.0, 0.0, 2.0, 1.0);
        assert_eq!(nu_form_coeffs(&jet, nu).unwrap(), (0.0, 0.0, 0.0));
        assert!(matches!(nu_form_coeffs(&jet, Vec4L::E1), Err(GeometryError::NotNormal { .. })));
    }

    #[test]
    fn frames_of_a_tilted_plane() {
        let jet = ChartJet {
            du: Vec4L::new(1.0, 0.0, 0.0, 0.5),
            dv: Vec4L::new(0.0, 1.0, 0.2, 0.1),
            ..Default::default()
        };
        let fr = adapted_frames(&jet).unwrap();
        assert_abs_diff_eq!(inner4(fr.e1, fr.e1), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inner4(fr.e2, fr.e2), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inner4(fr.nt, fr.nt), -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inner4(fr.ns, fr.ns), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inner4(fr.n1, fr.n2), -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inner4(fr.n1, fr.n1), 0.0, epsilon = 1e-14);
        for n in [fr.ns, fr.nt, fr.n1, fr.n2] {
            assert_abs_diff_eq!(inner4(n, fr.e1), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(inner4(n, fr.e2), 0.0, epsilon = 1e-14);
        }
        assert!(fr.nt.x4 > 0.0 && fr.n1.x4 > 0.0 && fr.n2.x4 > 0.0);
        assert!(det4(fr.e1, fr.e2, fr.ns, fr.nt) > 0.0);
    }
}
