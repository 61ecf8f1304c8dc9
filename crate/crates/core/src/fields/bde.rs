#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeometryError;
use crate::fields::directions::{asymptotic_frame_form, mean_frame_form};
use crate::quadratic::Sym2;
use crate::surface::{nu_form_coeffs, point_geometry, NormalField, PointGeometry, SurfaceChart};

/// Which line field a binary differential equation describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BdeKind {
    NuPrincipal,
    Asymptotic,
    MeanDirectional,
}

impl BdeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BdeKind::NuPrincipal => "principal",
            BdeKind::Asymptotic => "asymptotic",
            BdeKind::MeanDirectional => "mean",
        }
    }
}

/// `A du² + B du dv + C dv²` at a point, with the magnitude the
/// coefficients should be compared against.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BdeCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub scale: f64,
}

impl BdeCoeffs {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        BdeCoeffs { a, b, c, scale: a.abs() + b.abs() + c.abs() }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    /// All three coefficients vanish relative to `scale`.
    pub fn vanishes(&self, tau: f64) -> bool {
        self.max_abs() <= tau * self.scale
    }

    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    /// Coefficients of a quadratic form given by its symmetric matrix.
    pub fn from_form(m: Sym2, scale: f64) -> Self {
        BdeCoeffs { a: m.a11, b: 2.0 * m.a12, c: m.a22, scale }
    }
}

/// Coefficients of the ν-principal equation from the fundamental forms.
pub fn principal_coeffs(e: f64, f: f64, g: f64, en: f64, fn_: f64, gn: f64) -> BdeCoeffs {
    BdeCoeffs {
        a: f * en - e * fn_,
        b: g * en - e * gn,
        c: g * fn_ - f * gn,
        scale: (e + g) * (en.abs() + fn_.abs() + gn.abs()),
    }
}

/// A binary differential equation over a chart.
#[derive(Clone, Copy)]
pub struct Bde<'a> {
    pub chart: &'a dyn SurfaceChart,
    pub kind: BdeKind,
    /// Used by [`BdeKind::NuPrincipal`] only.
    pub normal: NormalField,
}

impl core::fmt::Debug for Bde<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Bde")
            .field("chart", &self.chart.name())
            .field("kind", &self.kind)
            .field("normal", &self.normal)
            .finish()
    }
}

/// `(Fe_ν − Ef_ν) du² + (Ge_ν − Eg_ν) du dv + (Gf_ν − Fg_ν) dv² = 0`.
pub fn principal_bde(chart: &dyn SurfaceChart, normal: NormalField) -> Bde<'_> {
    Bde { chart, kind: BdeKind::NuPrincipal, normal }
}

pub fn asymptotic_bde(chart: &dyn SurfaceChart) -> Bde<'_> {
    Bde { chart, kind: BdeKind::Asymptotic, normal: NormalField::LIGHTCONE }
}

pub fn mean_directional_bde(chart: &dyn SurfaceChart) -> Bde<'_> {
    Bde { chart, kind: BdeKind::MeanDirectional, normal: NormalField::LIGHTCONE }
}

impl Bde<'_> {
    pub fn coeff_at(&self, u: f64, v: f64) -> Result<BdeCoeffs, GeometryError> {
        let (u, v) = self.chart.domain().wrap(u, v);
        let jet = self.chart.jet_at(u, v);
        let pg = point_geometry(&jet)?;
        match self.kind {
            BdeKind::NuPrincipal => {
                let nu = self.normal.at(&pg)?;
                let (en, fn_, gn) = nu_form_coeffs(&jet, nu)?;
                Ok(principal_coeffs(pg.e, pg.f, pg.g, en, fn_, gn))
            }
            BdeKind::Asymptotic => Ok(form_coeffs(&pg, asymptotic_frame_form(pg.ii))),
            BdeKind::MeanDirectional => Ok(form_coeffs(&pg, mean_frame_form(pg.ii))),
        }
    }
}

fn form_coeffs(pg: &PointGeometry, frame_form: Sym2) -> BdeCoeffs {
    let m = pg.frame_to_chart(frame_form);
    let q = pg.ii.magnitude();
    BdeCoeffs::from_form(m, (pg.e + pg.g) * q * q)
}

/// Real solutions `(du, dv)` of a BDE at a point, as unit vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Directions {
    None,
    /// A repeated root.
    Double((f64, f64)),
    Two((f64, f64), (f64, f64)),
    /// All coefficients vanish: every direction solves the equation.
    Degenerate,
}

impl Directions {
    pub fn count(&self) -> usize {
        match self {
            Directions::None | Directions::Degenerate => 0,
            Directions::Double(_) => 1,
            Directions::Two(..) => 2,
        }
    }
}

/// Relative size under which the discriminant counts as zero.
pub const DISCRIMINANT_TOL: f64 = 1e-14;

fn unit(x: f64, y: f64) -> (f64, f64) {
    let n = x.hypot(y);
    (x / n, y / n)
}

/// Roots of `A du² + B du dv + C dv² = 0`.
pub fn solve_directions(k: BdeCoeffs) -> Directions {
    let (a, b, c) = (k.a, k.b, k.c);
    let m = a.abs().max(b.abs()).max(c.abs());
    if m == 0.0 || !m.is_finite() {
        return Directions::Degenerate;
    }
    // work with coefficients of unit size
    let (a, b, c) = (a / m, b / m, c / m);
    let d = b * b - 4.0 * a * c;
    if d < -DISCRIMINANT_TOL {
        return Directions::None;
    }
    if d <= DISCRIMINANT_TOL {
        // double root: the form is ±(√|A| du ± √|C| dv)²
        return Directions::Double(if a.abs() >= c.abs() { unit(-b, 2.0 * a) } else { unit(2.0 * c, -b) });
    }
    if a == 0.0 && c == 0.0 {
        return Directions::Two((1.0, 0.0), (0.0, 1.0));
    }
    let sd = d.sqrt();
    let q = -0.5 * (b + b.signum() * sd);
    let q = if b == 0.0 { -0.5 * sd } else { q };
    if a.abs() >= c.abs() {
        // t = du/dv solves A t² + B t + C = 0
        let t1 = q / a;
        let t2 = c / q;
        Directions::Two(unit(t1, 1.0), unit(t2, 1.0))
    } else {
        // s = dv/du solves C s² + B s + A = 0
        let s1 = q / c;
        let s2 = a / q;
        Directions::Two(unit(1.0, s1), unit(1.0, s2))
    }
}
