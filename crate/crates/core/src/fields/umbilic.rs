//! ν-umbilics: zeros of the traceless part of the shape operator `S_ν`.
//!
//! Detection is a grid scan for cells where both components of
//! `U = ((S11 − S22)/2, S12)` change sign, followed by Newton refinement and
//! merging. The scan works on ranges of cell rows so callers can split it
//! across threads; [`find_umbilics`] is the serial composition.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Range;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeometryError;
use crate::fields::bde::{principal_coeffs, BdeCoeffs};
use crate::fields::trace::periodic_distance;
use crate::lorentz::{inner4, Vec2L, Vec4L};
use crate::quadratic::{shape_operator, Sym2};
use crate::surface::{point_geometry, Atlas, Domain, NormalField, SurfaceChart};
use crate::tol::{DEGENERATE_FRACTION, FD_STEP_REL, NEWTON_MAX_ITER, NEWTON_RESIDUAL, R_MERGE_REL, TAU_BDE_ZERO};

/// `S_ν` in the tangent frame, the traceless part and the principal BDE.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UmbilicSample {
    pub shape: Sym2,
    pub u_map: (f64, f64),
    pub bde: BdeCoeffs,
}

/// Evaluates `S_ν` at a parameter point.
pub fn umbilic_sample(chart: &dyn SurfaceChart, normal: NormalField, u: f64, v: f64) -> Result<UmbilicSample, GeometryError> {
    let (u, v) = chart.domain().wrap(u, v);
    let pg = point_geometry(&chart.jet_at(u, v))?;
    let nu = normal.at(&pg)?;
    let c1 = -inner4(nu, pg.frames.n2);
    let c2 = -inner4(nu, pg.frames.n1);
    let shape = shape_operator(pg.ii, Vec2L::from_null(c1, c2));
    let m = pg.frame_to_chart(shape);
    Ok(UmbilicSample {
        shape,
        u_map: (shape.half_diff(), shape.a12),
        bde: principal_coeffs(pg.e, pg.f, pg.g, m.a11, m.a12, m.a22),
    })
}

/// A uniform grid of cells over a chart domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanGrid {
    pub domain: Domain,
    pub nu: usize,
    pub nv: usize,
}

impl ScanGrid {
    pub fn new(domain: Domain, nu: usize, nv: usize) -> Self {
        ScanGrid { domain, nu: nu.max(1), nv: nv.max(1) }
    }

    pub fn cell_size(&self) -> (f64, f64) {
        let d = &self.domain;
        ((d.u1 - d.u0) / self.nu as f64, (d.v1 - d.v0) / self.nv as f64)
    }

    /// Corner `(i, j)`; index `nu` (or `nv`) is the far edge.
    pub fn corner(&self, i: usize, j: usize) -> (f64, f64) {
        let (du, dv) = self.cell_size();
        (self.domain.u0 + i as f64 * du, self.domain.v0 + j as f64 * dv)
    }

    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let (du, dv) = self.cell_size();
        (self.domain.u0 + (i as f64 + 0.5) * du, self.domain.v0 + (j as f64 + 0.5) * dv)
    }

    pub fn merge_radius(&self) -> f64 {
        R_MERGE_REL * self.domain.diameter()
    }

    /// Radius of the circle used for indices of refined points.
    pub fn index_radius(&self) -> f64 {
        let (du, dv) = self.cell_size();
        0.5 * du.min(dv)
    }

    fn fd_step(&self) -> f64 {
        FD_STEP_REL * self.domain.diameter()
    }
}

/// Result of scanning a range of cell rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScanChunk {
    pub rows: (usize, usize),
    pub candidates: Vec<(usize, usize)>,
    pub samples: usize,
    pub degenerate_samples: usize,
    pub failed_samples: usize,
}

fn sample_row(chart: &dyn SurfaceChart, normal: NormalField, grid: &ScanGrid, j: usize) -> Vec<Option<UmbilicSample>> {
    (0..=grid.nu)
        .map(|i| {
            let (u, v) = grid.corner(i, j);
            umbilic_sample(chart, normal, u, v).ok()
        })
        .collect()
}

fn brackets_zero(vals: [f64; 4]) -> bool {
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    lo <= 0.0 && hi >= 0.0
}

/// Scans cell rows `rows` for sign-change cells and counts degenerate samples.
///
/// Samples are counted on the lower corner row of each cell row, plus the
/// top row of a non-periodic domain, so disjoint row ranges count each grid
/// sample once.
pub fn scan_rows(chart: &dyn SurfaceChart, normal: NormalField, grid: &ScanGrid, rows: Range<usize>) -> ScanChunk {
    let mut out = ScanChunk { rows: (rows.start, rows.end), ..Default::default() };
    let last_row = grid.nv;
    let count_cols = if grid.domain.periodic_u { grid.nu } else { grid.nu + 1 };
    let count = |row: &[Option<UmbilicSample>], out: &mut ScanChunk| {
        for s in &row[..count_cols] {
            out.samples += 1;
            match s {
                Some(s) if s.bde.vanishes(TAU_BDE_ZERO) => out.degenerate_samples += 1,
                Some(_) => {}
                None => out.failed_samples += 1,
            }
        }
    };
    if rows.start >= rows.end {
        return out;
    }
    let mut lower = sample_row(chart, normal, grid, rows.start);
    for j in rows.clone() {
        let upper = sample_row(chart, normal, grid, j + 1);
        count(&lower, &mut out);
        if j + 1 == last_row && !grid.domain.periodic_v {
            count(&upper, &mut out);
        }
        for i in 0..grid.nu {
            let corners = [lower[i], lower[i + 1], upper[i], upper[i + 1]];
            if corners.iter().any(Option::is_none) {
                continue;
            }
            let c = corners.map(|s| s.unwrap().u_map);
            if brackets_zero(c.map(|x| x.0)) && brackets_zero(c.map(|x| x.1)) {
                out.candidates.push((i, j));
            }
        }
        lower = upper;
    }
    out
}

/// Row ranges of at most `rows_per_chunk` rows covering the grid.
pub fn row_chunks(grid: &ScanGrid, rows_per_chunk: usize) -> Vec<Range<usize>> {
    let step = rows_per_chunk.max(1);
    (0..grid.nv).step_by(step).map(|s| s..(s + step).min(grid.nv)).collect()
}

/// Pooled scan results.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScanSummary {
    pub candidates: Vec<(usize, usize)>,
    pub samples: usize,
    pub degenerate_samples: usize,
    pub failed_samples: usize,
}

impl ScanSummary {
    pub fn from_chunks(mut chunks: Vec<ScanChunk>) -> Self {
        chunks.sort_by_key(|c| c.rows);
        let mut s = ScanSummary::default();
        for c in chunks {
            s.candidates.extend(c.candidates);
            s.samples += c.samples;
            s.degenerate_samples += c.degenerate_samples;
            s.failed_samples += c.failed_samples;
        }
        s
    }

    pub fn degenerate_fraction(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.degenerate_samples as f64 / self.samples as f64
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_fraction() > DEGENERATE_FRACTION
    }
}

/// A Newton-converged zero of `U`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refined {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
}

fn jacobian_u(chart: &dyn SurfaceChart, normal: NormalField, p: (f64, f64), h: f64) -> Result<[[f64; 2]; 2], GeometryError> {
    let f = |u: f64, v: f64| umbilic_sample(chart, normal, u, v).map(|s| s.u_map);
    let (up, um) = (f(p.0 + h, p.1)?, f(p.0 - h, p.1)?);
    let (vp, vm) = (f(p.0, p.1 + h)?, f(p.0, p.1 - h)?);
    let k = 0.5 / h;
    Ok([[k * (up.0 - um.0), k * (vp.0 - vm.0)], [k * (up.1 - um.1), k * (vp.1 - vm.1)]])
}

/// Newton iteration from the center of a candidate cell.
///
/// Returns `None` when the iteration fails, leaves the neighbourhood of the
/// cell or ends outside the domain.
pub fn refine_candidate(chart: &dyn SurfaceChart, normal: NormalField, grid: &ScanGrid, cell: (usize, usize)) -> Option<Refined> {
    let start = grid.cell_center(cell.0, cell.1);
    let (du, dv) = grid.cell_size();
    let reach = 3.0 * du.hypot(dv);
    let h = grid.fd_step();
    let d = grid.domain;
    let mut p = start;
    for _ in 0..=NEWTON_MAX_ITER {
        let s = umbilic_sample(chart, normal, p.0, p.1).ok()?;
        let (f0, f1) = s.u_map;
        let res = f0.hypot(f1);
        if res <= NEWTON_RESIDUAL * s.shape.max_abs().max(1.0) {
            if !d.contains(p.0, p.1) {
                return None;
            }
            let (u, v) = d.wrap(p.0, p.1);
            return Some(Refined { u, v, residual: res });
        }
        let j = jacobian_u(chart, normal, p, h).ok()?;
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let sx = (j[1][1] * f0 - j[0][1] * f1) / det;
        let sy = (j[0][0] * f1 - j[1][0] * f0) / det;
        p = (p.0 - sx, p.1 - sy);
        if (p.0 - start.0).hypot(p.1 - start.1) > reach {
            return None;
        }
    }
    None
}

/// Darbouxian type of an umbilic of a principal line field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DarbouxType {
    D1,
    D2,
    D3,
    NonDarbouxian,
}

impl DarbouxType {
    pub fn as_str(self) -> &'static str {
        match self {
            DarbouxType::D1 => "D1",
            DarbouxType::D2 => "D2",
            DarbouxType::D3 => "D3",
            DarbouxType::NonDarbouxian => "non_darbouxian",
        }
    }

    /// Index implied by the type.
    pub fn index(self) -> Option<f64> {
        match self {
            DarbouxType::D1 | DarbouxType::D2 => Some(0.5),
            DarbouxType::D3 => Some(-0.5),
            DarbouxType::NonDarbouxian => None,
        }
    }
}

/// Relative size under which the Darbouxian determinants count as zero.
pub const DARBOUX_TOL: f64 = 1e-6;

/// Data behind a Darbouxian classification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarbouxInfo {
    pub kind: DarbouxType,
    /// Jacobian determinant of `U`; its sign is the sign of the index.
    pub det_ju: f64,
    /// Coefficients `(c3, c2, c1, c0)` of the separatrix cubic
    /// `c3 t1³ + c2 t1² t2 + c1 t1 t2² + c0 t2³`.
    pub cubic: [f64; 4],
    pub discriminant: f64,
}

/// Discriminant of the binary cubic `a t1³ + b t1² t2 + c t1 t2² + d t2³`.
/// Positive for three distinct real root lines, negative for one.
pub fn cubic_discriminant(k: [f64; 4]) -> f64 {
    let [a, b, c, d] = k;
    b * b * c * c - 4.0 * a * c * c * c - 4.0 * b * b * b * d - 27.0 * a * a * d * d + 18.0 * a * b * c * d
}

/// Classifies an umbilic from the linear parts of `U` and of the principal
/// BDE coefficients, taken by central differences of step `h`.
pub fn darboux_type(chart: &dyn SurfaceChart, normal: NormalField, p: (f64, f64), h: f64) -> Result<DarbouxInfo, GeometryError> {
    let f = |u: f64, v: f64| umbilic_sample(chart, normal, u, v);
    let s0 = f(p.0, p.1)?;
    let (up, um) = (f(p.0 + h, p.1)?, f(p.0 - h, p.1)?);
    let (vp, vm) = (f(p.0, p.1 + h)?, f(p.0, p.1 - h)?);
    let k = 0.5 / h;
    let ju = [
        [k * (up.u_map.0 - um.u_map.0), k * (vp.u_map.0 - vm.u_map.0)],
        [k * (up.u_map.1 - um.u_map.1), k * (vp.u_map.1 - vm.u_map.1)],
    ];
    let det_ju = ju[0][0] * ju[1][1] - ju[0][1] * ju[1][0];
    let d = |a: BdeCoeffs, b: BdeCoeffs| (k * (a.a - b.a), k * (a.b - b.b), k * (a.c - b.c));
    let (au, bu, cu) = d(up.bde, um.bde);
    let (av, bv, cv) = d(vp.bde, vm.bde);
    let cubic = [au, av + bu, bv + cu, cv];
    let discriminant = cubic_discriminant(cubic);
    let jmax = ju.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let cmax = cubic.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diam = chart.domain().diameter();
    let flat = jmax <= DARBOUX_TOL * s0.shape.max_abs() / diam;
    let kind = if flat || det_ju.abs() <= DARBOUX_TOL * jmax * jmax || discriminant.abs() <= DARBOUX_TOL * cmax.powi(4) {
        DarbouxType::NonDarbouxian
    } else if det_ju < 0.0 {
        DarbouxType::D3
    } else if discriminant < 0.0 {
        DarbouxType::D1
    } else {
        DarbouxType::D2
    };
    Ok(DarbouxInfo { kind, det_ju, cubic, discriminant })
}

fn wrap_angle(a: f64) -> f64 {
    let r = num_traits::Euclid::rem_euclid(&(a + PI), &(2.0 * PI)) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

/// Index of the principal line field at an isolated umbilic: half the
/// winding number of `U` along a circle of parameter radius `radius`.
///
/// Sampling is refined while some angle increment exceeds `π/2`; after that
/// the radius is halved a few times before giving up.
pub fn umbilic_index(chart: &dyn SurfaceChart, normal: NormalField, center: (f64, f64), radius: f64) -> Result<f64, GeometryError> {
    let mut r = radius;
    for _ in 0..4 {
        let mut n = 64;
        while n <= 1024 {
            if let Some(w) = winding(chart, normal, center, r, n) {
                let rounded = w.round();
                if (w - rounded).abs() < 0.1 {
                    return Ok(0.5 * rounded);
                }
            }
            n *= 2;
        }
        r *= 0.5;
    }
    Err(GeometryError::AmbiguousWinding { u: center.0, v: center.1 })
}

fn winding(chart: &dyn SurfaceChart, normal: NormalField, c: (f64, f64), r: f64, n: usize) -> Option<f64> {
    let mut angles = Vec::with_capacity(n);
    for k in 0..n {
        let t = 2.0 * PI * k as f64 / n as f64;
        let (s, co) = t.sin_cos();
        let x = umbilic_sample(chart, normal, c.0 + r * co, c.1 + r * s).ok()?.u_map;
        if x.0 == 0.0 && x.1 == 0.0 {
            return None;
        }
        angles.push(x.1.atan2(x.0));
    }
    let mut total = 0.0;
    for k in 0..n {
        let step = wrap_angle(angles[(k + 1) % n] - angles[k]);
        if step.abs() > 0.5 * PI {
            return None;
        }
        total += step;
    }
    Some(total / (2.0 * PI))
}

/// A refined, merged and classified umbilic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UmbilicPoint {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
    /// `None` when the winding stayed ambiguous.
    pub index: Option<f64>,
    pub darboux: DarbouxType,
    /// The Darbouxian type implies the same index as the winding count.
    pub agrees: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct UmbilicReport {
    /// Sorted by `(u, v)`. Empty when `degenerate` is set.
    pub umbilics: Vec<UmbilicPoint>,
    pub degenerate: bool,
    pub degenerate_fraction: f64,
    pub samples: usize,
    pub failed_samples: usize,
    pub candidates: usize,
}

/// Sorts refined zeros by `(u, v)` and drops those within the merge radius
/// of an earlier one.
pub fn merge_refined(grid: &ScanGrid, mut pts: Vec<Refined>) -> Vec<Refined> {
    pts.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.v.total_cmp(&b.v)));
    let r = grid.merge_radius();
    let mut kept: Vec<Refined> = Vec::new();
    for p in pts {
        if kept.iter().all(|k| periodic_distance(&grid.domain, (k.u, k.v), (p.u, p.v)) > r) {
            kept.push(p);
        }
    }
    kept
}

/// Index and Darbouxian type of a merged zero.
pub fn classify_umbilic(chart: &dyn SurfaceChart, normal: NormalField, grid: &ScanGrid, p: Refined) -> UmbilicPoint {
    let index = umbilic_index(chart, normal, (p.u, p.v), grid.index_radius()).ok();
    let darboux = darboux_type(chart, normal, (p.u, p.v), grid.fd_step())
        .map(|d| d.kind)
        .unwrap_or(DarbouxType::NonDarbouxian);
    let agrees = matches!((index, darboux.index()), (Some(a), Some(b)) if a == b);
    UmbilicPoint { u: p.u, v: p.v, residual: p.residual, index, darboux, agrees }
}

/// Builds the report from a pooled scan and its refined candidates.
pub fn finalize_umbilics(summary: &ScanSummary, umbilics: Vec<UmbilicPoint>) -> UmbilicReport {
    let degenerate = summary.is_degenerate();
    UmbilicReport {
        umbilics: if degenerate { Vec::new() } else { umbilics },
        degenerate,
        degenerate_fraction: summary.degenerate_fraction(),
        samples: summary.samples,
        failed_samples: summary.failed_samples,
        candidates: summary.candidates.len(),
    }
}

/// Serial umbilic detection on an `nu × nv` grid.
pub fn find_umbilics(chart: &dyn SurfaceChart, normal: NormalField, nu: usize, nv: usize) -> UmbilicReport {
    let grid = ScanGrid::new(chart.domain(), nu, nv);
    let summary = ScanSummary::from_chunks(alloc::vec![scan_rows(chart, normal, &grid, 0..grid.nv)]);
    if summary.is_degenerate() {
        return finalize_umbilics(&summary, Vec::new());
    }
    let refined = summary.candidates.iter().filter_map(|&c| refine_candidate(chart, normal, &grid, c)).collect();
    let merged = merge_refined(&grid, refined);
    let pts = merged.into_iter().map(|p| classify_umbilic(chart, normal, &grid, p)).collect();
    finalize_umbilics(&summary, pts)
}

/// An umbilic located on an atlas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtlasUmbilic {
    pub chart: usize,
    pub point: UmbilicPoint,
    pub ambient: Vec4L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PoincareHopfStatus {
    /// Indices sum to the Euler characteristic.
    Ok,
    Mismatch,
    /// Some chart reported the degenerate flag.
    Degenerate,
    /// Some umbilic has an undetermined index.
    Ambiguous,
}

impl PoincareHopfStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PoincareHopfStatus::Ok => "ok",
            PoincareHopfStatus::Mismatch => "mismatch",
            PoincareHopfStatus::Degenerate => "degenerate",
            PoincareHopfStatus::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoincareHopfReport {
    pub status: PoincareHopfStatus,
    pub index_sum: f64,
    pub euler_characteristic: i32,
    pub umbilics: Vec<AtlasUmbilic>,
}

/// Merges per-chart reports (one per atlas chart, in order) by ambient
/// position and compares the index sum with the Euler characteristic.
pub fn poincare_hopf_from_reports(atlas: &Atlas, reports: &[UmbilicReport]) -> PoincareHopfReport {
    let r = R_MERGE_REL * atlas.ambient_diameter;
    let mut all: Vec<AtlasUmbilic> = Vec::new();
    let mut degenerate = false;
    for (ci, (chart, rep)) in atlas.charts.iter().zip(reports).enumerate() {
        degenerate |= rep.degenerate;
        for p in &rep.umbilics {
            let ambient = chart.point(p.u, p.v);
            if all.iter().all(|a| (a.ambient - ambient).magnitude() > r) {
                all.push(AtlasUmbilic { chart: ci, point: *p, ambient });
            }
        }
    }
    let ambiguous = all.iter().any(|a| a.point.index.is_none());
    // an empty f64 sum is -0.0
    let index_sum: f64 = all.iter().filter_map(|a| a.point.index).sum::<f64>() + 0.0;
    let chi = atlas.euler_characteristic;
    let status = if degenerate {
        PoincareHopfStatus::Degenerate
    } else if ambiguous {
        PoincareHopfStatus::Ambiguous
    } else if (index_sum - chi as f64).abs() < 1e-9 {
        PoincareHopfStatus::Ok
    } else {
        PoincareHopfStatus::Mismatch
    };
    PoincareHopfReport { status, index_sum, euler_characteristic: chi, umbilics: all }
}

/// Serial umbilic detection over every chart of an atlas.
pub fn poincare_hopf_check(atlas: &Atlas, normal: NormalField, nu: usize, nv: usize) -> PoincareHopfReport {
    let reports: Vec<UmbilicReport> = atlas.charts.iter().map(|c| find_umbilics(c, normal, nu, nv)).collect();
    poincare_hopf_from_reports(atlas, &reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{AnalyticChart, Graph4};
    use approx::assert_abs_diff_eq;

    fn graph(b21: f64, b03: f64) -> AnalyticChart {
        let g = Graph4 { b21, b03, ..Default::default() };
        AnalyticChart::graph4(g, 0.5)
    }

    const N1: NormalField = NormalField::Null { n1: 1.0, n2: 0.0 };

    #[test]
    fn engineered_darboux_types() {
        for (b03, want, idx) in [(0.0, DarbouxType::D3, -0.5), (3.0, DarbouxType::D1, 0.5), (1.5, DarbouxType::D2, 0.5)] {
            let ch = graph(1.0, b03);
            let info = darboux_type(&ch, N1, (0.0, 0.0), 1e-5).unwrap();
            assert_eq!(info.kind, want, "{info:?}");
            assert_eq!(umbilic_index(&ch, N1, (0.0, 0.0), 0.1).unwrap(), idx);
        }
        let flat = graph(0.0, 0.0);
        assert_eq!(darboux_type(&flat, N1, (0.0, 0.0), 1e-5).unwrap().kind, DarbouxType::NonDarbouxian);
    }

    #[test]
    fn cubic_discriminant_sign() {
        // t1(t1² − t2²): three real lines; t1(t1² + t2²): one
        assert!(cubic_discriminant([1.0, 0.0, -1.0, 0.0]) > 0.0);
        assert!(cubic_discriminant([1.0, 0.0, 1.0, 0.0]) < 0.0);
    }

    #[test]
    fn engineered_umbilic_is_found() {
        let ch = graph(1.0, 1.5);
        let rep = find_umbilics(&ch, N1, 32, 32);
        assert!(!rep.degenerate);
        assert_eq!(rep.umbilics.len(), 1, "{rep:?}");
        let p = rep.umbilics[0];
        assert_abs_diff_eq!(p.u, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p.v, 0.0, epsilon = 1e-9);
        assert_eq!(p.darboux, DarbouxType::D2);
        assert!(p.agrees);
    }

    #[test]
    fn sphere_is_degenerate() {
        let ch = AnalyticChart::sphere(1.5);
        let rep = find_umbilics(&ch, NormalField::LIGHTCONE, 24, 24);
        assert!(rep.degenerate);
        assert!(rep.umbilics.is_empty());
    }

    #[test]
    fn chunked_scan_matches_serial() {
        let ch = AnalyticChart::ellipsoid(3.0, 2.0, 1.0);
        let grid = ScanGrid::new(ch.domain(), 40, 40);
        let whole = ScanSummary::from_chunks(alloc::vec![scan_rows(&ch, NormalField::LIGHTCONE, &grid, 0..40)]);
        let parts = row_chunks(&grid, 7).into_iter().rev().map(|r| scan_rows(&ch, NormalField::LIGHTCONE, &grid, r)).collect();
        assert_eq!(whole, ScanSummary::from_chunks(parts));
        assert_eq!(whole.samples, 41 * 40);
    }
}
