//! The `point`, `field`, `umbilics` and `lines` commands.
//!
//! Each command computes everything first (possibly on the rayon pool) and
//! then writes its files from the calling thread in a fixed order.

use std::io::Write;
use std::path::PathBuf;

use rayon::ThreadPool;
use serde::Serialize;
use spacelike_core::ellipse::{origin_position, EllipseCase};
use spacelike_core::fields::umbilic::poincare_hopf_from_reports;
use spacelike_core::fields::{
    adapted_direction_forms, asymptotic_angle, asymptotic_bde, integrate_line, mean_directional_bde, principal_bde,
    solve_directions, wong_residual, Bde, BdeCoeffs, Directions, Polyline, UmbilicReport,
};
use spacelike_core::surface::{analyze_point, Domain, SurfaceChart};
use spacelike_core::{GeometryError, Vec2L};

use crate::config::{Format, LineKind, RunConfig};
use crate::error::CliError;
use crate::output::{ensure_dir, fmt_f64, fmt_opt, to_json, write_text, Csv};
use crate::parallel::{find_umbilics_par, ordered_map};

fn pair(v: Vec2L) -> [f64; 2] {
    [v.c1, v.c2]
}

/// Angle in `[0, π)` of a line direction.
fn line_angle(d: (f64, f64)) -> f64 {
    let a = d.1.atan2(d.0);
    if a < 0.0 {
        a + std::f64::consts::PI
    } else if a >= std::f64::consts::PI {
        a - std::f64::consts::PI
    } else {
        a
    }
}

fn direction_angles(d: Directions) -> Vec<f64> {
    let mut out = match d {
        Directions::Two(a, b) => vec![line_angle(a), line_angle(b)],
        Directions::Double(a) => vec![line_angle(a)],
        Directions::None | Directions::Degenerate => Vec::new(),
    };
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Debug, Serialize)]
pub struct InvariantsOut {
    pub h: [f64; 2],
    pub h_norm2: f64,
    pub k: f64,
    pub k_n: f64,
    pub delta: f64,
    pub zeta: Option<f64>,
    pub a2: Option<f64>,
    pub b2: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct EllipseOut {
    /// `ellipse`, `segment` or `point`.
    pub case: &'static str,
    pub center: [f64; 2],
    pub a: Option<f64>,
    pub b: Option<f64>,
    /// Spacelike and timelike axis directions.
    pub axes: Option<[[f64; 2]; 2]>,
    pub half_vector: Option<[f64; 2]>,
    pub segment_character: Option<&'static str>,
    pub origin: &'static str,
}

#[derive(Debug, Serialize)]
pub struct DirectionsOut {
    /// Angles in `[0, π)` from `e1` of the asymptotic lines.
    pub asymptotic: Vec<f64>,
    /// Angles in `[0, π)` from `e1` of the mean directionally curved lines.
    pub mean: Vec<f64>,
    /// Angle in `[0, π/2]` between the asymptotic lines.
    pub asymptotic_angle: Option<f64>,
    /// `4Δ/K_N²`, the predicted `tan²` of that angle.
    pub wong_prediction: Option<f64>,
    pub wong_residual: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct PointOut {
    pub chart: String,
    pub u: f64,
    pub v: f64,
    pub metric: [f64; 3],
    pub class: &'static str,
    pub invariants: InvariantsOut,
    pub ellipse: EllipseOut,
    pub directions: DirectionsOut,
}

pub fn point_report(chart: &dyn SurfaceChart, u: f64, v: f64) -> Result<PointOut, GeometryError> {
    let rep = analyze_point(chart, u, v)?;
    let q = rep.geometry.ii;
    let inv = rep.invariants;
    let scale = q.magnitude();
    let ellipse = {
        let (case, a, b, axes, half_vector, segment_character) = match rep.ellipse.case {
            EllipseCase::NonDegenerate { frame, a, b } => {
                ("ellipse", Some(a), Some(b), Some([pair(frame.f1), pair(frame.f2)]), None, None)
            }
            EllipseCase::Segment { xi, character } => ("segment", None, None, None, Some(pair(xi)), Some(character.as_str())),
            EllipseCase::Point => ("point", None, None, None, None, None),
        };
        EllipseOut {
            case,
            center: pair(rep.ellipse.center),
            a,
            b,
            axes,
            half_vector,
            segment_character,
            origin: origin_position(q, scale).as_str(),
        }
    };
    let directions = match adapted_direction_forms(q) {
        Ok(f) => {
            let asymptotic = direction_angles(solve_directions(BdeCoeffs::from_form(f.delta, 0.0)));
            let mean = direction_angles(solve_directions(BdeCoeffs::from_form(f.mean, 0.0)));
            let k_n = q.k_n();
            let note = asymptotic.is_empty().then(|| "no real asymptotic directions".to_string());
            DirectionsOut {
                asymptotic,
                mean,
                asymptotic_angle: asymptotic_angle(q),
                wong_prediction: (k_n != 0.0).then(|| 4.0 * q.delta() / (k_n * k_n)),
                wong_residual: wong_residual(q),
                note,
            }
        }
        Err(e) => DirectionsOut {
            asymptotic: Vec::new(),
            mean: Vec::new(),
            asymptotic_angle: None,
            wong_prediction: None,
            wong_residual: None,
            note: Some(e.to_string()),
        },
    };
    Ok(PointOut {
        chart: chart.name().to_string(),
        u: rep.u,
        v: rep.v,
        metric: [rep.geometry.e, rep.geometry.f, rep.geometry.g],
        class: rep.class.as_str(),
        invariants: InvariantsOut {
            h: pair(inv.h),
            h_norm2: inv.h_norm2,
            k: inv.k,
            k_n: inv.k_n,
            delta: inv.delta,
            zeta: inv.zeta,
            a2: inv.a2,
            b2: inv.b2,
            alpha: inv.alpha,
            beta: inv.beta,
        },
        ellipse,
        directions,
    })
}

/// Prints the point report as JSON.
pub fn cmd_point(cfg: &RunConfig, u: f64, v: f64, out: &mut dyn Write) -> Result<(), CliError> {
    let surface = cfg.surface.build();
    let rep = point_report(surface.primary(), u, v)?;
    out.write_all(to_json(&rep)?.as_bytes())?;
    Ok(())
}

/// Sample coordinate `i` of `n` along `[a, b]`; periodic directions omit `b`.
fn sample_coord(a: f64, b: f64, i: usize, n: usize, periodic: bool) -> f64 {
    if periodic {
        a + (b - a) * i as f64 / n as f64
    } else if n == 1 {
        0.5 * (a + b)
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

/// Parameter points of an `nu × nv` field grid, `u` outer.
pub fn field_points(d: &Domain, nu: usize, nv: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            out.push((sample_coord(d.u0, d.u1, i, nu, d.periodic_u), sample_coord(d.v0, d.v1, j, nv, d.periodic_v)));
        }
    }
    out
}

pub const FIELD_HEADER: [&str; 11] = ["u", "v", "H1", "H2", "H_norm2", "K", "K_N", "Delta", "class", "a2", "b2"];

/// One field sample; `values` is `None` where the geometry failed.
#[derive(Debug, Serialize)]
pub struct FieldRow {
    pub u: f64,
    pub v: f64,
    #[serde(rename = "H1")]
    pub h1: Option<f64>,
    #[serde(rename = "H2")]
    pub h2: Option<f64>,
    #[serde(rename = "H_norm2")]
    pub h_norm2: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    #[serde(rename = "K_N")]
    pub k_n: Option<f64>,
    #[serde(rename = "Delta")]
    pub delta: Option<f64>,
    pub class: String,
    pub a2: Option<f64>,
    pub b2: Option<f64>,
}

pub fn field_rows(chart: &dyn SurfaceChart, nu: usize, nv: usize) -> Vec<FieldRow> {
    let pts = field_points(&chart.domain(), nu, nv);
    ordered_map(pts.len(), |k| {
        let (u, v) = pts[k];
        match analyze_point(chart, u, v) {
            Ok(r) => {
                let i = r.invariants;
                FieldRow {
                    u,
                    v,
                    h1: Some(i.h.c1),
                    h2: Some(i.h.c2),
                    h_norm2: Some(i.h_norm2),
                    k: Some(i.k),
                    k_n: Some(i.k_n),
                    delta: Some(i.delta),
                    class: r.class.as_str().to_string(),
                    a2: i.a2,
                    b2: i.b2,
                }
            }
            Err(e) => FieldRow {
                u,
                v,
                h1: None,
                h2: None,
                h_norm2: None,
                k: None,
                k_n: None,
                delta: None,
                class: match e {
                    GeometryError::NotSpacelike { .. } => "not_spacelike".into(),
                    _ => "error".into(),
                },
                a2: None,
                b2: None,
            },
        }
    })
}

pub fn field_csv(rows: &[FieldRow]) -> String {
    let mut csv = Csv::new(&FIELD_HEADER);
    for r in rows {
        csv.row(&[
            fmt_f64(r.u),
            fmt_f64(r.v),
            fmt_opt(r.h1),
            fmt_opt(r.h2),
            fmt_opt(r.h_norm2),
            fmt_opt(r.k),
            fmt_opt(r.k_n),
            fmt_opt(r.delta),
            r.class.clone(),
            fmt_opt(r.a2),
            fmt_opt(r.b2),
        ]);
    }
    csv.as_str().to_string()
}

/// Writes `field.csv` or `field.json` and returns its path.
pub fn cmd_field(cfg: &RunConfig, pool: &ThreadPool, out: &mut dyn Write) -> Result<PathBuf, CliError> {
    let surface = cfg.surface.build();
    let rows = pool.install(|| field_rows(surface.primary(), cfg.grid.nu, cfg.grid.nv));
    ensure_dir(&cfg.output.dir)?;
    let path = match cfg.output.format {
        Format::Csv => {
            let p = cfg.output.dir.join("field.csv");
            write_text(&p, &field_csv(&rows))?;
            p
        }
        Format::Json => {
            let p = cfg.output.dir.join("field.json");
            write_text(&p, &to_json(&rows)?)?;
            p
        }
    };
    let failed = rows.iter().filter(|r| r.k.is_none()).count();
    writeln!(out, "field: {} samples ({} failed) -> {}", rows.len(), failed, path.display())?;
    Ok(path)
}

#[derive(Debug, Serialize)]
pub struct UmbilicOut {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
    pub index: Option<f64>,
    pub darboux: &'static str,
    pub agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct ChartUmbilicsOut {
    pub chart: String,
    pub degenerate: bool,
    pub degenerate_fraction: f64,
    pub samples: usize,
    pub failed_samples: usize,
    pub candidates: usize,
    pub umbilics: Vec<UmbilicOut>,
}

#[derive(Debug, Serialize)]
pub struct AtlasUmbilicOut {
    pub chart: usize,
    pub u: f64,
    pub v: f64,
    pub ambient: [f64; 4],
    pub index: Option<f64>,
    pub darboux: &'static str,
}

#[derive(Debug, Serialize)]
pub struct PoincareHopfOut {
    pub status: &'static str,
    pub count: usize,
    pub index_sum: f64,
    pub euler_characteristic: i32,
    /// `count ≥ 2|χ|`, expected of a lightcone configuration.
    pub count_bound_holds: bool,
    pub umbilics: Vec<AtlasUmbilicOut>,
}

#[derive(Debug, Serialize)]
pub struct UmbilicsOut {
    pub surface: String,
    pub grid: [usize; 2],
    pub charts: Vec<ChartUmbilicsOut>,
    pub poincare_hopf: Option<PoincareHopfOut>,
}

fn chart_out(chart: &dyn SurfaceChart, rep: &UmbilicReport) -> ChartUmbilicsOut {
    ChartUmbilicsOut {
        chart: chart.name().to_string(),
        degenerate: rep.degenerate,
        degenerate_fraction: rep.degenerate_fraction,
        samples: rep.samples,
        failed_samples: rep.failed_samples,
        candidates: rep.candidates,
        umbilics: rep
            .umbilics
            .iter()
            .map(|p| UmbilicOut {
                u: p.u,
                v: p.v,
                residual: p.residual,
                index: p.index,
                darboux: p.darboux.as_str(),
                agrees: p.agrees,
            })
            .collect(),
    }
}

pub fn umbilics_report(cfg: &RunConfig) -> UmbilicsOut {
    let surface = cfg.surface.build();
    let normal = cfg.field.normal_field();
    let (nu, nv) = (cfg.grid.nu, cfg.grid.nv);
    let reports: Vec<UmbilicReport> = surface.charts.iter().map(|c| find_umbilics_par(c, normal, nu, nv)).collect();
    let charts = surface.charts.iter().zip(&reports).map(|(c, r)| chart_out(c, r)).collect();
    let poincare_hopf = surface.atlas.as_ref().map(|atlas| {
        let ph = poincare_hopf_from_reports(atlas, &reports);
        PoincareHopfOut {
            status: ph.status.as_str(),
            count: ph.umbilics.len(),
            index_sum: ph.index_sum,
            euler_characteristic: ph.euler_characteristic,
            count_bound_holds: ph.umbilics.len() as i64 >= 2 * i64::from(ph.euler_characteristic.abs()),
            umbilics: ph
                .umbilics
                .iter()
                .map(|a| AtlasUmbilicOut {
                    chart: a.chart,
                    u: a.point.u,
                    v: a.point.v,
                    ambient: a.ambient.to_array(),
                    index: a.point.index,
                    darboux: a.point.darboux.as_str(),
                })
                .collect(),
        }
    });
    UmbilicsOut { surface: surface.primary().name().to_string(), grid: [nu, nv], charts, poincare_hopf }
}

pub fn umbilics_csv(rep: &UmbilicsOut) -> String {
    let mut csv = Csv::new(&["chart", "u", "v", "residual", "index", "darboux", "agrees"]);
    for c in &rep.charts {
        for p in &c.umbilics {
            csv.row(&[
                c.chart.clone(),
                fmt_f64(p.u),
                fmt_f64(p.v),
                fmt_f64(p.residual),
                fmt_opt(p.index),
                p.darboux.to_string(),
                p.agrees.to_string(),
            ]);
        }
    }
    csv.as_str().to_string()
}

/// Writes `umbilics.json` (and `umbilics.csv` for the csv format) and
/// prints a summary.
pub fn cmd_umbilics(cfg: &RunConfig, pool: &ThreadPool, out: &mut dyn Write) -> Result<UmbilicsOut, CliError> {
    let rep = pool.install(|| umbilics_report(cfg));
    ensure_dir(&cfg.output.dir)?;
    write_text(&cfg.output.dir.join("umbilics.json"), &to_json(&rep)?)?;
    if cfg.output.format == Format::Csv {
        write_text(&cfg.output.dir.join("umbilics.csv"), &umbilics_csv(&rep))?;
    }
    for c in &rep.charts {
        if c.degenerate {
            writeln!(out, "{}: degenerate (fraction {})", c.chart, fmt_f64(c.degenerate_fraction))?;
        } else {
            writeln!(out, "{}: {} umbilics from {} candidate cells", c.chart, c.umbilics.len(), c.candidates)?;
        }
    }
    if let Some(ph) = &rep.poincare_hopf {
        writeln!(
            out,
            "poincare-hopf: {} umbilics, index sum {}, euler characteristic {}, status {}",
            ph.count,
            fmt_f64(ph.index_sum),
            ph.euler_characteristic,
            ph.status
        )?;
    }
    Ok(rep)
}

/// A traced curve in unwrapped parameter coordinates.
pub type Curve = Vec<(f64, f64)>;

#[derive(Debug, Serialize)]
pub struct TraceOut {
    pub stop: &'static str,
    pub length: f64,
    pub points: usize,
}

#[derive(Debug, Serialize)]
pub struct LineOut {
    pub seed: [f64; 2],
    pub branch: &'static str,
    pub file: Option<String>,
    pub forward: Option<TraceOut>,
    pub backward: Option<TraceOut>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct LinesOut {
    pub kind: &'static str,
    pub lines: Vec<LineOut>,
}

fn trace_out(p: &Polyline) -> TraceOut {
    TraceOut { stop: p.stop.as_str(), length: p.length, points: p.points.len() }
}

fn make_bde<'a>(chart: &'a dyn SurfaceChart, cfg: &RunConfig) -> Bde<'a> {
    match cfg.field.kind {
        LineKind::Principal => principal_bde(chart, cfg.field.normal_field()),
        LineKind::Asymptotic => asymptotic_bde(chart),
        LineKind::Mean => mean_directional_bde(chart),
    }
}

/// Traces every seed both ways and joins the halves into one curve.
/// Returns the per-seed notes and the curves, in seed order.
pub fn trace_seeds(cfg: &RunConfig, chart: &dyn SurfaceChart) -> (LinesOut, Vec<Option<Curve>>) {
    let domain = chart.domain();
    let avoid = if cfg.field.kind == LineKind::Principal {
        find_umbilics_par(chart, cfg.field.normal_field(), cfg.grid.nu, cfg.grid.nv)
            .umbilics
            .iter()
            .map(|p| (p.u, p.v))
            .collect()
    } else {
        Vec::new()
    };
    let fwd = cfg.trace_options(domain.diameter(), avoid);
    let back = spacelike_core::fields::TraceOptions { backward: true, ..fwd.clone() };
    let bde = make_bde(chart, cfg);
    let traced = ordered_map(cfg.seeds.len(), |k| {
        let s = cfg.seeds[k];
        let seed = (s.u, s.v);
        let f = integrate_line(&bde, seed, s.branch.into(), &fwd)?;
        let b = integrate_line(&bde, seed, s.branch.into(), &back)?;
        Ok::<_, GeometryError>((f, b))
    });
    let mut lines = Vec::new();
    let mut curves = Vec::new();
    for (k, (s, t)) in cfg.seeds.iter().zip(traced).enumerate() {
        let branch = spacelike_core::fields::Branch::from(s.branch).as_str();
        match t {
            Ok((f, b)) => {
                let mut pts: Vec<(f64, f64)> = b.points.iter().rev().copied().collect();
                pts.extend(f.points.iter().skip(1));
                lines.push(LineOut {
                    seed: [s.u, s.v],
                    branch,
                    file: Some(format!("line_{k:03}.csv")),
                    forward: Some(trace_out(&f)),
                    backward: Some(trace_out(&b)),
                    error: None,
                });
                curves.push(Some(pts));
            }
            Err(e) => {
                lines.push(LineOut { seed: [s.u, s.v], branch, file: None, forward: None, backward: None, error: Some(e.to_string()) });
                curves.push(None);
            }
        }
    }
    (LinesOut { kind: spacelike_core::fields::BdeKind::from(cfg.field.kind).as_str(), lines }, curves)
}

/// Writes one `line_NNN.csv` per traced seed plus `lines.json`. Seeds that
/// fail are reported and skipped. No seeds, no files.
pub fn cmd_lines(
    cfg: &RunConfig,
    pool: &ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<LinesOut, CliError> {
    if cfg.seeds.is_empty() {
        writeln!(out, "lines: no seeds")?;
        return Ok(LinesOut { kind: spacelike_core::fields::BdeKind::from(cfg.field.kind).as_str(), lines: Vec::new() });
    }
    let surface = cfg.surface.build();
    let (rep, curves) = pool.install(|| trace_seeds(cfg, surface.primary()));
    ensure_dir(&cfg.output.dir)?;
    for (line, curve) in rep.lines.iter().zip(&curves) {
        match (curve, &line.file) {
            (Some(pts), Some(name)) => {
                let mut csv = Csv::new(&["u", "v"]);
                for &(u, v) in pts {
                    csv.push_point(u, v);
                }
                write_text(&cfg.output.dir.join(name), csv.as_str())?;
            }
            _ => writeln!(
                err,
                "seed ({}, {}): {}",
                fmt_f64(line.seed[0]),
                fmt_f64(line.seed[1]),
                line.error.as_deref().unwrap_or("failed")
            )?,
        }
    }
    write_text(&cfg.output.dir.join("lines.json"), &to_json(&rep)?)?;
    let ok = curves.iter().filter(|c| c.is_some()).count();
    writeln!(out, "lines: {ok} of {} seeds traced -> {}", curves.len(), cfg.output.dir.display())?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spacelike_core::surface::AnalyticChart;

    #[test]
    fn field_grid_shape() {
        let t = AnalyticChart::torus(2.0, 1.0);
        let pts = field_points(&t.domain(), 4, 3);
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[0], (t.domain().u0, t.domain().v0));
        assert!(pts.iter().all(|&(u, v)| u < t.domain().u1 && v < t.domain().v1));
        let p = AnalyticChart::plane(1.0);
        let pts = field_points(&p.domain(), 3, 3);
        assert_eq!(pts[8], (1.0, 1.0));
    }

    #[test]
    fn angles_are_folded() {
        assert_eq!(line_angle((1.0, 0.0)), 0.0);
        assert!((line_angle((-1.0, -1.0)) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((line_angle((0.0, -1.0)) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
