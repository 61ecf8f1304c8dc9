//! Integral curves of a BDE line field.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeometryError;
use crate::fields::bde::{solve_directions, Bde, Directions};
use crate::surface::Domain;
use crate::tol::TRACE_TOL;

/// Which of the two solution directions at the seed to follow.
///
/// Directions are ordered by their angle in `[0, π)` measured in the
/// parameter plane; `First` is the smaller angle. The initial orientation is
/// the one with that angle, or its opposite when `backward` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::First => "first",
            Branch::Second => "second",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopReason {
    MaxLength,
    DomainBoundary,
    /// Close to a listed singular point or to a zero of the coefficients.
    Singularity,
    /// The two directions merge or stop being real.
    Discriminant,
    StepUnderflow,
    MaxPoints,
    GeometryFailure,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::MaxLength => "max_length",
            StopReason::DomainBoundary => "domain_boundary",
            StopReason::Singularity => "singularity",
            StopReason::Discriminant => "discriminant",
            StopReason::StepUnderflow => "step_underflow",
            StopReason::MaxPoints => "max_points",
            StopReason::GeometryFailure => "geometry_failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceOptions {
    /// Parameter-plane length after which tracing stops.
    pub max_length: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Local error allowed per unit of length.
    pub tol: f64,
    pub backward: bool,
    /// Stop within this distance of any point of `avoid`.
    pub r_stop: f64,
    pub avoid: Vec<(f64, f64)>,
    /// Stop where all coefficients fall below this fraction of their scale.
    pub coeff_stop: f64,
    /// Stop where `(B² − 4AC)/max(|A|,|B|,|C|)²` falls below this.
    pub disc_stop: f64,
    /// Largest heading change accepted in one step.
    pub max_turn: f64,
    pub max_points: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            max_length: 1.0,
            initial_step: 1e-2,
            min_step: 1e-9,
            max_step: 5e-2,
            tol: TRACE_TOL,
            backward: false,
            r_stop: 0.0,
            avoid: Vec::new(),
            coeff_stop: 1e-6,
            disc_stop: 1e-10,
            max_turn: PI / 8.0,
            max_points: 200_000,
        }
    }
}

/// Points of a traced curve in unwrapped parameter coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub length: f64,
    pub branch: Branch,
    pub stop: StopReason,
}

/// Parameter distance, measured across periodic seams by the shortest way.
pub fn periodic_distance(d: &Domain, a: (f64, f64), b: (f64, f64)) -> f64 {
    let fold = |x: f64, w: f64, periodic: bool| {
        if periodic {
            let r = num_traits::Euclid::rem_euclid(&x, &w);
            r.min(w - r)
        } else {
            x.abs()
        }
    };
    let du = fold(a.0 - b.0, d.u1 - d.u0, d.periodic_u);
    let dv = fold(a.1 - b.1, d.v1 - d.v0, d.periodic_v);
    du.hypot(dv)
}

enum Probe {
    Dir((f64, f64)),
    Stop(StopReason),
}

struct Field<'a, 'b> {
    bde: &'a Bde<'b>,
    opts: &'a TraceOptions,
}

impl Field<'_, '_> {
    fn roots(&self, p: (f64, f64)) -> Result<Directions, StopReason> {
        let k = self.bde.coeff_at(p.0, p.1).map_err(|_| StopReason::GeometryFailure)?;
        if k.vanishes(self.opts.coeff_stop) {
            return Err(StopReason::Singularity);
        }
        let m = k.max_abs();
        if k.discriminant() <= self.opts.disc_stop * m * m {
            return Err(StopReason::Discriminant);
        }
        Ok(solve_directions(k))
    }

    /// Unit direction at `p` on the branch continuing `heading`.
    fn dir(&self, p: (f64, f64), heading: (f64, f64)) -> Probe {
        let d = match self.roots(p) {
            Ok(Directions::Two(d1, d2)) => {
                let c1 = d1.0 * heading.0 + d1.1 * heading.1;
                let c2 = d2.0 * heading.0 + d2.1 * heading.1;
                if c1.abs() >= c2.abs() {
                    (d1, c1)
                } else {
                    (d2, c2)
                }
            }
            Ok(Directions::Double(d)) => (d, d.0 * heading.0 + d.1 * heading.1),
            Ok(_) => return Probe::Stop(StopReason::Discriminant),
            Err(r) => return Probe::Stop(r),
        };
        let ((x, y), c) = d;
        Probe::Dir(if c < 0.0 { (-x, -y) } else { (x, y) })
    }

    fn rk4(&self, p: (f64, f64), k1: (f64, f64), h: f64, heading: (f64, f64)) -> Result<(f64, f64), StopReason> {
        let at = |q: (f64, f64)| match self.dir(q, heading) {
            Probe::Dir(d) => Ok(d),
            Probe::Stop(r) => Err(r),
        };
        let k2 = at((p.0 + 0.5 * h * k1.0, p.1 + 0.5 * h * k1.1))?;
        let k3 = at((p.0 + 0.5 * h * k2.0, p.1 + 0.5 * h * k2.1))?;
        let k4 = at((p.0 + h * k3.0, p.1 + h * k3.1))?;
        Ok((
            p.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            p.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        ))
    }
}

fn angle_in_half_turn(d: (f64, f64)) -> f64 {
    let a = d.1.atan2(d.0);
    if a < 0.0 {
        a + PI
    } else if a >= PI {
        a - PI
    } else {
        a
    }
}

/// Initial unit direction of a branch at the seed.
pub fn seed_direction(bde: &Bde, seed: (f64, f64), branch: Branch, opts: &TraceOptions) -> Result<(f64, f64), GeometryError> {
    let (u, v) = seed;
    let domain = bde.chart.domain();
    if !(u.is_finite() && v.is_finite() && domain.contains(u, v)) {
        return Err(GeometryError::OutsideDomain { u, v });
    }
    if opts.avoid.iter().any(|&a| periodic_distance(&domain, a, seed) <= opts.r_stop) {
        return Err(GeometryError::SeedAtSingularity { u, v });
    }
    let k = bde.coeff_at(u, v)?;
    if k.vanishes(opts.coeff_stop) {
        return Err(GeometryError::SeedAtSingularity { u, v });
    }
    let d = match solve_directions(k) {
        Directions::Two(d1, d2) => {
            let (a1, a2) = (angle_in_half_turn(d1), angle_in_half_turn(d2));
            let pick = match branch {
                Branch::First => a1.min(a2),
                Branch::Second => a1.max(a2),
            };
            (pick.cos(), pick.sin())
        }
        Directions::Double(d) => {
            let a = angle_in_half_turn(d);
            (a.cos(), a.sin())
        }
        Directions::None => return Err(GeometryError::NoRealDirections { u, v }),
        Directions::Degenerate => return Err(GeometryError::SeedAtSingularity { u, v }),
    };
    Ok(if opts.backward { (-d.0, -d.1) } else { d })
}

/// Traces the line of `bde` through `seed` with adaptive RK4.
///
/// The step is controlled by step doubling. A step is also rejected when the
/// heading turns by more than `max_turn`, which keeps the branch choice
/// continuous.
pub fn integrate_line(bde: &Bde, seed: (f64, f64), branch: Branch, opts: &TraceOptions) -> Result<Polyline, GeometryError> {
    let mut heading = seed_direction(bde, seed, branch, opts)?;
    let domain = bde.chart.domain();
    let field = Field { bde, opts };
    let mut points = Vec::new();
    points.push(seed);
    let mut p = seed;
    let mut length = 0.0;
    let mut h = opts.initial_step.min(opts.max_step);
    let stop = loop {
        // a remainder below min_step is round-off in the summed length
        if length >= opts.max_length - opts.min_step {
            break StopReason::MaxLength;
        }
        if points.len() >= opts.max_points {
            break StopReason::MaxPoints;
        }
        if h < opts.min_step {
            break StopReason::StepUnderflow;
        }
        let h_try = h.min(opts.max_length - length);
        let k1 = match field.dir(p, heading) {
            Probe::Dir(d) => d,
            Probe::Stop(r) => break r,
        };
        let full = field.rk4(p, k1, h_try, heading);
        let half = field.rk4(p, k1, 0.5 * h_try, heading).and_then(|m| match field.dir(m, heading) {
            Probe::Dir(km) => field.rk4(m, km, 0.5 * h_try, heading),
            Probe::Stop(r) => Err(r),
        });
        let (full, half) = match (full, half) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                h *= 0.5;
                continue;
            }
        };
        let err = (full.0 - half.0).hypot(full.1 - half.1);
        if err > opts.tol * h_try {
            h *= 0.5;
            continue;
        }
        let next = (half.0 + (half.0 - full.0) / 15.0, half.1 + (half.1 - full.1) / 15.0);
        let new_heading = match field.dir(next, heading) {
            Probe::Dir(d) => d,
            Probe::Stop(_) => {
                h *= 0.5;
                continue;
            }
        };
        let turn = (heading.0 * new_heading.1 - heading.1 * new_heading.0)
            .atan2(heading.0 * new_heading.0 + heading.1 * new_heading.1)
            .abs();
        if turn > opts.max_turn {
            h *= 0.5;
            continue;
        }
        if !domain.contains(next.0, next.1) {
            break StopReason::DomainBoundary;
        }
        length += (next.0 - p.0).hypot(next.1 - p.1);
        p = next;
        heading = new_heading;
        points.push(p);
        let w = domain.wrap(p.0, p.1);
        if opts.avoid.iter().any(|&a| periodic_distance(&domain, a, w) <= opts.r_stop) {
            break StopReason::Singularity;
        }
        if err < opts.tol * h_try / 32.0 {
            h = (2.0 * h).min(opts.max_step);
        }
    };
    Ok(Polyline { points, length, branch, stop })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::bde::principal_bde;
    use crate::surface::{AnalyticChart, NormalField};
    use approx::assert_abs_diff_eq;

    #[test]
    fn length_budget_ends_cleanly() {
        let torus = AnalyticChart::torus(2.0, 1.0);
        let bde = principal_bde(&torus, NormalField::LIGHTCONE);
        for backward in [false, true] {
            let opts = TraceOptions { max_length: 7.0, backward, ..Default::default() };
            for branch in [Branch::First, Branch::Second] {
                let line = integrate_line(&bde, (1.0, 0.5), branch, &opts).unwrap();
                assert_eq!(line.stop, StopReason::MaxLength);
                assert_abs_diff_eq!(line.length, 7.0, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn torus_principal_lines_are_circles() {
        let torus = AnalyticChart::torus(2.0, 0.5);
        let bde = principal_bde(&torus, NormalField::LIGHTCONE);
        let opts = TraceOptions { max_length: 2.0 * PI, ..Default::default() };
        let seed = (0.3, 0.7);
        for branch in [Branch::First, Branch::Second] {
            let line = integrate_line(&bde, seed, branch, &opts).unwrap();
            assert_eq!(line.stop, StopReason::MaxLength, "{:?} {}", line.points.last(), line.points.len());
            let end = *line.points.last().unwrap();
            // one coordinate stays fixed, the other runs once around
            let (du, dv) = (end.0 - seed.0, end.1 - seed.1);
            assert!(du.abs().min(dv.abs()) < 1e-8, "{end:?}");
            assert_abs_diff_eq!(du.abs().max(dv.abs()), 2.0 * PI, epsilon = 1e-8);
        }
    }

    #[test]
    fn seed_checks() {
        let torus = AnalyticChart::torus(2.0, 0.5);
        let bde = principal_bde(&torus, NormalField::LIGHTCONE);
        let opts = TraceOptions { r_stop: 1e-3, avoid: alloc::vec![(1.0, 1.0)], ..Default::default() };
        assert!(matches!(
            integrate_line(&bde, (1.0, 1.0005), Branch::First, &opts),
            Err(GeometryError::SeedAtSingularity { .. })
        ));
    }
}
