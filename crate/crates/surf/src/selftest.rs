//! Randomised property suites with independent oracles.
//!
//! Every suite draws from its own ChaCha stream derived from one seed, so
//! results are reproducible and suites do not disturb each other.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use spacelike_core::ellipse::{ellipse_offset, ellipse_point, phi_star, support_function};
use spacelike_core::fields::{
    adapted_direction_forms, asymptotic_frame_form, mean_frame_form, principal_bde, solve_directions, wong_residual,
    BdeCoeffs, Directions,
};
use spacelike_core::fields::umbilic::poincare_hopf_from_reports;
use spacelike_core::lorentz::inner2;
use spacelike_core::quadratic::{act, equivalent, form_a, form_phi, form_phi_polar, forms, reconstruct};
use spacelike_core::surface::{
    analyze_point, point_geometry, AnalyticChart, Atlas, Graph4, HyperbolicGraph, NormalField, SurfaceChart,
};
use spacelike_core::{QuadraticMap, Sym2, Vec2L};

use crate::output::fmt_f64;
use crate::parallel::find_umbilics_par;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    /// Largest residual seen, in the units of `tolerance`.
    pub max_residual: f64,
    pub tolerance: f64,
    pub seconds: f64,
    /// Free-form remark, e.g. counts found by a scan.
    pub detail: String,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.samples > 0
    }

    pub fn line(&self) -> String {
        format!(
            "{:<24} {}  samples={} failures={} max_residual={} tol={} time={:.2}s{}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.samples,
            self.failures,
            fmt_f64(self.max_residual),
            fmt_f64(self.tolerance),
            self.seconds,
            if self.detail.is_empty() { String::new() } else { format!("  {}", self.detail) }
        )
    }
}

/// Running tally of residuals against one tolerance.
struct Tally {
    name: &'static str,
    tol: f64,
    samples: usize,
    failures: usize,
    max: f64,
    start: Instant,
    detail: String,
}

impl Tally {
    fn new(name: &'static str, tol: f64) -> Self {
        Tally { name, tol, samples: 0, failures: 0, max: 0.0, start: Instant::now(), detail: String::new() }
    }

    /// Records one sample whose residuals must all be within the tolerance.
    fn check(&mut self, residuals: &[f64]) {
        self.samples += 1;
        let worst = residuals.iter().copied().fold(0.0, |m: f64, r| if r.is_nan() { f64::INFINITY } else { m.max(r) });
        self.max = self.max.max(worst);
        if worst > self.tol {
            self.failures += 1;
        }
    }

    fn fail(&mut self) {
        self.samples += 1;
        self.failures += 1;
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            samples: self.samples,
            failures: self.failures,
            max_residual: self.max,
            tolerance: self.tol,
            seconds: self.start.elapsed().as_secs_f64(),
            detail: self.detail,
        }
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_map(rng: &mut ChaCha8Rng) -> QuadraticMap {
    let mut c = [0.0; 6];
    for x in &mut c {
        *x = rng.random_range(-1.0..1.0);
    }
    QuadraticMap::from_array(c)
}

fn random_normal(rng: &mut ChaCha8Rng) -> Vec2L {
    Vec2L::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_graph4(rng: &mut ChaCha8Rng) -> Graph4 {
    let mut r = || rng.random_range(-1.0..1.0);
    Graph4 {
        a20: r(),
        a11: r(),
        a02: r(),
        a30: r(),
        a21: r(),
        a12: r(),
        a03: r(),
        k: r(),
        b30: r(),
        b21: r(),
        b12: r(),
        b03: r(),
    }
}

/// `Φ(ν₁)Φ(ν₂) = Φ̃(ν₁,ν₂)² + A(ν₁,ν₂)²`.
pub fn lagrange_identity(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 1);
    let mut t = Tally::new("lagrange_identity", 1e-10);
    for _ in 0..n {
        let q = random_map(&mut rng);
        let (n1, n2) = (random_normal(&mut rng), random_normal(&mut rng));
        let p = form_phi_polar(q, n1, n2);
        let a = form_a(q, n1, n2);
        t.check(&[(form_phi(q, n1) * form_phi(q, n2) - p * p - a * a).abs()]);
    }
    t.finish()
}

/// Trace and determinant of `u_Φ` from a matrix built by polarisation, with
/// `G = diag(1, −1)` in an orthonormal basis of the normal plane.
pub fn phi_trace_det(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 2);
    let mut t = Tally::new("phi_trace_det", 1e-10);
    let (e1, e2) = (Vec2L::new(1.0, 0.0), Vec2L::new(0.0, 1.0));
    for _ in 0..n {
        let q = random_map(&mut rng);
        let m11 = form_phi(q, e1);
        let m22 = form_phi(q, e2);
        let m12 = 0.5 * (form_phi(q, e1 + e2) - m11 - m22);
        let (tr, det) = (m11 - m22, m12 * m12 - m11 * m22);
        let k_n = q.k_n();
        t.check(&[(tr - (q.h_norm2() - q.k())).abs(), (det + 0.25 * k_n * k_n).abs()]);
    }
    t.finish()
}

/// Invariants survive boosts of rapidity up to 2 and tangent rotations, and
/// `equivalent` recognises the moved map.
pub fn equivariance(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 3);
    let mut t = Tally::new("equivariance", 1e-8);
    let mut not_equivalent = 0;
    for _ in 0..n {
        let q = random_map(&mut rng);
        let g = act(q, rng.random_range(-2.0..2.0), rng.random_range(-PI..PI));
        let eq = equivalent(q, g, 1e-6);
        if !eq {
            not_equivalent += 1;
        }
        let d = [
            (g.h_norm2() - q.h_norm2()).abs(),
            (g.k() - q.k()).abs(),
            (g.k_n() - q.k_n()).abs(),
            (g.delta() - q.delta()).abs(),
            if eq { 0.0 } else { f64::INFINITY },
        ];
        t.check(&d);
    }
    t.detail = format!("not_equivalent={not_equivalent}");
    t.finish()
}

/// `reconstruct(forms(q))` has the invariants of `q`.
pub fn reconstruction(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 4);
    let mut t = Tally::new("reconstruction", 1e-9);
    for _ in 0..n {
        let q = random_map(&mut rng);
        let (l, phi, a0) = forms(q);
        match reconstruct(l, phi, a0) {
            Ok(r) => t.check(&[
                (r.h_norm2() - q.h_norm2()).abs(),
                (r.k() - q.k()).abs(),
                (r.k_n() - q.k_n()).abs(),
                (r.delta() - q.delta()).abs(),
            ]),
            Err(_) => t.fail(),
        }
    }
    t.finish()
}

/// Sampled ellipse points satisfy `Φ*(ν) = 1`, and `√Φ` is the support
/// function of the sampled ellipse to a relative 1e-5 (reported in
/// `detail`; a miss counts as a failure).
pub fn ellipse_equation(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 5);
    let mut t = Tally::new("ellipse_equation", 1e-8);
    let mut support_max = 0.0f64;
    let mut done = 0;
    while done < n {
        let q = random_map(&mut rng);
        if q.k_n().abs() <= 0.1 {
            continue;
        }
        done += 1;
        let h = q.mean_vector();
        let mut res = Vec::with_capacity(65);
        for k in 0..64 {
            let p = ellipse_point(q, PI * k as f64 / 64.0);
            res.push(phi_star(q, p - h).map_or(f64::INFINITY, |s| (s - 1.0).abs()));
        }
        let nu = random_normal(&mut rng);
        let best = (0..4096)
            .map(|k| {
                let (x, y) = ellipse_offset(q, PI * k as f64 / 4096.0);
                inner2(Vec2L::from_null(x, y), nu)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let s = support_function(q, nu);
        let sres = (best - s).abs() / s.max(1.0);
        support_max = support_max.max(sres);
        if sres.is_nan() || sres > 1e-5 {
            res.push(f64::INFINITY);
        }
        t.check(&res);
    }
    t.detail = format!("support_max={}", fmt_f64(support_max));
    t.finish()
}

/// Second fundamental forms at regular points of a tilted ellipsoid and of
/// random graphs.
pub fn regular_fixture_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<QuadraticMap> {
    let ell = AnalyticChart::ellipsoid(3.0, 2.0, 1.0).perturbed(0.05);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let geometry = if out.len() % 2 == 0 {
            point_geometry(&ell.jet_at(rng.random_range(0.5..2.6), rng.random_range(0.2..6.2)))
        } else {
            let ch = AnalyticChart::graph4(random_graph4(rng), 0.5);
            point_geometry(&ch.jet_at(rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4)))
        };
        let Ok(pg) = geometry else { continue };
        let q = pg.ii;
        let s = q.magnitude();
        if q.k_n().abs() > 1e-3 * s * s {
            out.push(q);
        }
    }
    out
}

fn form_lines(m: Sym2) -> Option<((f64, f64), (f64, f64))> {
    match solve_directions(BdeCoeffs::from_form(m, 0.0)) {
        Directions::Two(a, b) => Some((a, b)),
        _ => None,
    }
}

fn angle_between(a: (f64, f64), b: (f64, f64)) -> f64 {
    let c = (a.0 * b.0 + a.1 * b.1).abs() / (a.0.hypot(a.1) * b.0.hypot(b.1));
    c.min(1.0).acos()
}

/// `tr δ = K_N`, `det δ = −Δ`, the angle formula for asymptotic lines and
/// the bisection of the asymptotic lines by the mean directions.
pub fn wong_and_delta(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 6);
    let mut t = Tally::new("wong_and_delta", 1e-6);
    let mut with_lines = 0;
    for q in regular_fixture_points(n, &mut rng) {
        let s2 = q.magnitude().powi(2);
        let d = asymptotic_frame_form(q);
        let mut res = vec![(d.trace() - q.k_n()).abs() / s2, (d.det() + q.delta()).abs() / (s2 * s2)];
        match adapted_direction_forms(q) {
            Ok(f) => {
                res.push((f.delta.trace().abs() - q.k_n().abs()).abs() / s2);
                res.push((f.delta.det() + q.delta()).abs() / (s2 * s2));
            }
            Err(_) => res.push(f64::INFINITY),
        }
        if let Some((a1, a2)) = form_lines(d) {
            with_lines += 1;
            res.push(wong_residual(q).unwrap_or(f64::INFINITY));
            match form_lines(mean_frame_form(q)) {
                Some((m1, m2)) => {
                    for m in [m1, m2] {
                        res.push((angle_between(m, a1) - angle_between(m, a2)).abs());
                    }
                }
                None => res.push(f64::INFINITY),
            }
        }
        t.check(&res);
    }
    t.detail = format!("with_asymptotic_lines={with_lines}");
    t.finish()
}

/// Finite-difference Jacobian at the origin of the principal BDE of random
/// graphs against the pattern of the normal form.
pub fn normal_form(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 7);
    let mut t = Tally::new("normal_form", 5e-4);
    // the lightcone field normalised to unit N1-coordinate
    let field = NormalField::Null { n1: 1.0, n2: 0.0 };
    for _ in 0..n {
        let g = random_graph4(&mut rng);
        let ch = AnalyticChart::graph4(g, 0.5);
        let bde = principal_bde(&ch, field);
        let h = 1e-4;
        let c = |u: f64, v: f64| bde.coeff_at(u, v);
        let (Ok(up), Ok(um), Ok(vp), Ok(vm)) = (c(h, 0.0), c(-h, 0.0), c(0.0, h), c(0.0, -h)) else {
            t.fail();
            continue;
        };
        let k = 0.5 / h;
        let got = [
            k * (up.a - um.a),
            k * (vp.a - vm.a),
            k * (up.b - um.b),
            k * (vp.b - vm.b),
            k * (up.c - um.c),
            k * (vp.c - vm.c),
        ];
        let want = [g.b21, g.b12, g.b12 - g.b30, g.b03 - g.b21, -g.b21, -g.b12];
        let res: Vec<f64> = got.iter().zip(want).map(|(a, b)| (a - b).abs()).collect();
        t.check(&res);
    }
    t.finish()
}

/// `K_N = 0` on `n × n` samples of surfaces in the hyperbolic space, for a
/// fixed and a random fixture.
pub fn semi_umbilic(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 10);
    let mut t = Tally::new("semi_umbilic", 1e-8);
    let fixtures = [
        HyperbolicGraph { c20: 0.3, c11: -0.2, c02: 0.5, c_sin: 0.1 },
        HyperbolicGraph {
            c20: rng.random_range(-0.5..0.5),
            c11: rng.random_range(-0.5..0.5),
            c02: rng.random_range(-0.5..0.5),
            c_sin: rng.random_range(-0.3..0.3),
        },
    ];
    for h in fixtures {
        let ch = AnalyticChart::hyperbolic(h, 1.0);
        for i in 0..n {
            for j in 0..n {
                let s = |k: usize| -1.0 + 2.0 * k as f64 / (n.max(2) - 1) as f64;
                match point_geometry(&ch.jet_at(s(i), s(j))) {
                    Ok(pg) => t.check(&[pg.ii.k_n().abs()]),
                    Err(_) => t.fail(),
                }
            }
        }
    }
    t.finish()
}

/// Round spheres of the hyperplane `x4 = 0`: `Φ = 0`, `|H|² = K = 1/r²` and
/// `K_N = Δ = 0`.
pub fn sphere_invariants(n: usize, seed: u64) -> SuiteResult {
    let mut rng = rng_for(seed, 11);
    let mut t = Tally::new("sphere_invariants", 1e-9);
    for r in [0.5, 1.0, 2.0] {
        let ch = AnalyticChart::sphere(r);
        let d = ch.domain();
        for _ in 0..n {
            let (u, v) = (rng.random_range(d.u0..d.u1), rng.random_range(d.v0..d.v1));
            match analyze_point(&ch, u, v) {
                Ok(rep) => {
                    let q = rep.geometry.ii;
                    let phi = q.phi_form();
                    let k0 = 1.0 / (r * r);
                    t.check(&[
                        phi.p.abs(),
                        phi.r.abs(),
                        phi.m.abs(),
                        (q.h_norm2() - k0).abs(),
                        (q.k() - k0).abs(),
                        q.k_n().abs(),
                        q.delta().abs(),
                    ]);
                }
                Err(_) => t.fail(),
            }
        }
    }
    t.finish()
}

/// Lightcone configuration of a closed surface of the hyperplane: expected
/// umbilic count, each index, and the Poincaré–Hopf sum.
fn lightcone_configuration(name: &'static str, atlas: &Atlas, grid: usize, want: usize) -> SuiteResult {
    let mut t = Tally::new(name, 1e-9);
    let reports: Vec<_> =
        atlas.charts.iter().map(|c| find_umbilics_par(c, NormalField::LIGHTCONE, grid, grid)).collect();
    let ph = poincare_hopf_from_reports(atlas, &reports);
    let chi = ph.euler_characteristic;
    let count = ph.umbilics.len();
    let mut res = vec![
        (ph.index_sum - chi as f64).abs(),
        if count == want { 0.0 } else { f64::INFINITY },
        if count as i64 >= 2 * i64::from(chi.abs()) { 0.0 } else { f64::INFINITY },
    ];
    for u in &ph.umbilics {
        res.push(u.point.index.map_or(f64::INFINITY, |i| (i - 0.5).abs()));
    }
    t.check(&res);
    t.detail = format!(
        "umbilics={count} index_sum={} chi={chi} status={}",
        fmt_f64(ph.index_sum),
        ph.status.as_str()
    );
    t.finish()
}

/// Triaxial ellipsoid: four umbilics of index ½.
pub fn ellipsoid_lightcone(grid: usize) -> SuiteResult {
    lightcone_configuration("ellipsoid_lightcone", &Atlas::ellipsoid(3.0, 2.0, 1.0), grid, 4)
}

/// Torus of revolution: no umbilics.
pub fn torus_lightcone(grid: usize) -> SuiteResult {
    lightcone_configuration("torus_lightcone", &Atlas::torus(2.0, 1.0), grid, 0)
}

/// Sample counts for one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestPlan {
    pub algebraic: usize,
    pub geometric: usize,
    pub graphs: usize,
    pub field_grid: usize,
    pub sphere_points: usize,
    pub umbilic_grid: usize,
}

impl SelftestPlan {
    pub const FULL: SelftestPlan = SelftestPlan {
        algebraic: 10_000,
        geometric: 1_000,
        graphs: 20,
        field_grid: 64,
        sphere_points: 100,
        umbilic_grid: 256,
    };

    pub const QUICK: SelftestPlan = SelftestPlan {
        algebraic: 100,
        geometric: 100,
        graphs: 20,
        field_grid: 16,
        sphere_points: 20,
        umbilic_grid: 128,
    };
}

/// Runs all suites, printing one line per suite as it finishes.
pub fn run_all(
    plan: SelftestPlan,
    seed: u64,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> std::io::Result<Vec<SuiteResult>> {
    let suites: Vec<Box<dyn Fn() -> SuiteResult + Send + Sync>> = vec![
        Box::new(move || lagrange_identity(plan.algebraic, seed)),
        Box::new(move || phi_trace_det(plan.algebraic, seed)),
        Box::new(move || equivariance(plan.geometric, seed)),
        Box::new(move || reconstruction(plan.geometric, seed)),
        Box::new(move || ellipse_equation(plan.geometric, seed)),
        Box::new(move || wong_and_delta(plan.geometric, seed)),
        Box::new(move || normal_form(plan.graphs, seed)),
        Box::new(move || semi_umbilic(plan.field_grid, seed)),
        Box::new(move || sphere_invariants(plan.sphere_points, seed)),
        Box::new(move || ellipsoid_lightcone(plan.umbilic_grid)),
        Box::new(move || torus_lightcone(plan.umbilic_grid)),
    ];
    let mut results = Vec::new();
    writeln!(out, "selftest seed={seed}")?;
    for s in suites {
        let r = pool.install(&s);
        writeln!(out, "{}", r.line())?;
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} suites, {} failed", results.len(), failed)?;
    Ok(results)
}
