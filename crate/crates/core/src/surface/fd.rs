use alloc::string::String;

use super::{ChartJet, Domain, JetKind, SurfaceChart};
use crate::lorentz::Vec4L;

/// A chart whose jets come from central differences of a point function.
pub struct FiniteDifferenceChart<F> {
    name: String,
    f: F,
    h: f64,
    domain: Domain,
}

/// Wraps `point_fn` into a chart with central-difference jets of step `h`.
pub fn finite_difference_adapter<F>(name: &str, point_fn: F, h: f64, domain: Domain) -> FiniteDifferenceChart<F>
where
    F: Fn(f64, f64) -> Vec4L + Sync,
{
    FiniteDifferenceChart { name: name.into(), f: point_fn, h, domain }
}

impl<F> FiniteDifferenceChart<F>
where
    F: Fn(f64, f64) -> Vec4L + Sync,
{
    pub fn step(&self) -> f64 {
        self.h
    }
}

impl<F> SurfaceChart for FiniteDifferenceChart<F>
where
    F: Fn(f64, f64) -> Vec4L + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn jet_at(&self, u: f64, v: f64) -> ChartJet {
        let h = self.h;
        let f = &self.f;
        let c = f(u, v);
        let (up, um) = (f(u + h, v), f(u - h, v));
        let (vp, vm) = (f(u, v + h), f(u, v - h));
        let pp = f(u + h, v + h);
        let pm = f(u + h, v - h);
        let mp = f(u - h, v + h);
        let mm = f(u - h, v - h);
        let i2h = 0.5 / h;
        let ih2 = 1.0 / (h * h);
        ChartJet {
            p: c,
            du: i2h * (up - um),
            dv: i2h * (vp - vm),
            duu: ih2 * (up - 2.0 * c + um),
            duv: (0.25 * ih2) * (pp - pm - mp + mm),
            dvv: ih2 * (vp - 2.0 * c + vm),
        }
    }

    fn jet_kind(&self) -> JetKind {
        JetKind::FiniteDifference { h: self.h }
    }
}
