//! Second-order forward-mode differentiation in two variables.
//!
//! A [`Jet2`] carries a value and its first and second partial derivatives
//! in `(u, v)`. Point functions written against [`Scalar`] can be evaluated
//! on plain `f64` or on jets, which yields exact second-order charts without
//! hand-derived formulas.

use core::ops::{Add, Div, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

/// `(f, f_u, f_v, f_uu, f_uv, f_vv)` at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    #[inline]
    pub const fn constant(c: f64) -> Self {
        Jet2 { v: c, du: 0.0, dv: 0.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// The coordinate function `u` at `u0`.
    #[inline]
    pub const fn var_u(u0: f64) -> Self {
        Jet2 { v: u0, du: 1.0, dv: 0.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// The coordinate function `v` at `v0`.
    #[inline]
    pub const fn var_v(v0: f64) -> Self {
        Jet2 { v: v0, du: 0.0, dv: 1.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// `f ∘ self` given `f(x)`, `f'(x)`, `f''(x)` at `x = self.v`.
    #[inline]
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        Jet2 {
            v: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    #[inline]
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v + o.v,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    #[inline]
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    #[inline]
    fn neg(self) -> Jet2 {
        Jet2 { v: -self.v, du: -self.du, dv: -self.dv, duu: -self.duu, duv: -self.duv, dvv: -self.dvv }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    #[inline]
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            v: self.v * o.v,
            du: self.du * o.v + self.v * o.du,
            dv: self.dv * o.v + self.v * o.dv,
            duu: self.duu * o.v + 2.0 * self.du * o.du + self.v * o.duu,
            duv: self.duv * o.v + self.du * o.dv + self.dv * o.du + self.v * o.duv,
            dvv: self.dvv * o.v + 2.0 * self.dv * o.dv + self.v * o.dvv,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[inline]
    fn div(self, o: Jet2) -> Jet2 {
        let x = o.v;
        self * o.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn add(mut self, c: f64) -> Jet2 {
        self.v += c;
        self
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn sub(mut self, c: f64) -> Jet2 {
        self.v -= c;
        self
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    #[inline]
    fn mul(self, c: f64) -> Jet2 {
        Jet2 {
            v: self.v * c,
            du: self.du * c,
            dv: self.dv * c,
            duu: self.duu * c,
            duv: self.duv * c,
            dvv: self.dvv * c,
        }
    }
}

/// Real scalars usable by point functions of fixture surfaces.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn cst(c: f64) -> Self;
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn sqrt(self) -> Self;

    #[inline]
    fn scale(self, c: f64) -> Self {
        self * Self::cst(c)
    }
    #[inline]
    fn offset(self, c: f64) -> Self {
        self + Self::cst(c)
    }
    #[inline]
    fn sq(self) -> Self {
        self * self
    }
}

impl Scalar for f64 {
    #[inline]
    fn cst(c: f64) -> Self {
        c
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
    #[inline]
    fn sin(self) -> Self {
        Float::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        Float::cos(self)
    }
    #[inline]
    fn exp(self) -> Self {
        Float::exp(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
}

impl Scalar for Jet2 {
    #[inline]
    fn cst(c: f64) -> Self {
        Jet2::constant(c)
    }
    #[inline]
    fn value(self) -> f64 {
        self.v
    }
    #[inline]
    fn sin(self) -> Self {
        let (s, c) = Float::sin_cos(self.v);
        self.chain(s, c, -s)
    }
    #[inline]
    fn cos(self) -> Self {
        let (s, c) = Float::sin_cos(self.v);
        self.chain(c, -s, -c)
    }
    #[inline]
    fn exp(self) -> Self {
        let e = Float::exp(self.v);
        self.chain(e, e, e)
    }
    #[inline]
    fn sqrt(self) -> Self {
        let r = Float::sqrt(self.v);
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn product_rule() {
        // f = u²v at (2, 3): f_u = 2uv = 12, f_v = u² = 4, f_uu = 2v = 6, f_uv = 2u = 4, f_vv = 0
        let u = Jet2::var_u(2.0);
        let v = Jet2::var_v(3.0);
        let f = u * u * v;
        assert_eq!((f.v, f.du, f.dv, f.duu, f.duv, f.dvv), (12.0, 12.0, 4.0, 6.0, 4.0, 0.0));
    }

    #[test]
    fn composite_functions() {
        // f = sin(uv) at (0.3, 0.7)
        let (u0, v0) = (0.3, 0.7);
        let f = Scalar::sin(Jet2::var_u(u0) * Jet2::var_v(v0));
        let x = u0 * v0;
        assert_abs_diff_eq!(f.du, v0 * x.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.duu, -v0 * v0 * x.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.duv, x.cos() - x * x.sin(), epsilon = 1e-15);
        // g = sqrt(1 + u²) / exp(v)
        let g = Scalar::sqrt(Jet2::var_u(u0) * Jet2::var_u(u0) + 1.0) / Scalar::exp(Jet2::var_v(v0));
        let r = (1.0 + u0 * u0).sqrt();
        let e = (-v0).exp();
        assert_abs_diff_eq!(g.v, r * e, epsilon = 1e-15);
        assert_abs_diff_eq!(g.du, u0 / r * e, epsilon = 1e-15);
        assert_abs_diff_eq!(g.duu, e / (r * r * r), epsilon = 1e-15);
        assert_abs_diff_eq!(g.dvv, r * e, epsilon = 1e-15);
        assert_abs_diff_eq!(g.duv, -u0 / r * e, epsilon = 1e-15);
    }
}
