//! Linear algebra of the Minkowski plane ℝ^{1,1} and of Minkowski space
//! ℝ^{3,1}.
//!
//! Vectors are stored in canonical coordinates. Null coordinates with
//! respect to the pair `N1 = s(u1 + u2)`, `N2 = s(u2 − u1)`, `s = √2/2`, are
//! computed on demand.

use core::f64::consts::FRAC_1_SQRT_2;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::tol::TAU_CAUSAL;

/// A vector of ℝ^{1,1}, `c1` along the spacelike `u1`, `c2` along the
/// timelike `u2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2L {
    pub c1: f64,
    pub c2: f64,
}

impl Vec2L {
    pub const ZERO: Vec2L = Vec2L { c1: 0.0, c2: 0.0 };

    #[inline]
    pub const fn new(c1: f64, c2: f64) -> Self {
        Vec2L { c1, c2 }
    }

    /// `n1·N1 + n2·N2`.
    #[inline]
    pub fn from_null(n1: f64, n2: f64) -> Self {
        let s = FRAC_1_SQRT_2;
        Vec2L::new(s * (n1 - n2), s * (n1 + n2))
    }

    /// Coordinates `(n1, n2)` with `self = n1·N1 + n2·N2`.
    #[inline]
    pub fn null_coords(self) -> (f64, f64) {
        let s = FRAC_1_SQRT_2;
        (s * (self.c1 + self.c2), s * (self.c2 - self.c1))
    }

    #[inline]
    pub fn inner(self, other: Vec2L) -> f64 {
        inner2(self, other)
    }

    /// `⟨v, v⟩`.
    #[inline]
    pub fn norm2(self) -> f64 {
        inner2(self, self)
    }

    /// Euclidean length of the coordinate pair, used as a scale.
    #[inline]
    pub fn magnitude(self) -> f64 {
        self.c1.hypot(self.c2)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }
}

impl Add for Vec2L {
    type Output = Vec2L;
    #[inline]
    fn add(self, o: Vec2L) -> Vec2L {
        Vec2L::new(self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl AddAssign for Vec2L {
    #[inline]
    fn add_assign(&mut self, o: Vec2L) {
        self.c1 += o.c1;
        self.c2 += o.c2;
    }
}

impl Sub for Vec2L {
    type Output = Vec2L;
    #[inline]
    fn sub(self, o: Vec2L) -> Vec2L {
        Vec2L::new(self.c1 - o.c1, self.c2 - o.c2)
    }
}

impl Neg for Vec2L {
    type Output = Vec2L;
    #[inline]
    fn neg(self) -> Vec2L {
        Vec2L::new(-self.c1, -self.c2)
    }
}

impl Mul<Vec2L> for f64 {
    type Output = Vec2L;
    #[inline]
    fn mul(self, v: Vec2L) -> Vec2L {
        Vec2L::new(self * v.c1, self * v.c2)
    }
}

impl Mul<f64> for Vec2L {
    type Output = Vec2L;
    #[inline]
    fn mul(self, k: f64) -> Vec2L {
        Vec2L::new(self.c1 * k, self.c2 * k)
    }
}

/// A vector of ℝ^{3,1}; `x4` is the timelike coordinate.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec4L {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl Vec4L {
    pub const ZERO: Vec4L = Vec4L::new(0.0, 0.0, 0.0, 0.0);
    pub const E1: Vec4L = Vec4L::new(1.0, 0.0, 0.0, 0.0);
    pub const E2: Vec4L = Vec4L::new(0.0, 1.0, 0.0, 0.0);
    pub const E3: Vec4L = Vec4L::new(0.0, 0.0, 1.0, 0.0);
    pub const E4: Vec4L = Vec4L::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4L { x1, x2, x3, x4 }
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Vec4L::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    #[inline]
    pub fn inner(self, o: Vec4L) -> f64 {
        inner4(self, o)
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        inner4(self, self)
    }

    /// Euclidean length of the coordinate 4-tuple.
    #[inline]
    pub fn magnitude(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3 + self.x4 * self.x4).sqrt()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite() && self.x4.is_finite()
    }
}

impl Add for Vec4L {
    type Output = Vec4L;
    #[inline]
    fn add(self, o: Vec4L) -> Vec4L {
        Vec4L::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3, self.x4 + o.x4)
    }
}

impl AddAssign for Vec4L {
    #[inline]
    fn add_assign(&mut self, o: Vec4L) {
        *self = *self + o;
    }
}

impl Sub for Vec4L {
    type Output = Vec4L;
    #[inline]
    fn sub(self, o: Vec4L) -> Vec4L {
        Vec4L::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3, self.x4 - o.x4)
    }
}

impl Neg for Vec4L {
    type Output = Vec4L;
    #[inline]
    fn neg(self) -> Vec4L {
        Vec4L::new(-self.x1, -self.x2, -self.x3, -self.x4)
    }
}

impl Mul<Vec4L> for f64 {
    type Output = Vec4L;
    #[inline]
    fn mul(self, v: Vec4L) -> Vec4L {
        Vec4L::new(self * v.x1, self * v.x2, self * v.x3, self * v.x4)
    }
}

impl Mul<f64> for Vec4L {
    type Output = Vec4L;
    #[inline]
    fn mul(self, k: f64) -> Vec4L {
        k * self
    }
}

/// A 2×2 real matrix acting on canonical coordinates, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    #[inline]
    pub fn apply(self, v: Vec2L) -> Vec2L {
        Vec2L::new(self.m11 * v.c1 + self.m12 * v.c2, self.m21 * v.c1 + self.m22 * v.c2)
    }

    /// Applies the matrix to a plain pair (tangent vectors of ℝ²).
    #[inline]
    pub fn apply_pair(self, p: (f64, f64)) -> (f64, f64) {
        (self.m11 * p.0 + self.m12 * p.1, self.m21 * p.0 + self.m22 * p.1)
    }

    #[inline]
    pub fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }

    #[inline]
    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.m11, self.m21, self.m12, self.m22)
    }

    #[inline]
    pub fn det(self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    #[inline]
    pub fn trace(self) -> f64 {
        self.m11 + self.m22
    }

    /// Largest absolute entry.
    pub fn max_abs(self) -> f64 {
        self.m11.abs().max(self.m12.abs()).max(self.m21.abs()).max(self.m22.abs())
    }
}

/// An oriented, time-oriented orthonormal basis of ℝ^{1,1}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame2L {
    /// Spacelike unit vector.
    pub f1: Vec2L,
    /// Timelike unit vector, future directed.
    pub f2: Vec2L,
}

impl Frame2L {
    pub const CANONICAL: Frame2L = Frame2L {
        f1: Vec2L::new(1.0, 0.0),
        f2: Vec2L::new(0.0, 1.0),
    };

    /// Coordinates `(α, β)` of `v = α f1 + β f2`.
    #[inline]
    pub fn coords(&self, v: Vec2L) -> (f64, f64) {
        (inner2(v, self.f1), -inner2(v, self.f2))
    }

    /// Largest violation of the frame invariants.
    pub fn residual(&self) -> f64 {
        let r1 = (inner2(self.f1, self.f1) - 1.0).abs();
        let r2 = (inner2(self.f2, self.f2) + 1.0).abs();
        let r3 = inner2(self.f1, self.f2).abs();
        r1.max(r2).max(r3)
    }

    /// Orientation and time orientation both hold.
    pub fn is_oriented(&self) -> bool {
        mixed_product2(self.f1, self.f2) > 0.0 && self.f2.c2 > 0.0
    }
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

impl CausalCharacter {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Lightlike => "lightlike",
            CausalCharacter::Zero => "zero",
        }
    }
}

/// Vectors whose causal character can be tested.
pub trait Causal: Copy {
    fn self_inner(self) -> f64;
    fn max_component(self) -> f64;
}

impl Causal for Vec2L {
    fn self_inner(self) -> f64 {
        self.norm2()
    }
    fn max_component(self) -> f64 {
        self.c1.abs().max(self.c2.abs())
    }
}

impl Causal for Vec4L {
    fn self_inner(self) -> f64 {
        self.norm2()
    }
    fn max_component(self) -> f64 {
        self.x1.abs().max(self.x2.abs()).max(self.x3.abs()).max(self.x4.abs())
    }
}

#[inline]
pub fn inner2(a: Vec2L, b: Vec2L) -> f64 {
    a.c1 * b.c1 - a.c2 * b.c2
}

#[inline]
pub fn inner4(a: Vec4L, b: Vec4L) -> f64 {
    a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3 - a.x4 * b.x4
}

/// The null pair `(N1, N2)`: future directed, positively oriented,
/// `⟨N1, N2⟩ = −1`.
#[inline]
pub fn null_basis() -> (Vec2L, Vec2L) {
    let s = FRAC_1_SQRT_2;
    (Vec2L::new(s, s), Vec2L::new(-s, s))
}

/// The boost of rapidity `t` in canonical coordinates.
#[inline]
pub fn boost(t: f64) -> Mat2 {
    let (c, s) = (t.cosh(), t.sinh());
    Mat2::new(c, s, s, c)
}

/// The Euclidean rotation by `theta`.
#[inline]
pub fn rotation(theta: f64) -> Mat2 {
    let (s, c) = theta.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Determinant of the columns `(a, b)` in canonical coordinates.
#[inline]
pub fn mixed_product2(a: Vec2L, b: Vec2L) -> f64 {
    a.c1 * b.c2 - a.c2 * b.c1
}

/// Causal character with tolerance `TAU_CAUSAL` relative to `scale`.
pub fn causal_character<V: Causal>(v: V, scale: f64) -> CausalCharacter {
    causal_character_tol(v, scale, TAU_CAUSAL)
}

pub fn causal_character_tol<V: Causal>(v: V, scale: f64, tau: f64) -> CausalCharacter {
    if v.max_component() <= tau * scale {
        return CausalCharacter::Zero;
    }
    let n = v.self_inner();
    if n.abs() <= tau * scale * scale {
        CausalCharacter::Lightlike
    } else if n > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

#[inline]
fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1])
        + c[0] * (a[1] * b[2] - a[2] * b[1])
}

/// Determinant of the 4×4 matrix with columns `a, b, c, d`.
pub fn det4(a: Vec4L, b: Vec4L, c: Vec4L, d: Vec4L) -> f64 {
    let cols = [a.to_array(), b.to_array(), c.to_array(), d.to_array()];
    // expand along the first column
    let mut acc = 0.0;
    for i in 0..4 {
        let minor = |col: usize| -> [f64; 3] {
            let mut m = [0.0; 3];
            let mut k = 0;
            for (r, &x) in cols[col].iter().enumerate() {
                if r != i {
                    m[k] = x;
                    k += 1;
                }
            }
            m
        };
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * cols[0][i] * det3(minor(1), minor(2), minor(3));
    }
    acc
}

/// The vector `w` with `⟨w, x⟩ = det(x, a, b, c)` for every `x`.
pub fn lorentz_cross4(a: Vec4L, b: Vec4L, c: Vec4L) -> Vec4L {
    let c1 = det4(Vec4L::E1, a, b, c);
    let c2 = det4(Vec4L::E2, a, b, c);
    let c3 = det4(Vec4L::E3, a, b, c);
    let c4 = det4(Vec4L::E4, a, b, c);
    Vec4L::new(c1, c2, c3, -c4)
}
