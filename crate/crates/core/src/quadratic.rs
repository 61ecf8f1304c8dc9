//! Quadratic maps ℝ² → ℝ^{1,1} and their invariants.
//!
//! A map is stored as `q = q1·N1 + q2·N2` with `q1 = [[x, z], [z, y]]` and
//! `q2 = [[u, w], [w, v]]` in the canonical basis of ℝ². For a normal
//! vector `ν = ν1·N1 + ν2·N2` the shape operator is
//! `S_ν = −(ν2·q1 + ν1·q2)`; the minus sign comes from `⟨N1, N2⟩ = −1`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::GeometryError;
use crate::lorentz::{inner2, null_basis, rotation, Frame2L, Mat2, Vec2L};
use crate::tol::{close, TAU_CLASS};

/// A real symmetric 2×2 matrix `[[a11, a12], [a12, a22]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl Sym2 {
    pub const ZERO: Sym2 = Sym2::new(0.0, 0.0, 0.0);
    pub const IDENTITY: Sym2 = Sym2::new(1.0, 0.0, 1.0);

    #[inline]
    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Sym2 { a11, a12, a22 }
    }

    #[inline]
    pub fn trace(self) -> f64 {
        self.a11 + self.a22
    }

    #[inline]
    pub fn det(self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    /// Half the difference of the diagonal entries.
    #[inline]
    pub fn half_diff(self) -> f64 {
        0.5 * (self.a11 - self.a22)
    }

    /// The scalar `α` with `[self, other] = [[0, −α], [α, 0]]`.
    #[inline]
    pub fn commutator(self, other: Sym2) -> f64 {
        self.a12 * (other.a11 - other.a22) - other.a12 * (self.a11 - self.a22)
    }

    #[inline]
    pub fn scale(self, k: f64) -> Sym2 {
        Sym2::new(k * self.a11, k * self.a12, k * self.a22)
    }

    #[inline]
    pub fn add(self, o: Sym2) -> Sym2 {
        Sym2::new(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }

    #[inline]
    pub fn sub(self, o: Sym2) -> Sym2 {
        Sym2::new(self.a11 - o.a11, self.a12 - o.a12, self.a22 - o.a22)
    }

    /// `Xᵀ M X`.
    #[inline]
    pub fn quad(self, x: (f64, f64)) -> f64 {
        self.a11 * x.0 * x.0 + 2.0 * self.a12 * x.0 * x.1 + self.a22 * x.1 * x.1
    }

    /// `Xᵀ M Y`.
    #[inline]
    pub fn bilinear(self, x: (f64, f64), y: (f64, f64)) -> f64 {
        self.a11 * x.0 * y.0 + self.a12 * (x.0 * y.1 + x.1 * y.0) + self.a22 * x.1 * y.1
    }

    /// `Rᵀ M R`.
    pub fn congruence(self, r: Mat2) -> Sym2 {
        let m = Mat2::new(self.a11, self.a12, self.a12, self.a22);
        let c = r.transpose().mul(m).mul(r);
        Sym2::new(c.m11, 0.5 * (c.m12 + c.m21), c.m22)
    }

    pub fn max_abs(self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a22.abs())
    }

    pub fn to_mat2(self) -> Mat2 {
        Mat2::new(self.a11, self.a12, self.a12, self.a22)
    }
}

/// A quadratic map ℝ² → ℝ^{1,1}.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadraticMap {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl QuadraticMap {
    pub const ZERO: QuadraticMap = QuadraticMap::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64, u: f64, v: f64, w: f64) -> Self {
        QuadraticMap { x, y, z, u, v, w }
    }

    #[inline]
    pub fn from_parts(q1: Sym2, q2: Sym2) -> Self {
        QuadraticMap::new(q1.a11, q1.a22, q1.a12, q2.a11, q2.a22, q2.a12)
    }

    pub fn from_array(c: [f64; 6]) -> Self {
        QuadraticMap::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    pub fn to_array(self) -> [f64; 6] {
        [self.x, self.y, self.z, self.u, self.v, self.w]
    }

    /// Component along `N1`.
    #[inline]
    pub fn q1(self) -> Sym2 {
        Sym2::new(self.x, self.z, self.y)
    }

    /// Component along `N2`.
    #[inline]
    pub fn q2(self) -> Sym2 {
        Sym2::new(self.u, self.w, self.v)
    }

    #[inline]
    pub fn h1(self) -> f64 {
        0.5 * (self.x + self.y)
    }
    #[inline]
    pub fn h2(self) -> f64 {
        0.5 * (self.u + self.v)
    }
    #[inline]
    pub fn mu(self) -> f64 {
        0.5 * (self.x - self.y)
    }
    #[inline]
    pub fn nu(self) -> f64 {
        self.z
    }
    #[inline]
    pub fn mu_p(self) -> f64 {
        0.5 * (self.u - self.v)
    }
    #[inline]
    pub fn nu_p(self) -> f64 {
        self.w
    }

    /// Mean curvature vector `H = h1·N1 + h2·N2`.
    #[inline]
    pub fn mean_vector(self) -> Vec2L {
        Vec2L::from_null(self.h1(), self.h2())
    }

    /// `q(X)` for a tangent vector `X`.
    pub fn eval(self, x: (f64, f64)) -> Vec2L {
        Vec2L::from_null(self.q1().quad(x), self.q2().quad(x))
    }

    /// Largest absolute coefficient.
    pub fn magnitude(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn scaled(self, k: f64) -> QuadraticMap {
        QuadraticMap::from_parts(self.q1().scale(k), self.q2().scale(k))
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// `|H|²`.
    #[inline]
    pub fn h_norm2(self) -> f64 {
        -2.0 * self.h1() * self.h2()
    }

    /// `K = −xv − uy + 2zw`.
    #[inline]
    pub fn k(self) -> f64 {
        -self.x * self.v - self.u * self.y + 2.0 * self.z * self.w
    }

    /// `K_N = −z(u − v) + w(x − y)`.
    #[inline]
    pub fn k_n(self) -> f64 {
        -self.z * (self.u - self.v) + self.w * (self.x - self.y)
    }

    /// `Δ = ¼K² − (uv − w²)(xy − z²)`.
    #[inline]
    pub fn delta(self) -> f64 {
        let k = self.k();
        0.25 * k * k - (self.u * self.v - self.w * self.w) * (self.x * self.y - self.z * self.z)
    }

    /// `|H|² − K`, the trace of `u_Φ`.
    #[inline]
    pub fn trace_phi(self) -> f64 {
        let (mu, nu, mp, np) = (self.mu(), self.nu(), self.mu_p(), self.nu_p());
        -2.0 * (nu * np + mu * mp)
    }

    pub fn phi_form(self) -> PhiForm {
        let (mu, nu, mp, np) = (self.mu(), self.nu(), self.mu_p(), self.nu_p());
        PhiForm {
            p: mp * mp + np * np,
            r: mu * mu + nu * nu,
            m: nu * np + mu * mp,
        }
    }
}

/// The quadratic form `Φ = L² − Q` in null coordinates:
/// `Φ(ν) = p·ν1² + 2m·ν1ν2 + r·ν2²`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhiForm {
    /// `Φ(N1)`.
    pub p: f64,
    /// `Φ(N2)`.
    pub r: f64,
    /// `Φ̃(N1, N2)`.
    pub m: f64,
}

impl PhiForm {
    pub fn value(self, nu: Vec2L) -> f64 {
        let (a, b) = nu.null_coords();
        self.p * a * a + 2.0 * self.m * a * b + self.r * b * b
    }

    pub fn polar(self, n: Vec2L, n2: Vec2L) -> f64 {
        let (a1, a2) = n.null_coords();
        let (b1, b2) = n2.null_coords();
        self.p * a1 * b1 + self.m * (a1 * b2 + a2 * b1) + self.r * a2 * b2
    }

    /// `u_Φ(ν)`, the operator with `⟨u_Φ(a), b⟩ = Φ̃(a, b)`.
    pub fn apply(self, nu: Vec2L) -> Vec2L {
        let (a1, a2) = nu.null_coords();
        Vec2L::from_null(-(self.m * a1 + self.r * a2), -(self.p * a1 + self.m * a2))
    }

    /// Matrix of `u_Φ` acting on null coordinates.
    pub fn operator_null(self) -> Mat2 {
        Mat2::new(-self.m, -self.r, -self.p, -self.m)
    }

    /// Matrix of the bilinear form in canonical coordinates.
    pub fn canonical_matrix(self) -> Sym2 {
        let half = 0.5 * (self.p + self.r);
        Sym2::new(half - self.m, 0.5 * (self.p - self.r), half + self.m)
    }

    pub fn from_canonical_matrix(m: Sym2) -> PhiForm {
        PhiForm {
            p: 0.5 * (m.a11 + 2.0 * m.a12 + m.a22),
            r: 0.5 * (m.a11 - 2.0 * m.a12 + m.a22),
            m: 0.5 * (m.a22 - m.a11),
        }
    }

    #[inline]
    pub fn trace(self) -> f64 {
        -2.0 * self.m
    }

    #[inline]
    pub fn det(self) -> f64 {
        self.m * self.m - self.p * self.r
    }
}

/// Shape operator `S_ν` in the canonical tangent basis.
pub fn shape_operator(q: QuadraticMap, nu: Vec2L) -> Sym2 {
    let (n1, n2) = nu.null_coords();
    q.q1().scale(n2).add(q.q2().scale(n1)).scale(-1.0)
}

/// `L(ν) = ½ tr S_ν`.
pub fn form_l(q: QuadraticMap, nu: Vec2L) -> f64 {
    0.5 * shape_operator(q, nu).trace()
}

/// `Q(ν) = det S_ν`.
pub fn form_q(q: QuadraticMap, nu: Vec2L) -> f64 {
    shape_operator(q, nu).det()
}

/// `A(ν1, ν2)`, half the commutator scalar of `S_ν1` and `S_ν2`.
pub fn form_a(q: QuadraticMap, nu1: Vec2L, nu2: Vec2L) -> f64 {
    0.5 * shape_operator(q, nu1).commutator(shape_operator(q, nu2))
}

/// `Φ(ν) = L(ν)² − Q(ν)`, computed as the squared traceless part of `S_ν`.
pub fn form_phi(q: QuadraticMap, nu: Vec2L) -> f64 {
    let s = shape_operator(q, nu);
    let d = s.half_diff();
    d * d + s.a12 * s.a12
}

/// Polar form `Φ̃` of `Φ`.
pub fn form_phi_polar(q: QuadraticMap, nu1: Vec2L, nu2: Vec2L) -> f64 {
    let s = shape_operator(q, nu1);
    let t = shape_operator(q, nu2);
    s.half_diff() * t.half_diff() + s.a12 * t.a12
}

/// The triple `(L, Φ, A)`: `L(ν) = ⟨H, ν⟩`, the canonical matrix of `Φ̃`
/// and the scalar `A0` with `A(ν1, ν2) = A0·det(ν1, ν2)`.
pub fn forms(q: QuadraticMap) -> (Vec2L, Sym2, f64) {
    (q.mean_vector(), q.phi_form().canonical_matrix(), 0.5 * q.k_n())
}

/// Which nilpotent normal form `u_Φ` takes in the null frame `(Ñ1, Ñ2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixCase {
    /// `[[0, 0], [−1, 0]]`
    A1,
    /// `[[0, −1], [0, 0]]`
    A2,
}

impl MatrixCase {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixCase::A1 => "A1",
            MatrixCase::A2 => "A2",
        }
    }
}

/// Canonical reduction of `u_Φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReductionResult {
    Diagonalizable {
        /// `(ũ1, ũ2)` with `u_Φ(ũ1) = a²ũ1`, `u_Φ(ũ2) = −b²ũ2`.
        frame: Frame2L,
        a2: f64,
        b2: f64,
        /// `H = α·ũ1 + β·ũ2`.
        alpha: f64,
        beta: f64,
    },
    NonDiagonalizable {
        null_frame: (Vec2L, Vec2L),
        matrix_case: MatrixCase,
        /// Coordinates of `H` in `(Ñ1, Ñ2)`.
        h_tilde: (f64, f64),
        zeta: Option<f64>,
    },
    NullPhi,
}

/// Invariants of a quadratic map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantSet {
    pub h: Vec2L,
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

/// Leaf of the rank / `K_N` / `Δ` taxonomy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointClass {
    Umbilic,
    InflectionSpacelike,
    InflectionTimelike,
    InflectionLightlike { zeta: Option<f64> },
    Regular,
    SemiUmbilic,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Umbilic => "umbilic",
            PointClass::InflectionSpacelike => "inflection_spacelike",
            PointClass::InflectionTimelike => "inflection_timelike",
            PointClass::InflectionLightlike { .. } => "inflection_lightlike",
            PointClass::Regular => "regular",
            PointClass::SemiUmbilic => "semi_umbilic",
        }
    }
}

/// Reduction of `u_Φ` with thresholds relative to `q.magnitude()`.
pub fn reduce_phi(q: QuadraticMap) -> ReductionResult {
    reduce_phi_scaled(q, q.magnitude())
}

/// Reduction of `u_Φ` with thresholds relative to `scale`.
pub fn reduce_phi_scaled(q: QuadraticMap, scale: f64) -> ReductionResult {
    reduce_form(q.phi_form(), q.mean_vector(), q.k_n(), q.delta(), scale)
}

/// The reduction depends on `q` only through `Φ`, `H`, `K_N` and `Δ`.
pub(crate) fn reduce_form(phi: PhiForm, h: Vec2L, k_n: f64, delta: f64, scale: f64) -> ReductionResult {
    let (p, r, m) = (phi.p.max(0.0), phi.r.max(0.0), phi.m);
    let s2 = scale * scale;
    if p.max(r).sqrt() <= TAU_CLASS * scale {
        return ReductionResult::NullPhi;
    }
    let t = -2.0 * m;
    let (n1, n2) = null_basis();
    let (h1, h2) = h.null_coords();
    if k_n.abs() <= TAU_CLASS * s2 && t.abs() <= TAU_CLASS * s2 {
        let delta_zero = delta.abs() <= TAU_CLASS * s2 * s2;
        return if p >= r {
            let sp = p.sqrt();
            let h_tilde = (h1 * sp, h2 / sp);
            ReductionResult::NonDiagonalizable {
                null_frame: (n1 * (1.0 / sp), n2 * sp),
                matrix_case: MatrixCase::A1,
                h_tilde,
                zeta: delta_zero.then_some(h_tilde.1),
            }
        } else {
            let sr = r.sqrt();
            let h_tilde = (h1 / sr, h2 * sr);
            ReductionResult::NonDiagonalizable {
                null_frame: (n1 * sr, n2 * (1.0 / sr)),
                matrix_case: MatrixCase::A2,
                h_tilde,
                zeta: delta_zero.then_some(h_tilde.0),
            }
        };
    }
    let root = k_n.hypot(t);
    let a2 = (0.5 * (t + root)).max(0.0);
    let b2 = (0.5 * (root - t)).max(0.0);
    let (sr, sp) = (r.sqrt(), p.sqrt());
    let norm = (2.0 * sr * sp).sqrt();
    let xi1 = Vec2L::from_null(sr / norm, -sp / norm);
    let xi2 = Vec2L::from_null(sr / norm, sp / norm);
    let frame = Frame2L { f1: xi1, f2: xi2 };
    let (alpha, beta) = frame.coords(h);
    ReductionResult::Diagonalizable { frame, a2, b2, alpha, beta }
}

/// All invariants, with the reduction-dependent fields when defined.
pub fn invariants(q: QuadraticMap) -> InvariantSet {
    invariants_with(q, reduce_phi(q))
}

pub fn invariants_scaled(q: QuadraticMap, scale: f64) -> InvariantSet {
    invariants_with(q, reduce_phi_scaled(q, scale))
}

fn invariants_with(q: QuadraticMap, red: ReductionResult) -> InvariantSet {
    let mut inv = InvariantSet {
        h: q.mean_vector(),
        h_norm2: q.h_norm2(),
        k: q.k(),
        k_n: q.k_n(),
        delta: q.delta(),
        zeta: None,
        a2: None,
        b2: None,
        alpha: None,
        beta: None,
    };
    match red {
        ReductionResult::Diagonalizable { a2, b2, alpha, beta, .. } => {
            inv.a2 = Some(a2);
            inv.b2 = Some(b2);
            inv.alpha = Some(alpha);
            inv.beta = Some(beta);
        }
        ReductionResult::NonDiagonalizable { zeta, .. } => inv.zeta = zeta,
        ReductionResult::NullPhi => {}
    }
    inv
}

/// Position in the taxonomy, thresholds relative to `scale`.
pub fn classify(q: QuadraticMap, scale: f64) -> PointClass {
    let s2 = scale * scale;
    if q.magnitude() <= TAU_CLASS * scale {
        return PointClass::Umbilic;
    }
    if q.k_n().abs() > TAU_CLASS * s2 {
        return PointClass::Regular;
    }
    if q.delta().abs() > TAU_CLASS * s2 * s2 {
        return PointClass::SemiUmbilic;
    }
    let t = q.trace_phi();
    if t > TAU_CLASS * s2 {
        PointClass::InflectionSpacelike
    } else if t < -TAU_CLASS * s2 {
        PointClass::InflectionTimelike
    } else {
        let zeta = match reduce_phi_scaled(q, scale) {
            ReductionResult::NonDiagonalizable { zeta, .. } => zeta,
            _ => None,
        };
        PointClass::InflectionLightlike { zeta }
    }
}

/// Relative tolerance used to validate a triple in [`reconstruct`].
pub const RECONSTRUCT_TOL: f64 = 1e-9;

/// Rebuilds a quadratic map from `L` (as the vector `H` with
/// `L(ν) = ⟨H, ν⟩`), the canonical matrix of `Φ̃` and the scalar `A0` with
/// `A(ν1, ν2) = A0·det(ν1, ν2)`.
///
/// With `Φ(ν0) = 1` every shape operator is
/// `S_ν = L(ν)·I + Φ̃(ν0, ν)·E1 − A(ν0, ν)·E2`, `E1 = diag(1, −1)` and
/// `E2 = [[0, 1], [1, 0]]`. The minus sign makes the commutator of the
/// rebuilt operators reproduce `A` rather than `−A`.
pub fn reconstruct(l: Vec2L, phi: Sym2, a0: f64) -> Result<QuadraticMap, GeometryError> {
    let scale = phi.max_abs().max(a0.abs());
    let identity_residual = (phi.det() - a0 * a0).abs();
    let eig_min = 0.5 * (phi.trace() - (phi.a11 - phi.a22).hypot(2.0 * phi.a12));
    let min_phi = eig_min.min(0.0);
    if identity_residual > RECONSTRUCT_TOL * scale * scale || -min_phi > RECONSTRUCT_TOL * scale {
        return Err(GeometryError::InvalidTriple { identity_residual, min_phi });
    }
    if !l.is_finite() || !scale.is_finite() {
        return Err(GeometryError::InvalidTriple { identity_residual: f64::NAN, min_phi: f64::NAN });
    }
    let (h1, h2) = l.null_coords();
    let form = PhiForm::from_canonical_matrix(phi);
    // Fixed scale: the triple carries no information about the magnitude of
    // the traceless part other than Φ itself.
    let red = reduce_form(form, l, 2.0 * a0, 0.0, scale.sqrt());
    let nu0 = match red {
        ReductionResult::NullPhi => {
            return Ok(QuadraticMap::from_parts(Sym2::IDENTITY.scale(h1), Sym2::IDENTITY.scale(h2)));
        }
        ReductionResult::Diagonalizable { frame, a2, b2, .. } => {
            if a2 >= b2 {
                frame.f1 * (1.0 / a2.sqrt())
            } else {
                frame.f2 * (1.0 / b2.sqrt())
            }
        }
        ReductionResult::NonDiagonalizable { null_frame, matrix_case, .. } => match matrix_case {
            MatrixCase::A1 => null_frame.0,
            MatrixCase::A2 => null_frame.1,
        },
    };
    // The Φ(ν0) = 1 normalisation is exact only up to rounding; absorb it.
    let norm = form.value(nu0).sqrt();
    let nu0 = nu0 * (1.0 / norm);
    let shape = |nu: Vec2L| -> Sym2 {
        let lv = inner2(l, nu);
        let d = form.polar(nu0, nu);
        let o = -a0 * crate::lorentz::mixed_product2(nu0, nu);
        Sym2::new(lv + d, o, lv - d)
    };
    let (n1, n2) = null_basis();
    let q2 = shape(n1).scale(-1.0);
    let q1 = shape(n2).scale(-1.0);
    Ok(QuadraticMap::from_parts(q1, q2))
}

/// `g1 ∘ q ∘ g2` with `g1 = boost(rapidity)` and `g2 = rotation(theta)`.
pub fn act(q: QuadraticMap, rapidity: f64, theta: f64) -> QuadraticMap {
    let r = rotation(theta);
    let e = rapidity.exp();
    QuadraticMap::from_parts(q.q1().congruence(r).scale(e), q.q2().congruence(r).scale(1.0 / e))
}

/// `g ∘ q` for a linear map `g` of ℝ^{1,1} given in canonical coordinates.
pub fn compose_normal(g: Mat2, q: QuadraticMap) -> QuadraticMap {
    // g acts on the values; rewrite N1, N2 images in null coordinates.
    let (n1, n2) = null_basis();
    let (a11, a21) = g.apply(n1).null_coords();
    let (a12, a22) = g.apply(n2).null_coords();
    let (q1, q2) = (q.q1(), q.q2());
    QuadraticMap::from_parts(q1.scale(a11).add(q2.scale(a12)), q1.scale(a21).add(q2.scale(a22)))
}

/// Whether two maps lie in the same orbit, up to the finite reflection
/// groups that the invariants cannot see.
pub fn equivalent(qa: QuadraticMap, qb: QuadraticMap, tol: f64) -> bool {
    let scale = qa.magnitude().max(qb.magnitude());
    let ra = reduce_phi_scaled(qa, scale);
    let rb = reduce_phi_scaled(qb, scale);
    let c = |a: f64, b: f64| close(a, b, tol);
    match (ra, rb) {
        (ReductionResult::Diagonalizable { .. }, ReductionResult::Diagonalizable { .. }) => {
            c(qa.h_norm2(), qb.h_norm2())
                && c(qa.k(), qb.k())
                && c(qa.k_n().abs(), qb.k_n().abs())
                && c(qa.delta(), qb.delta())
        }
        (
            ReductionResult::NonDiagonalizable { zeta: za, .. },
            ReductionResult::NonDiagonalizable { zeta: zb, .. },
        ) => match (za, zb) {
            (Some(a), Some(b)) => c(a.abs(), b.abs()),
            (None, None) => c(qa.k(), qb.k()) && c(qa.delta(), qb.delta()),
            _ => false,
        },
        (ReductionResult::NullPhi, ReductionResult::NullPhi) => {
            let zero_a = qa.mean_vector().magnitude() <= TAU_CLASS * scale;
            let zero_b = qb.mean_vector().magnitude() <= TAU_CLASS * scale;
            zero_a == zero_b && c(qa.h_norm2(), qb.h_norm2())
        }
        _ => false,
    }
}
