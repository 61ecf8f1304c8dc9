//! Extrinsic geometry of spacelike surfaces immersed in Minkowski space
//! ℝ^{3,1} (metric `dx1² + dx2² + dx3² − dx4²`).
//!
//! The crate is organised bottom-up:
//!
//! * [`lorentz`]: exact linear algebra of the Minkowski plane ℝ^{1,1} and of
//!   ℝ^{3,1} (null bases, boosts, mixed products, causal character).
//! * [`quadratic`]: quadratic maps ℝ² → ℝ^{1,1}, their forms `L`, `Q`, `A`,
//!   `Φ`, the invariants `H`, `K`, `K_N`, `Δ`, `ζ`, the reduction of `u_Φ`,
//!   orbit classification and reconstruction.
//! * [`ellipse`]: the curvature ellipse (parameterisation, intrinsic
//!   equation, support function, degenerate segments).
//! * [`jet`] and [`surface`]: second-order jets of charts, fundamental forms,
//!   adapted frames, the lightcone normal and a corpus of fixture surfaces.
//! * [`fields`]: binary differential equations for ν-principal, asymptotic
//!   and mean directionally curved lines, line tracing, umbilic detection,
//!   indices, Darbouxian types and Poincaré–Hopf bookkeeping.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and parallel scans live in the `spacelike-surf` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod ellipse;
pub mod error;
pub mod fields;
pub mod jet;
pub mod lorentz;
pub mod quadratic;
pub mod surface;
pub mod tol;

pub use error::GeometryError;
pub use lorentz::{CausalCharacter, Frame2L, Mat2, Vec2L, Vec4L};
pub use quadratic::{InvariantSet, PointClass, QuadraticMap, ReductionResult, Sym2};
