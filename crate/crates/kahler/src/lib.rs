//! Calculus of one "complex-like" variable done entirely on the real plane.
//!
//! The crate works in the Kähler algebra of the plane — the Clifford algebra
//! of differential forms with basis `{1, dx, dy, dxdy}` — whose even
//! elements `u + v·dxdy` (*edifs*) behave exactly like complex numbers while
//! remaining real objects. Holomorphic functions are replaced by *strict
//! harmonic* edif fields (fields annihilated by the Kähler derivative
//! `∂ = dx·∂/∂x + dy·∂/∂y`, equivalently satisfying the Cauchy-Riemann
//! relations), and contour integration is replaced by the *valuation*
//! `⟨w⟩_c = ∫_c(u dx − v dy) + dxdy·∫_c(u dy + v dx)`.
//!
//! On top of that foundation the crate provides:
//!
//! - [`algebra`] — exact value-semantics arithmetic for multivectors and
//!   edifs, polar form, integer powers and the elementary function library;
//! - [`expr`] — an expression parser for fields of `z = x + y·dxdy`,
//!   evaluation, symbolic differentiation, the numeric Kähler derivative and
//!   Cauchy-Riemann verification;
//! - [`contour`] — oriented curves, adaptive quadrature valuations and
//!   valuation potentials;
//! - [`cauchy`] — the integral theorems as executable checks and solvers:
//!   Cauchy-Goursat residuals, kernel valuations, the integral and
//!   derivative formulas, residues, multiply-connected decomposition and
//!   co-valuation round-trips.
//!
//! Everything is computed with plain `f64` arithmetic; no complex number
//! type appears anywhere in the implementation.

pub mod algebra;
pub mod cauchy;
pub mod contour;
pub mod error;
pub mod expr;
pub mod quad;

pub use algebra::{Edif, Elementary, Multivector, PolarForm};
pub use cauchy::{PoleSpec, ResidueReport};
pub use contour::{
    potential_on_segment, valuation, valuation_potential, valuation_traced, Curve, Orientation,
};
pub use error::{Error, Result};
pub use expr::{
    is_strict_harmonic, kahler_derivative, parse_expr, CrResidual, ExprAst, Field, Point, RawField,
};
pub use quad::{IntegrandSample, QuadratureConfig, ValuationResult};
