//! Arithmetic for the Kähler algebra of the real plane and its even
//! subalgebra.
//!
//! The algebra is spanned by `{1, dx, dy, dxdy}` with `dx² = dy² = 1` and
//! `dy·dx = −dx·dy`, so the unit 2-form `dxdy` squares to −1. The even
//! elements `u + v·dxdy` ("edifs") form a commutative field isomorphic to
//! the complex numbers under `u + v·dxdy ↔ u + iv`; that isomorphism is
//! never used here — every function below is computed with real arithmetic
//! only — but it is what the test suite checks against.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// General element `s + a·dx + b·dy + p·dxdy` of the Kähler algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Multivector {
    /// Scalar part.
    pub s: f64,
    /// Coefficient of `dx`.
    pub a: f64,
    /// Coefficient of `dy`.
    pub b: f64,
    /// Coefficient of `dxdy`.
    pub p: f64,
}

impl Multivector {
    pub const ZERO: Multivector = Multivector::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Multivector = Multivector::new(1.0, 0.0, 0.0, 0.0);
    pub const DX: Multivector = Multivector::new(0.0, 1.0, 0.0, 0.0);
    pub const DY: Multivector = Multivector::new(0.0, 0.0, 1.0, 0.0);
    pub const DXDY: Multivector = Multivector::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(s: f64, a: f64, b: f64, p: f64) -> Multivector {
        Multivector { s, a, b, p }
    }

    /// Even (grade 0 + grade 2) part as an edif.
    pub fn even_part(self) -> Edif {
        Edif::new(self.s, self.p)
    }

    /// Odd (grade 1) part.
    pub fn odd_part(self) -> Multivector {
        Multivector::new(0.0, self.a, self.b, 0.0)
    }

    /// Euclidean norm over the four components.
    pub fn norm(self) -> f64 {
        (self.s * self.s + self.a * self.a + self.b * self.b + self.p * self.p).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.s.is_finite() && self.a.is_finite() && self.b.is_finite() && self.p.is_finite()
    }
}

impl From<Edif> for Multivector {
    fn from(w: Edif) -> Multivector {
        Multivector::new(w.u, 0.0, 0.0, w.v)
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, o: Multivector) -> Multivector {
        Multivector::new(self.s + o.s, self.a + o.a, self.b + o.b, self.p + o.p)
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, o: Multivector) -> Multivector {
        Multivector::new(self.s - o.s, self.a - o.a, self.b - o.b, self.p - o.p)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector::new(-self.s, -self.a, -self.b, -self.p)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, k: f64) -> Multivector {
        Multivector::new(self.s * k, self.a * k, self.b * k, self.p * k)
    }
}

/// Clifford product. Expanding over the basis table
/// `dx·dx = dy·dy = 1`, `dx·dy = dxdy = −dy·dx`,
/// `dx·dxdy = dy`, `dxdy·dx = −dy`, `dy·dxdy = −dx`, `dxdy·dy = dx`,
/// `dxdy·dxdy = −1`.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, o: Multivector) -> Multivector {
        Multivector {
            s: self.s * o.s + self.a * o.a + self.b * o.b - self.p * o.p,
            a: self.s * o.a + self.a * o.s - self.b * o.p + self.p * o.b,
            b: self.s * o.b + self.b * o.s + self.a * o.p - self.p * o.a,
            p: self.s * o.p + self.p * o.s + self.a * o.b - self.b * o.a,
        }
    }
}

/// Even differential form `u + v·dxdy`, the plane's stand-in for a complex
/// number.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Edif {
    /// Scalar part.
    pub u: f64,
    /// `dxdy` part.
    pub v: f64,
}

impl Edif {
    pub const ZERO: Edif = Edif::new(0.0, 0.0);
    pub const ONE: Edif = Edif::new(1.0, 0.0);
    /// The unit 2-form, squaring to −1.
    pub const DXDY: Edif = Edif::new(0.0, 1.0);

    pub const fn new(u: f64, v: f64) -> Edif {
        Edif { u, v }
    }

    pub const fn scalar(u: f64) -> Edif {
        Edif::new(u, 0.0)
    }

    /// `u² + v²`, the squared modulus.
    pub fn norm_sq(self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// Euclidean norm `ρ = √(u² + v²)`.
    pub fn norm(self) -> f64 {
        self.u.hypot(self.v)
    }

    pub fn is_finite(self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.u == 0.0 && self.v == 0.0
    }

    /// Multiplicative inverse `(u − v·dxdy)/(u² + v²)`.
    ///
    /// Fails with [`Error::ZeroDivisor`] when `u² + v² = 0`, which on a
    /// field evaluation marks a pole.
    pub fn inverse(self) -> Result<Edif> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        let w = Edif::new(self.u / n, -self.v / n);
        if !w.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(w)
    }

    /// Polar decomposition `w = ρ(cos φ + dxdy·sin φ)` with the principal
    /// angle `φ ∈ (−π, π]`.
    pub fn polar(self) -> Result<PolarForm> {
        if self.is_zero() {
            return Err(Error::ZeroEdif);
        }
        Ok(PolarForm {
            rho: self.norm(),
            phi: self.v.atan2(self.u),
        })
    }

    /// Integer power by square-and-multiply; negative exponents invert
    /// first. Exact on the negative real axis, unlike an exp·log route.
    pub fn ipow(self, n: i32) -> Result<Edif> {
        let (mut base, mut e) = if n < 0 {
            (self.inverse()?, n.unsigned_abs())
        } else {
            (self, n as u32)
        };
        let mut acc = Edif::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if !acc.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(acc)
    }

    /// Real power through the principal branch, `exp(c·log w)`.
    pub fn powf(self, c: f64) -> Result<Edif> {
        if self.is_zero() {
            return Err(Error::ZeroEdif);
        }
        (Edif::scalar(c) * self.apply(Elementary::Log)?).apply(Elementary::Exp)
    }

    /// Apply an elementary function on the principal branch.
    pub fn apply(self, f: Elementary) -> Result<Edif> {
        let Edif { u, v } = self;
        let w = match f {
            Elementary::Exp => {
                let r = u.exp();
                Edif::new(r * v.cos(), r * v.sin())
            }
            Elementary::Log => {
                let polar = self.polar()?;
                Edif::new(polar.rho.ln(), polar.phi)
            }
            Elementary::Sin => Edif::new(u.sin() * v.cosh(), u.cos() * v.sinh()),
            Elementary::Cos => Edif::new(u.cos() * v.cosh(), -u.sin() * v.sinh()),
            Elementary::Tan => {
                let s = self.apply(Elementary::Sin)?;
                let c = self.apply(Elementary::Cos)?;
                s * c.inverse()?
            }
            Elementary::Sinh => Edif::new(u.sinh() * v.cos(), u.cosh() * v.sin()),
            Elementary::Cosh => Edif::new(u.cosh() * v.cos(), u.sinh() * v.sin()),
            Elementary::Sqrt => {
                let polar = self.polar()?;
                let r = polar.rho.sqrt();
                let h = 0.5 * polar.phi;
                Edif::new(r * h.cos(), r * h.sin())
            }
        };
        if !w.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(w)
    }
}

impl From<f64> for Edif {
    fn from(u: f64) -> Edif {
        Edif::scalar(u)
    }
}

impl Add for Edif {
    type Output = Edif;
    fn add(self, o: Edif) -> Edif {
        Edif::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for Edif {
    type Output = Edif;
    fn sub(self, o: Edif) -> Edif {
        Edif::new(self.u - o.u, self.v - o.v)
    }
}

impl Neg for Edif {
    type Output = Edif;
    fn neg(self) -> Edif {
        Edif::new(-self.u, -self.v)
    }
}

/// Even-subalgebra product, the restriction of the Clifford product:
/// `(u₁u₂ − v₁v₂) + (u₁v₂ + v₁u₂)·dxdy`. Commutative and associative.
impl Mul for Edif {
    type Output = Edif;
    fn mul(self, o: Edif) -> Edif {
        Edif::new(self.u * o.u - self.v * o.v, self.u * o.v + self.v * o.u)
    }
}

impl Mul<f64> for Edif {
    type Output = Edif;
    fn mul(self, k: f64) -> Edif {
        Edif::new(self.u * k, self.v * k)
    }
}

impl Div for Edif {
    type Output = Result<Edif>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Edif) -> Result<Edif> {
        Ok(self * o.inverse()?)
    }
}

impl fmt::Display for Edif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_sign_negative() {
            write!(f, "{} - {}\u{b7}dxdy", self.u, -self.v)
        } else {
            write!(f, "{} + {}\u{b7}dxdy", self.u, self.v)
        }
    }
}

/// Polar form of a nonzero edif: modulus `ρ ≥ 0` and angle `φ ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub rho: f64,
    pub phi: f64,
}

impl PolarForm {
    /// Rebuild the edif `ρ·cos φ + ρ·sin φ·dxdy`.
    pub fn reconstruct(self) -> Edif {
        Edif::new(self.rho * self.phi.cos(), self.rho * self.phi.sin())
    }
}

/// The elementary function library closed on edifs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Sqrt,
}

impl Elementary {
    pub const ALL: [Elementary; 8] = [
        Elementary::Exp,
        Elementary::Log,
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Tan,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Log => "log",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Tan => "tan",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Sqrt => "sqrt",
        }
    }
}

impl FromStr for Elementary {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Elementary, ()> {
        Elementary::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or(())
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
