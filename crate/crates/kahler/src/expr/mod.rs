//! Expressions in the variable `z = x + y·dxdy`: parsing, evaluation as
//! edif-valued fields on the plane, symbolic differentiation and
//! Cauchy-Riemann verification.

mod calculus;
mod parse;

pub use calculus::{
    cr_residual, default_fd_step, is_strict_harmonic, kahler_derivative, sample_grid, CrResidual,
};
pub use parse::parse_expr;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{Edif, Elementary};
use crate::error::{Error, Result};

/// A point of the real plane. Embeds into the algebra as the edif
/// `x + y·dxdy`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point::new(0.0, 0.0);

    pub const fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn to_edif(self) -> Edif {
        Edif::new(self.x, self.y)
    }

    pub fn from_edif(w: Edif) -> Point {
        Point::new(w.u, w.v)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance_to(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Anything that can be evaluated as an edif-valued field on the plane.
///
/// Expression trees are the primary implementor; [`RawField`] provides an
/// escape hatch for component-wise `(u(x,y), v(x,y))` fields that are not
/// functions of `z`, and the numeric operators (Kähler derivative,
/// Cauchy-Riemann checks, valuations) accept either.
pub trait Field {
    fn eval(&self, at: Point) -> Result<Edif>;
}

/// A field given directly by its scalar and `dxdy` components. Unlike an
/// expression in `z` it need not be strict harmonic, which makes it the
/// natural negative test case for the Cauchy-Riemann checker.
#[derive(Debug, Clone, Copy)]
pub struct RawField {
    pub u: fn(f64, f64) -> f64,
    pub v: fn(f64, f64) -> f64,
}

impl Field for RawField {
    fn eval(&self, at: Point) -> Result<Edif> {
        let w = Edif::new((self.u)(at.x, at.y), (self.v)(at.x, at.y));
        if !w.is_finite() {
            return Err(Error::SingularEvaluation { x: at.x, y: at.y });
        }
        Ok(w)
    }
}

/// Expression tree over the single variable `z`.
///
/// Integer powers are kept apart from real powers: the former evaluate by
/// square-and-multiply (exact on the negative real axis), the latter go
/// through the principal-branch `exp·log` route.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Const(Edif),
    Z,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    IntPow(Box<ExprAst>, i32),
    RealPow(Box<ExprAst>, f64),
    Apply(Elementary, Box<ExprAst>),
}

impl ExprAst {
    pub fn z() -> ExprAst {
        ExprAst::Z
    }

    pub fn constant(w: Edif) -> ExprAst {
        ExprAst::Const(w)
    }

    pub fn num(u: f64) -> ExprAst {
        ExprAst::Const(Edif::scalar(u))
    }

    pub fn ipow(self, n: i32) -> ExprAst {
        ExprAst::IntPow(Box::new(self), n)
    }

    pub fn apply(self, f: Elementary) -> ExprAst {
        ExprAst::Apply(f, Box::new(self))
    }

    /// Substitute `z = x + y·dxdy` and fold the tree with edif arithmetic.
    ///
    /// Pole hits (`ZeroDivisor`/`ZeroEdif`) surface as
    /// [`Error::SingularEvaluation`] carrying the point; overflow surfaces
    /// as [`Error::NonFinite`].
    pub fn eval(&self, at: Point) -> Result<Edif> {
        let w = self
            .eval_inner(at.to_edif())
            .map_err(|e| e.at_point(at.x, at.y))?;
        if !w.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(w)
    }

    fn eval_inner(&self, z: Edif) -> Result<Edif> {
        match self {
            ExprAst::Const(w) => Ok(*w),
            ExprAst::Z => Ok(z),
            ExprAst::Neg(f) => Ok(-f.eval_inner(z)?),
            ExprAst::Add(f, g) => Ok(f.eval_inner(z)? + g.eval_inner(z)?),
            ExprAst::Sub(f, g) => Ok(f.eval_inner(z)? - g.eval_inner(z)?),
            ExprAst::Mul(f, g) => Ok(f.eval_inner(z)? * g.eval_inner(z)?),
            ExprAst::Div(f, g) => f.eval_inner(z)? / g.eval_inner(z)?,
            ExprAst::IntPow(f, n) => f.eval_inner(z)?.ipow(*n),
            ExprAst::RealPow(f, c) => f.eval_inner(z)?.powf(*c),
            ExprAst::Apply(func, f) => f.eval_inner(z)?.apply(*func),
        }
    }

    /// Number of nodes, a crude size measure used by tests.
    pub fn node_count(&self) -> usize {
        match self {
            ExprAst::Const(_) | ExprAst::Z => 1,
            ExprAst::Neg(f)
            | ExprAst::IntPow(f, _)
            | ExprAst::RealPow(f, _)
            | ExprAst::Apply(_, f) => 1 + f.node_count(),
            ExprAst::Add(f, g) | ExprAst::Sub(f, g) | ExprAst::Mul(f, g) | ExprAst::Div(f, g) => {
                1 + f.node_count() + g.node_count()
            }
        }
    }
}

impl Field for ExprAst {
    fn eval(&self, at: Point) -> Result<Edif> {
        ExprAst::eval(self, at)
    }
}

impl Add for ExprAst {
    type Output = ExprAst;
    fn add(self, o: ExprAst) -> ExprAst {
        ExprAst::Add(Box::new(self), Box::new(o))
    }
}

impl Sub for ExprAst {
    type Output = ExprAst;
    fn sub(self, o: ExprAst) -> ExprAst {
        ExprAst::Sub(Box::new(self), Box::new(o))
    }
}

impl Mul for ExprAst {
    type Output = ExprAst;
    fn mul(self, o: ExprAst) -> ExprAst {
        ExprAst::Mul(Box::new(self), Box::new(o))
    }
}

impl Div for ExprAst {
    type Output = ExprAst;
    fn div(self, o: ExprAst) -> ExprAst {
        ExprAst::Div(Box::new(self), Box::new(o))
    }
}

impl Neg for ExprAst {
    type Output = ExprAst;
    fn neg(self) -> ExprAst {
        ExprAst::Neg(Box::new(self))
    }
}

// Rendering. The output re-parses to an expression with bit-identical
// evaluation; precedence levels below mirror the grammar (sum < product <
// power < atom).
const PREC_SUM: u8 = 1;
const PREC_PROD: u8 = 2;
const PREC_POW: u8 = 3;
const PREC_ATOM: u8 = 4;

impl ExprAst {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = match self {
            ExprAst::Add(..) | ExprAst::Sub(..) => PREC_SUM,
            ExprAst::Mul(..) | ExprAst::Div(..) => PREC_PROD,
            // A leading minus binds looser than '*' in the grammar, so a Neg
            // is only safe bare at sum level.
            ExprAst::Neg(_) => PREC_SUM,
            ExprAst::IntPow(..) | ExprAst::RealPow(..) => PREC_POW,
            ExprAst::Z | ExprAst::Apply(..) => PREC_ATOM,
            ExprAst::Const(w) => {
                let plain_scalar = w.v == 0.0 && w.u.is_sign_positive();
                let unit_dxdy = w.u == 0.0 && w.u.is_sign_positive() && w.v == 1.0;
                if plain_scalar || unit_dxdy {
                    PREC_ATOM
                } else {
                    PREC_SUM // renders with a sign or as a sum, needs parens
                }
            }
        };
        if prec < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            ExprAst::Const(w) => {
                // Printing cannot express a negative-zero component, so
                // normalize; `x + 0.0` flips only −0.0.
                let (u, v) = (w.u + 0.0, w.v + 0.0);
                if v == 0.0 && u.is_sign_positive() {
                    write!(f, "{u}")
                } else if u == 0.0 && u.is_sign_positive() && v == 1.0 {
                    write!(f, "I")
                } else {
                    // The trailing `+ v*I` re-parses with exactly these
                    // component bits: the sum's zero parts vanish.
                    write!(f, "({u} + {v}*I)")
                }
            }
            ExprAst::Z => write!(f, "z"),
            ExprAst::Neg(g) => {
                write!(f, "-")?;
                g.fmt_prec(f, PREC_POW)
            }
            ExprAst::Add(a, b) => {
                a.fmt_prec(f, PREC_SUM)?;
                write!(f, " + ")?;
                b.fmt_prec(f, PREC_SUM + 1)
            }
            ExprAst::Sub(a, b) => {
                a.fmt_prec(f, PREC_SUM)?;
                write!(f, " - ")?;
                b.fmt_prec(f, PREC_SUM + 1)
            }
            ExprAst::Mul(a, b) => {
                a.fmt_prec(f, PREC_PROD)?;
                write!(f, "*")?;
                b.fmt_prec(f, PREC_PROD + 1)
            }
            ExprAst::Div(a, b) => {
                a.fmt_prec(f, PREC_PROD)?;
                write!(f, "/")?;
                b.fmt_prec(f, PREC_PROD + 1)
            }
            ExprAst::IntPow(g, n) => {
                g.fmt_prec(f, PREC_ATOM)?;
                write!(f, "^{n}")
            }
            ExprAst::RealPow(g, c) => {
                g.fmt_prec(f, PREC_ATOM)?;
                write!(f, "^{c}")
            }
            ExprAst::Apply(func, g) => {
                write!(f, "{func}(")?;
                g.fmt_prec(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
