//! Symbolic and numeric differentiation of fields, and the Cauchy-Riemann
//! (strict harmonicity) test.

use serde::{Deserialize, Serialize};

use crate::algebra::{Edif, Elementary, Multivector};
use crate::error::{Error, Result};
use crate::expr::{ExprAst, Field, Point};

/// Residuals of the Cauchy-Riemann relations at a point:
/// `r1 = u,x − v,y` and `r2 = u,y + v,x`. Both vanish exactly when the
/// field is strict harmonic there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrResidual {
    pub r1: f64,
    pub r2: f64,
    pub at: Point,
}

impl CrResidual {
    /// Euclidean magnitude of the residual pair.
    pub fn magnitude(&self) -> f64 {
        self.r1.hypot(self.r2)
    }
}

impl ExprAst {
    /// Symbolic derivative with respect to `z`. For fields composed from
    /// `z` this coincides with `∂/∂x`, the co-valuation operator.
    ///
    /// Every node kind in the grammar is differentiable, so this is total;
    /// light constant folding keeps iterated derivatives from ballooning.
    pub fn differentiate(&self) -> ExprAst {
        match self {
            ExprAst::Const(_) => ExprAst::num(0.0),
            ExprAst::Z => ExprAst::num(1.0),
            ExprAst::Neg(f) => neg_s(f.differentiate()),
            ExprAst::Add(f, g) => add_s(f.differentiate(), g.differentiate()),
            ExprAst::Sub(f, g) => sub_s(f.differentiate(), g.differentiate()),
            ExprAst::Mul(f, g) => add_s(
                mul_s(f.differentiate(), (**g).clone()),
                mul_s((**f).clone(), g.differentiate()),
            ),
            ExprAst::Div(f, g) => {
                let num = sub_s(
                    mul_s(f.differentiate(), (**g).clone()),
                    mul_s((**f).clone(), g.differentiate()),
                );
                ExprAst::Div(Box::new(num), Box::new((**g).clone().ipow(2)))
            }
            ExprAst::IntPow(f, n) => match n {
                0 => ExprAst::num(0.0),
                1 => f.differentiate(),
                _ => mul_s(
                    mul_s(ExprAst::num(f64::from(*n)), (**f).clone().ipow(n - 1)),
                    f.differentiate(),
                ),
            },
            ExprAst::RealPow(f, c) => mul_s(
                mul_s(
                    ExprAst::num(*c),
                    ExprAst::RealPow(Box::new((**f).clone()), c - 1.0),
                ),
                f.differentiate(),
            ),
            ExprAst::Apply(func, f) => {
                let inner = f.differentiate();
                let arg = (**f).clone();
                match func {
                    Elementary::Exp => mul_s(arg.apply(Elementary::Exp), inner),
                    Elementary::Log => ExprAst::Div(Box::new(inner), Box::new(arg)),
                    Elementary::Sin => mul_s(arg.apply(Elementary::Cos), inner),
                    Elementary::Cos => neg_s(mul_s(arg.apply(Elementary::Sin), inner)),
                    Elementary::Tan => ExprAst::Div(
                        Box::new(inner),
                        Box::new(arg.apply(Elementary::Cos).ipow(2)),
                    ),
                    Elementary::Sinh => mul_s(arg.apply(Elementary::Cosh), inner),
                    Elementary::Cosh => mul_s(arg.apply(Elementary::Sinh), inner),
                    Elementary::Sqrt => ExprAst::Div(
                        Box::new(inner),
                        Box::new(mul_s(ExprAst::num(2.0), arg.apply(Elementary::Sqrt))),
                    ),
                }
            }
        }
    }
}

fn const_of(e: &ExprAst) -> Option<Edif> {
    match e {
        ExprAst::Const(w) => Some(*w),
        _ => None,
    }
}

fn add_s(a: ExprAst, b: ExprAst) -> ExprAst {
    match (const_of(&a), const_of(&b)) {
        (Some(ca), Some(cb)) => ExprAst::constant(ca + cb),
        (Some(ca), None) if ca.is_zero() => b,
        (None, Some(cb)) if cb.is_zero() => a,
        _ => a + b,
    }
}

fn sub_s(a: ExprAst, b: ExprAst) -> ExprAst {
    match (const_of(&a), const_of(&b)) {
        (Some(ca), Some(cb)) => ExprAst::constant(ca - cb),
        (Some(ca), None) if ca.is_zero() => neg_s(b),
        (None, Some(cb)) if cb.is_zero() => a,
        _ => a - b,
    }
}

fn mul_s(a: ExprAst, b: ExprAst) -> ExprAst {
    match (const_of(&a), const_of(&b)) {
        (Some(ca), Some(cb)) => ExprAst::constant(ca * cb),
        (Some(ca), None) if ca.is_zero() => ExprAst::num(0.0),
        (None, Some(cb)) if cb.is_zero() => ExprAst::num(0.0),
        (Some(ca), None) if ca == Edif::ONE => b,
        (None, Some(cb)) if cb == Edif::ONE => a,
        _ => a * b,
    }
}

fn neg_s(a: ExprAst) -> ExprAst {
    match const_of(&a) {
        Some(c) => ExprAst::constant(-c),
        None => -a,
    }
}

/// Default central-difference step: `∛ε · max(1, |x|, |y|)`, balancing
/// second-order truncation against rounding.
pub fn default_fd_step(at: Point) -> f64 {
    f64::EPSILON.cbrt() * at.x.abs().max(at.y.abs()).max(1.0)
}

/// Numeric Kähler derivative `∂w = dx·∂w/∂x + dy·∂w/∂y` by central finite
/// differences.
///
/// For `w = u + v·dxdy` the Clifford products collapse the result onto the
/// odd part `(u,x − v,y)·dx + (u,y + v,x)·dy`, which vanishes exactly when
/// the field is strict harmonic. Any singular stencil point fails the call.
pub fn kahler_derivative<F: Field + ?Sized>(
    f: &F,
    at: Point,
    step: Option<f64>,
) -> Result<Multivector> {
    let h = step.unwrap_or_else(|| default_fd_step(at));
    if h <= 0.0 || h.is_nan() || !at.is_finite() {
        return Err(Error::Config("finite point and positive step required"));
    }
    let east = f.eval(Point::new(at.x + h, at.y))?;
    let west = f.eval(Point::new(at.x - h, at.y))?;
    let north = f.eval(Point::new(at.x, at.y + h))?;
    let south = f.eval(Point::new(at.x, at.y - h))?;
    let inv2h = 1.0 / (2.0 * h);
    let ux = (east.u - west.u) * inv2h;
    let vx = (east.v - west.v) * inv2h;
    let uy = (north.u - south.u) * inv2h;
    let vy = (north.v - south.v) * inv2h;
    let d = Multivector::new(0.0, ux - vy, uy + vx, 0.0);
    if !d.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(d)
}

/// Cauchy-Riemann residual of a field at one point, computed from the
/// numeric Kähler derivative.
pub fn cr_residual<F: Field + ?Sized>(f: &F, at: Point, step: Option<f64>) -> Result<CrResidual> {
    let d = kahler_derivative(f, at, step)?;
    Ok(CrResidual {
        r1: d.a,
        r2: d.b,
        at,
    })
}

/// Sample-based strict-harmonicity test: true iff the worst Cauchy-Riemann
/// residual magnitude over the samples stays within `tol`. Returns the
/// worst residual for diagnostics either way.
pub fn is_strict_harmonic<F: Field + ?Sized>(
    f: &F,
    samples: &[Point],
    tol: f64,
) -> Result<(bool, CrResidual)> {
    if samples.is_empty() {
        return Err(Error::Config("sample list must not be empty"));
    }
    if tol < 0.0 || tol.is_nan() {
        return Err(Error::Config("tolerance must be non-negative"));
    }
    let mut worst: Option<CrResidual> = None;
    for &p in samples {
        let r = cr_residual(f, p, None)?;
        if worst.as_ref().is_none_or(|w| r.magnitude() > w.magnitude()) {
            worst = Some(r);
        }
    }
    let worst = worst.unwrap();
    Ok((worst.magnitude() <= tol, worst))
}

/// Regular grid of sample points, `n × n` over `[x0, x1] × [y0, y1]`.
pub fn sample_grid(x0: f64, x1: f64, y0: f64, y1: f64, n: usize) -> Vec<Point> {
    assert!(n >= 1, "grid needs at least one point per axis");
    let step = |lo: f64, hi: f64, i: usize| {
        if n == 1 {
            0.5 * (lo + hi)
        } else {
            lo + (hi - lo) * (i as f64) / ((n - 1) as f64)
        }
    };
    let mut points = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            points.push(Point::new(step(x0, x1, i), step(y0, y1, j)));
        }
    }
    points
}
