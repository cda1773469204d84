//! Independent complex-number reference implementations.
//!
//! The library never touches complex numbers, so `num_complex` provides a
//! fully independent oracle under the correspondence `u + v·dxdy ↔ u + iv`:
//! field evaluation folds the same syntax tree with complex arithmetic, and
//! valuations are checked against a dense-trapezoid contour integral of
//! `g(ζ) dζ`.

use kahler::{Curve, Edif, Elementary, ExprAst, Orientation, Point};
use num_complex::Complex64;

pub fn iso(w: Edif) -> Complex64 {
    Complex64::new(w.u, w.v)
}

/// Evaluate the expression with complex arithmetic.
pub fn eval_complex(ast: &ExprAst, z: Complex64) -> Complex64 {
    match ast {
        ExprAst::Const(w) => iso(*w),
        ExprAst::Z => z,
        ExprAst::Neg(f) => -eval_complex(f, z),
        ExprAst::Add(f, g) => eval_complex(f, z) + eval_complex(g, z),
        ExprAst::Sub(f, g) => eval_complex(f, z) - eval_complex(g, z),
        ExprAst::Mul(f, g) => eval_complex(f, z) * eval_complex(g, z),
        ExprAst::Div(f, g) => eval_complex(f, z) / eval_complex(g, z),
        ExprAst::IntPow(f, n) => eval_complex(f, z).powi(*n),
        ExprAst::RealPow(f, c) => eval_complex(f, z).powf(*c),
        ExprAst::Apply(func, f) => {
            let w = eval_complex(f, z);
            match func {
                Elementary::Exp => w.exp(),
                Elementary::Log => w.ln(),
                Elementary::Sin => w.sin(),
                Elementary::Cos => w.cos(),
                Elementary::Tan => w.tan(),
                Elementary::Sinh => w.sinh(),
                Elementary::Cosh => w.cosh(),
                Elementary::Sqrt => w.sqrt(),
            }
        }
    }
}

fn point_c(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

/// Reference contour integral `∮ g(ζ) dζ` by dense trapezoid sums with
/// `samples` integrand evaluations spread over the curve. Under the
/// isomorphism this is exactly the valuation of the field.
pub fn oracle_valuation(ast: &ExprAst, curve: &Curve, samples: usize) -> Complex64 {
    match curve {
        Curve::Circle {
            center,
            radius,
            orientation,
        } => {
            let sweep = match orientation {
                Orientation::Ccw => std::f64::consts::TAU,
                Orientation::Cw => -std::f64::consts::TAU,
            };
            // uniform sums are trapezoid sums on a periodic integrand
            let n = samples.max(16);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let th = sweep * (k as f64) / (n as f64);
                let zeta =
                    Complex64::new(center.x + radius * th.cos(), center.y + radius * th.sin());
                let dzeta =
                    Complex64::new(-radius * th.sin(), radius * th.cos()) * (sweep / n as f64);
                acc += eval_complex(ast, zeta) * dzeta;
            }
            acc
        }
        Curve::Polyline { vertices, closed } => {
            let mut edges: Vec<(Point, Point)> =
                vertices.windows(2).map(|w| (w[0], w[1])).collect();
            if *closed {
                edges.push((*vertices.last().unwrap(), vertices[0]));
            }
            let per_edge = (samples / edges.len()).max(16);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in edges {
                let dz = point_c(b) - point_c(a);
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..=per_edge {
                    let s = k as f64 / per_edge as f64;
                    let zeta = point_c(a) + dz * s;
                    let weight = if k == 0 || k == per_edge { 0.5 } else { 1.0 };
                    sum += eval_complex(ast, zeta) * weight;
                }
                acc += sum * dz / per_edge as f64;
            }
            acc
        }
        Curve::Parametric { sampler, .. } => {
            let n = samples.max(16);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..=n {
                let t = k as f64 / n as f64;
                let (p, dp) = sampler(t);
                let weight = if k == 0 || k == n { 0.5 } else { 1.0 };
                acc += eval_complex(ast, point_c(p)) * point_c(dp) * weight;
            }
            acc / n as f64
        }
    }
}
