//! The integral theorems as executable checks and solvers.
//!
//! Everything here is built on one identity: for a field `f` strict
//! harmonic on and inside a positively oriented closed curve `C` enclosing
//! `z₀`,
//!
//! ```text
//! ⟨f(z)/(z − z₀)⟩_C = 2π·dxdy·f(z₀),
//! ```
//!
//! so dividing a valuation by `2π·dxdy` — implemented as multiplication by
//! `−dxdy/(2π)` — evaluates fields, derivatives and residues from contour
//! data alone.

use serde::{Deserialize, Serialize};

use crate::algebra::Edif;
use crate::contour::{valuation, Curve, Orientation};
use crate::error::{Error, Result};
use crate::expr::{ExprAst, Field, Point};
use crate::quad::{QuadratureConfig, ValuationResult};

/// A declared pole location. Orders are caller hints; nothing here tries to
/// detect them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoleSpec {
    pub location: Point,
    pub order_hint: Option<u32>,
}

impl PoleSpec {
    pub fn simple(location: Point) -> PoleSpec {
        PoleSpec {
            location,
            order_hint: Some(1),
        }
    }

    pub fn at(location: Point) -> PoleSpec {
        PoleSpec {
            location,
            order_hint: None,
        }
    }
}

/// Residue of a field at one pole, with the circle used to extract it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub pole: PoleSpec,
    pub residue: Edif,
    pub circle_radius: f64,
    pub error_estimate: f64,
}

/// Multiplication by `(2π·dxdy)⁻¹ = −dxdy/(2π)`.
fn over_two_pi_dxdy(w: Edif) -> Edif {
    w * Edif::new(0.0, -0.5 / std::f64::consts::PI)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `z − z₀` as an expression.
fn z_minus(z0: Point) -> ExprAst {
    ExprAst::Z - ExprAst::constant(z0.to_edif())
}

fn guard_pole_distance(c: &Curve, pole: Point, cfg: &QuadratureConfig) -> Result<()> {
    if cfg.min_pole_distance > 0.0 && c.distance_to(pole) < cfg.min_pole_distance {
        return Err(Error::Geometry(format!(
            "pole at ({}, {}) is closer than min_pole_distance to the curve",
            pole.x, pole.y
        )));
    }
    Ok(())
}

fn require_strictly_inside(c: &Curve, p: Point) -> Result<()> {
    // Parametric curves cannot be winding-checked; geometry is caller-asserted.
    if let Some(w) = c.winding_number(p) {
        if w == 0 {
            return Err(Error::PoleOnOrOutside { x: p.x, y: p.y });
        }
    }
    Ok(())
}

fn require_closed(c: &Curve, what: &str) -> Result<()> {
    if !c.is_closed() {
        return Err(Error::Geometry(format!("{what} requires a closed curve")));
    }
    Ok(())
}

/// Norm of the valuation of `f` over a closed curve. Near zero this
/// certifies the vanishing-valuation theorem numerically for a field
/// strict harmonic on and inside the curve; for a field with an enclosed
/// pole it measures the kernel content instead.
pub fn goursat_residual<F: Field + ?Sized>(
    f: &F,
    c: &Curve,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    require_closed(c, "the vanishing-valuation check")?;
    Ok(valuation(f, c, cfg)?.value.norm())
}

/// Valuation of the kernel `(z − z₀)^{−(n+1)}` over a closed curve
/// enclosing `z₀`: `2π·dxdy` for `n = 0` and `0` for `n ≥ 1`.
pub fn kernel_valuation(z0: Point, n: u32, c: &Curve, cfg: &QuadratureConfig) -> Result<Edif> {
    require_closed(c, "a kernel valuation")?;
    require_strictly_inside(c, z0)?;
    guard_pole_distance(c, z0, cfg)?;
    let exponent = -i32::try_from(n + 1).map_err(|_| Error::Config("kernel order too large"))?;
    let kernel = z_minus(z0).ipow(exponent);
    Ok(valuation(&kernel, c, cfg)?.value)
}

/// The dx-only integral `∮ f(z)/(z − z₀) dx`, i.e. only the scalar part
/// `∫(u dx − v dy)` of the valuation of `f/(z − z₀)`. Vanishes on closed
/// curves for every kernel power, including the enclosing `n = 0` case that
/// makes the full valuation `2π·dxdy`.
pub fn dx_only_integral(f: &ExprAst, z0: Point, c: &Curve, cfg: &QuadratureConfig) -> Result<Edif> {
    require_closed(c, "the dx-only integral")?;
    let integrand = f.clone() / z_minus(z0);
    let full = valuation(&integrand, c, cfg)?;
    Ok(Edif::scalar(full.value.u))
}

/// Field value at `z₀` reconstructed from contour data:
/// `(2π·dxdy)⁻¹·⟨f(z)/(z − z₀)⟩_C`. For a positively oriented curve and a
/// field strict harmonic on and inside it, this equals `f(z₀)`.
pub fn cauchy_value(f: &ExprAst, z0: Point, c: &Curve, cfg: &QuadratureConfig) -> Result<Edif> {
    require_closed(c, "the reconstruction formula")?;
    require_strictly_inside(c, z0)?;
    guard_pole_distance(c, z0, cfg)?;
    let integrand = f.clone() / z_minus(z0);
    Ok(over_two_pi_dxdy(valuation(&integrand, c, cfg)?.value))
}

/// n-th derivative at `z₀` from contour data:
/// `n!·(2π·dxdy)⁻¹·⟨f(ζ)/(ζ − z₀)^{n+1}⟩_C`.
pub fn cauchy_derivative(
    f: &ExprAst,
    z0: Point,
    n: u32,
    c: &Curve,
    cfg: &QuadratureConfig,
) -> Result<Edif> {
    if n == 0 {
        return cauchy_value(f, z0, c, cfg);
    }
    require_closed(c, "the derivative formula")?;
    require_strictly_inside(c, z0)?;
    guard_pole_distance(c, z0, cfg)?;
    let exponent = i32::try_from(n + 1).map_err(|_| Error::Config("derivative order too large"))?;
    let integrand = f.clone() / z_minus(z0).ipow(exponent);
    Ok(over_two_pi_dxdy(valuation(&integrand, c, cfg)?.value) * factorial(n))
}

/// Residue at a declared pole: `(2π·dxdy)⁻¹` times the valuation over the
/// counterclockwise circle of the given radius about it. The circle must
/// enclose no other singularity.
pub fn residue(
    f: &ExprAst,
    pole: &PoleSpec,
    radius: f64,
    cfg: &QuadratureConfig,
) -> Result<ResidueReport> {
    let circle = Curve::circle_ccw(pole.location, radius)?;
    if cfg.min_pole_distance > 0.0 && radius < cfg.min_pole_distance {
        return Err(Error::Geometry(
            "residue circle radius is below min_pole_distance".into(),
        ));
    }
    let val = valuation(f, &circle, cfg)?;
    Ok(ResidueReport {
        pole: *pole,
        residue: over_two_pi_dxdy(val.value),
        circle_radius: radius,
        error_estimate: val.abs_error_estimate * 0.5 / std::f64::consts::PI,
    })
}

/// Default residue circle radius: half the distance to the nearest other
/// declared pole, capped at 1.
pub fn default_residue_radius(pole: Point, others: &[PoleSpec]) -> f64 {
    others
        .iter()
        .map(|p| p.location.distance_to(pole))
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min)
        .min(2.0)
        * 0.5
}

/// Valuation over `C` against the sum of valuations over equally oriented
/// circles surrounding each declared pole. The two sides agree within the
/// summed quadrature error estimates when the declarations cover every
/// singularity inside `C`.
pub fn decompose_valuation(
    f: &ExprAst,
    c: &Curve,
    poles: &[PoleSpec],
    radii: &[f64],
    cfg: &QuadratureConfig,
) -> Result<(ValuationResult, ValuationResult)> {
    require_closed(c, "a valuation decomposition")?;
    if poles.len() != radii.len() {
        return Err(Error::Config("one radius per pole required"));
    }
    // Circles must sit inside C, pairwise disjoint, equally oriented.
    for (i, (pole, &ri)) in poles.iter().zip(radii).enumerate() {
        if ri <= 0.0 || ri.is_nan() {
            return Err(Error::Geometry(
                "residue circle radius must be positive".into(),
            ));
        }
        require_strictly_inside(c, pole.location).map_err(|_| {
            Error::Geometry(format!(
                "pole {} at ({}, {}) is not strictly inside the outer curve",
                i, pole.location.x, pole.location.y
            ))
        })?;
        if c.distance_to(pole.location) <= ri {
            return Err(Error::Geometry(format!(
                "circle around pole {i} crosses the outer curve"
            )));
        }
        guard_pole_distance(c, pole.location, cfg)?;
        for (j, (other, &rj)) in poles.iter().zip(radii).enumerate().skip(i + 1) {
            // touching circles are fine; only overlapping interiors can
            // capture a neighbour's pole
            if pole.location.distance_to(other.location) < ri + rj {
                return Err(Error::Geometry(format!(
                    "circles around poles {i} and {j} overlap"
                )));
            }
        }
    }
    let orientation = c.orientation().unwrap_or(Orientation::Ccw);
    let lhs = valuation(f, c, cfg)?;
    let mut rhs_value = Edif::ZERO;
    let mut rhs_err = 0.0;
    let mut rhs_evals = 0;
    for (pole, &ri) in poles.iter().zip(radii) {
        let circle = Curve::circle(pole.location, ri, orientation)?;
        let part = valuation(f, &circle, cfg)?;
        rhs_value = rhs_value + part.value;
        rhs_err += part.abs_error_estimate;
        rhs_evals += part.integrand_evals;
    }
    let rhs = ValuationResult {
        value: rhs_value,
        abs_error_estimate: rhs_err,
        integrand_evals: rhs_evals.max(1),
    };
    Ok((lhs, rhs))
}

/// Norms of `⟨(f(z) − f(z₀))/(z − z₀)⟩` over shrinking circles about `z₀`.
/// Continuity of a strict harmonic field drives the sequence to zero,
/// which is what licenses swapping `f(z)` for `f(z₀)` against the kernel.
pub fn continuity_limit_check(
    f: &ExprAst,
    z0: Point,
    radii: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let f0 = f.eval(z0)?;
    let quotient = (f.clone() - ExprAst::constant(f0)) / z_minus(z0);
    radii
        .iter()
        .map(|&r| {
            let circle = Curve::circle_ccw(z0, r)?;
            Ok(valuation(&quotient, &circle, cfg)?.value.norm())
        })
        .collect()
}

/// Co-valuation round-trip along an open curve: differentiation and
/// valuation invert each other on strict harmonic fields.
///
/// Returns `(residual1, residual2)` where `residual1` finite-differences
/// the potential in `x` at the endpoint against the field, and `residual2`
/// compares the potential of `∂f/∂x` with `f − f(base)`.
pub fn covaluation_roundtrip(f: &ExprAst, c: &Curve, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if c.is_closed() {
        return Err(Error::Geometry(
            "the co-valuation round-trip runs along an open curve".into(),
        ));
    }
    let base = c.start();
    let target = c.end();
    let along = valuation(f, c, cfg)?.value;

    // d/dx of the potential at the endpoint, via short straight extensions.
    // The step is far above the quadrature tolerance so the difference
    // quotient is not dominated by integration noise.
    let h = 1e-4 * target.x.abs().max(target.y.abs()).max(1.0);
    let east = along
        + crate::contour::potential_on_segment(f, target, Point::new(target.x + h, target.y), cfg)?;
    let west = along
        + crate::contour::potential_on_segment(f, target, Point::new(target.x - h, target.y), cfg)?;
    let ddx = (east - west) * (0.5 / h);
    let residual1 = (ddx - f.eval(target)?).norm();

    let derivative_potential = valuation(&f.differentiate(), c, cfg)?.value;
    let residual2 = (derivative_potential - f.eval(target)? + f.eval(base)?).norm();
    Ok((residual1, residual2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use std::f64::consts::{PI, TAU};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn unit_circle() -> Curve {
        Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap()
    }

    fn square(half: f64) -> Curve {
        Curve::polyline(
            vec![
                Point::new(-half, -half),
                Point::new(half, -half),
                Point::new(half, half),
                Point::new(-half, half),
            ],
            true,
        )
        .unwrap()
    }

    #[test]
    fn goursat_residuals() {
        let exp = parse_expr("exp(z)").unwrap();
        assert!(goursat_residual(&exp, &unit_circle(), &cfg()).unwrap() <= 1e-9);

        let poly = parse_expr("z^2 - 3*z").unwrap();
        assert!(goursat_residual(&poly, &square(1.0), &cfg()).unwrap() <= 1e-9);

        // a field with an enclosed pole is *not* certified
        let pole = parse_expr("1/z").unwrap();
        let r = goursat_residual(&pole, &unit_circle(), &cfg()).unwrap();
        assert!((r - TAU).abs() <= 1e-9);
    }

    #[test]
    fn goursat_requires_closed_curve() {
        let f = parse_expr("z").unwrap();
        let open = Curve::segment(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            goursat_residual(&f, &open, &cfg()),
            Err(Error::Geometry(_))
        ));
    }

    #[test]
    fn kernel_values() {
        let z0 = Point::new(0.3, -0.4);
        let circle = Curve::circle_ccw(z0, 1.0).unwrap();
        let k0 = kernel_valuation(z0, 0, &circle, &cfg()).unwrap();
        assert!((k0 - Edif::new(0.0, TAU)).norm() <= 1e-9);

        let k3 = kernel_valuation(z0, 3, &circle, &cfg()).unwrap();
        assert!(k3.norm() <= 1e-9);

        // contour independence: big offset circle, pole still inside
        let big = Curve::circle_ccw(Point::new(3.0, 1.0), 7.0).unwrap();
        let k0 = kernel_valuation(z0, 0, &big, &cfg()).unwrap();
        assert!((k0 - Edif::new(0.0, TAU)).norm() <= 1e-8);
    }

    #[test]
    fn kernel_rejects_outside_pole() {
        let err = kernel_valuation(Point::new(5.0, 0.0), 0, &unit_circle(), &cfg());
        assert!(matches!(err, Err(Error::PoleOnOrOutside { .. })));
    }

    #[test]
    fn dx_only_integrals_vanish() {
        let z0 = Point::new(0.2, 0.1);
        let circle = Curve::circle_ccw(z0, 1.0).unwrap();

        let one = parse_expr("1").unwrap();
        assert!(dx_only_integral(&one, z0, &circle, &cfg()).unwrap().norm() <= 1e-10);

        let kernel2 = z_minus(z0).ipow(-2);
        assert!(
            dx_only_integral(&kernel2, z0, &circle, &cfg())
                .unwrap()
                .norm()
                <= 1e-10
        );

        let z = parse_expr("z").unwrap();
        let around_origin = unit_circle();
        assert!(
            dx_only_integral(&z, Point::ORIGIN, &around_origin, &cfg())
                .unwrap()
                .norm()
                <= 1e-10
        );
    }

    #[test]
    fn cauchy_value_reconstructs() {
        let exp = parse_expr("exp(z)").unwrap();
        let z0 = Point::new(0.3, 0.2);
        let got = cauchy_value(&exp, z0, &unit_circle(), &cfg()).unwrap();
        let want = Edif::new(0.3f64.exp() * 0.2f64.cos(), 0.3f64.exp() * 0.2f64.sin());
        assert!((got - want).norm() <= 1e-9, "{got:?} vs {want:?}");

        let one = parse_expr("1").unwrap();
        let got = cauchy_value(&one, Point::new(-0.4, 0.1), &unit_circle(), &cfg()).unwrap();
        assert!((got - Edif::ONE).norm() <= 1e-9);

        // shifted reciprocal, regular inside the unit circle
        let f = parse_expr("1/(z - pi/2)").unwrap();
        let got = cauchy_value(&f, Point::ORIGIN, &unit_circle(), &cfg()).unwrap();
        assert!((got - Edif::scalar(-2.0 / PI)).norm() <= 1e-9);
    }

    #[test]
    fn cauchy_value_rejects_exterior_point() {
        let f = parse_expr("exp(z)").unwrap();
        let err = cauchy_value(&f, Point::new(2.0, 0.0), &unit_circle(), &cfg());
        assert!(matches!(err, Err(Error::PoleOnOrOutside { .. })));
    }

    #[test]
    fn cauchy_derivatives() {
        // second derivative of z³ is 6z
        let cube = parse_expr("z^3").unwrap();
        let got = cauchy_derivative(
            &cube,
            Point::new(0.5, 0.0),
            2,
            &Curve::circle_ccw(Point::new(0.5, 0.0), 0.75).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!((got - Edif::scalar(3.0)).norm() <= 1e-8);

        // all derivatives of exp at the origin are 1
        let exp = parse_expr("exp(z)").unwrap();
        for n in 1..=4 {
            let got = cauchy_derivative(&exp, Point::ORIGIN, n, &unit_circle(), &cfg()).unwrap();
            assert!((got - Edif::ONE).norm() <= 1e-8, "order {n}: {got:?}");
        }

        // d/dx (z + dxdy)⁻² at (0, 1) is −dxdy/4
        let f = parse_expr("1/(z + I)^2").unwrap();
        let got = cauchy_derivative(
            &f,
            Point::new(0.0, 1.0),
            1,
            &Curve::circle_ccw(Point::new(0.0, 1.0), 0.5).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!((got - Edif::new(0.0, -0.25)).norm() <= 1e-9, "{got:?}");
    }

    #[test]
    fn residue_values() {
        let f = parse_expr("1/(z*(z - pi/2))").unwrap();
        let report = residue(&f, &PoleSpec::simple(Point::ORIGIN), 1.0, &cfg()).unwrap();
        assert!((report.residue - Edif::scalar(-2.0 / PI)).norm() <= 1e-9);

        let f = parse_expr("1/z").unwrap();
        let report = residue(&f, &PoleSpec::simple(Point::ORIGIN), 1.0, &cfg()).unwrap();
        assert!((report.residue - Edif::ONE).norm() <= 1e-10);

        // double pole: residue of 1/(z²+1)² at dxdy is −dxdy/4
        let f = parse_expr("1/(z^2+1)^2").unwrap();
        let report = residue(&f, &PoleSpec::at(Point::new(0.0, 1.0)), 0.5, &cfg()).unwrap();
        assert!((report.residue - Edif::new(0.0, -0.25)).norm() <= 1e-9);
    }

    #[test]
    fn decomposition_balances() {
        let f = parse_expr("1/(z*(z - 2))").unwrap();
        let poles = [
            PoleSpec::simple(Point::ORIGIN),
            PoleSpec::simple(Point::new(2.0, 0.0)),
        ];
        let (lhs, rhs) = decompose_valuation(
            &f,
            &Curve::circle_ccw(Point::ORIGIN, 5.0).unwrap(),
            &poles,
            &[0.5, 0.5],
            &cfg(),
        )
        .unwrap();
        let tol = (lhs.abs_error_estimate + rhs.abs_error_estimate).max(1e-9);
        assert!((lhs.value - rhs.value).norm() <= tol);
        assert!(lhs.value.norm() <= 1e-8); // residues ±1/2 cancel

        let f = parse_expr("1/z").unwrap();
        let (lhs, rhs) = decompose_valuation(
            &f,
            &Curve::circle_ccw(Point::ORIGIN, 3.0).unwrap(),
            &[PoleSpec::simple(Point::ORIGIN)],
            &[0.5],
            &cfg(),
        )
        .unwrap();
        assert!((lhs.value - Edif::new(0.0, TAU)).norm() <= 1e-9);
        assert!((rhs.value - Edif::new(0.0, TAU)).norm() <= 1e-9);

        let f = parse_expr("z^2").unwrap();
        let (lhs, rhs) = decompose_valuation(&f, &square(2.0), &[], &[], &cfg()).unwrap();
        assert!(lhs.value.norm() <= 1e-10);
        assert!(rhs.value.norm() == 0.0);
    }

    #[test]
    fn decomposition_geometry_errors() {
        let f = parse_expr("1/(z*(z - 0.5))").unwrap();
        let big = Curve::circle_ccw(Point::ORIGIN, 5.0).unwrap();
        let poles = [
            PoleSpec::simple(Point::ORIGIN),
            PoleSpec::simple(Point::new(0.5, 0.0)),
        ];
        // overlapping circles
        let err = decompose_valuation(&f, &big, &poles, &[0.4, 0.4], &cfg());
        assert!(matches!(err, Err(Error::Geometry(_))));

        // circle leaking out of the outer curve
        let err = decompose_valuation(
            &f,
            &Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap(),
            &[PoleSpec::simple(Point::new(0.5, 0.0))],
            &[0.8],
            &cfg(),
        );
        assert!(matches!(err, Err(Error::Geometry(_))));

        // pole outside the outer curve
        let err = decompose_valuation(
            &f,
            &Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap(),
            &[PoleSpec::simple(Point::new(3.0, 0.0))],
            &[0.2],
            &cfg(),
        );
        assert!(matches!(err, Err(Error::Geometry(_))));
    }

    #[test]
    fn continuity_limits() {
        let radii = [0.5, 0.25, 0.125];

        // (exp(z) − 1)/z has a removable singularity, so the closed-curve
        // valuation vanishes at every radius and the r → 0 limit is 0
        let exp = parse_expr("exp(z)").unwrap();
        let seq = continuity_limit_check(&exp, Point::ORIGIN, &radii, &cfg()).unwrap();
        assert!(seq.iter().all(|r| *r <= 1e-9), "{seq:?}");

        // (z² − 1)/(z − 1) = z + 1 is strict harmonic, so the valuation
        // vanishes at every radius
        let sq = parse_expr("z^2").unwrap();
        let seq = continuity_limit_check(&sq, Point::new(1.0, 0.0), &radii, &cfg()).unwrap();
        assert!(seq.iter().all(|r| *r <= 1e-9), "{seq:?}");

        let one = parse_expr("1").unwrap();
        let seq = continuity_limit_check(&one, Point::new(0.3, 0.7), &radii, &cfg()).unwrap();
        assert!(seq.iter().all(|r| *r <= 1e-12), "{seq:?}");
    }

    #[test]
    fn covaluation_round_trips() {
        let seg = Curve::segment(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap();

        let sq = parse_expr("z^2").unwrap();
        let (r1, r2) = covaluation_roundtrip(&sq, &seg, &cfg()).unwrap();
        assert!(r1 <= 1e-6 && r2 <= 1e-6, "({r1}, {r2})");

        let one = parse_expr("1").unwrap();
        let (r1, r2) = covaluation_roundtrip(&one, &seg, &cfg()).unwrap();
        assert!(r1 <= 1e-9 && r2 <= 1e-12, "({r1}, {r2})");

        let sin = parse_expr("sin(z)").unwrap();
        let half = Curve::segment(Point::ORIGIN, Point::new(0.5, 0.5)).unwrap();
        let (r1, r2) = covaluation_roundtrip(&sin, &half, &cfg()).unwrap();
        assert!(r1 <= 1e-6 && r2 <= 1e-6, "({r1}, {r2})");

        let err = covaluation_roundtrip(&one, &unit_circle(), &cfg());
        assert!(matches!(err, Err(Error::Geometry(_))));
    }

    /// Kernel law over many random enclosing circles: `2π·dxdy` at first
    /// order, zero for the higher powers.
    #[test]
    fn kernel_law_random_configurations() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0x10);
        for _ in 0..50 {
            let z0 = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let r = rng.gen_range(0.4..3.0);
            let ang = rng.gen_range(0.0..TAU);
            let off = rng.gen_range(0.0..0.5 * r);
            let center = Point::new(z0.x + off * ang.cos(), z0.y + off * ang.sin());
            let circle = Curve::circle_ccw(center, r).unwrap();
            let k0 = kernel_valuation(z0, 0, &circle, &cfg()).unwrap();
            assert!((k0 - Edif::new(0.0, TAU)).norm() <= 1e-8, "z0 {z0:?} r {r}");
            for n in 1..=5 {
                let kn = kernel_valuation(z0, n, &circle, &cfg()).unwrap();
                assert!(kn.norm() <= 1e-8, "z0 {z0:?} r {r} n {n}: {kn:?}");
            }
        }
    }

    #[test]
    fn default_radius_rule() {
        let others = [
            PoleSpec::simple(Point::new(2.0, 0.0)),
            PoleSpec::simple(Point::new(0.0, 3.0)),
        ];
        let r = default_residue_radius(Point::ORIGIN, &others);
        assert!((r - 1.0).abs() <= 1e-15);
        // far-away neighbours cap at 1
        let far = [PoleSpec::simple(Point::new(100.0, 0.0))];
        assert!((default_residue_radius(Point::ORIGIN, &far) - 1.0).abs() <= 1e-15);
    }
}
