//! Oriented curves in the plane and the valuation operator.
//!
//! The valuation of an edif field `w = u + v·dxdy` on a curve `c` is the
//! edif
//!
//! ```text
//! ⟨w⟩_c = ∫_c (u dx − v dy)  +  dxdy · ∫_c (u dy + v dx)
//! ```
//!
//! computed here by adaptive quadrature over the curve's parametrization.
//! Counterclockwise traversal is the positive orientation; it is what makes
//! the kernel valuation `⟨1/(z−z₀)⟩` come out as `+2π·dxdy`.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Edif;
use crate::error::{Error, Result};
use crate::expr::{Field, Point};
use crate::quad::{
    integrate_over_segments, IntegrandSample, ParamSampler, QuadratureConfig, SegmentGeom,
    ValuationResult,
};

/// Traversal direction of a closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

/// An oriented parametrized curve.
#[derive(Clone)]
pub enum Curve {
    /// Circle traversed once, starting and ending at angle 0.
    Circle {
        center: Point,
        radius: f64,
        orientation: Orientation,
    },
    /// Straight segments through the vertices in listed order. A closed
    /// polyline implicitly returns from the last vertex to the first.
    Polyline { vertices: Vec<Point>, closed: bool },
    /// User parametrization over `t ∈ [0, 1]` returning point and
    /// derivative.
    Parametric { sampler: ParamSampler, closed: bool },
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => f
                .debug_struct("Circle")
                .field("center", center)
                .field("radius", radius)
                .field("orientation", orientation)
                .finish(),
            Curve::Polyline { vertices, closed } => f
                .debug_struct("Polyline")
                .field("vertices", vertices)
                .field("closed", closed)
                .finish(),
            Curve::Parametric { closed, .. } => f
                .debug_struct("Parametric")
                .field("closed", closed)
                .finish_non_exhaustive(),
        }
    }
}

impl Curve {
    pub fn circle(center: Point, radius: f64, orientation: Orientation) -> Result<Curve> {
        if radius <= 0.0 || !radius.is_finite() || !center.is_finite() {
            return Err(Error::Geometry(
                "circle needs a finite center and strictly positive radius".into(),
            ));
        }
        Ok(Curve::Circle {
            center,
            radius,
            orientation,
        })
    }

    /// Counterclockwise circle, the common case.
    pub fn circle_ccw(center: Point, radius: f64) -> Result<Curve> {
        Curve::circle(center, radius, Orientation::Ccw)
    }

    pub fn polyline(vertices: Vec<Point>, closed: bool) -> Result<Curve> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::Geometry("polyline vertices must be finite".into()));
        }
        if closed {
            if vertices.len() < 3 {
                return Err(Error::Geometry(
                    "closed polyline needs at least 3 vertices".into(),
                ));
            }
            if vertices.first() == vertices.last() {
                return Err(Error::Geometry(
                    "closed polyline closes implicitly; do not repeat the first vertex".into(),
                ));
            }
        } else if vertices.len() < 2 {
            return Err(Error::Geometry(
                "open polyline needs at least 2 vertices".into(),
            ));
        }
        Ok(Curve::Polyline { vertices, closed })
    }

    pub fn parametric(sampler: ParamSampler, closed: bool) -> Curve {
        Curve::Parametric { sampler, closed }
    }

    /// Straight open path between two points.
    pub fn segment(from: Point, to: Point) -> Result<Curve> {
        Curve::polyline(vec![from, to], false)
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Curve::Circle { .. } => true,
            Curve::Polyline { closed, .. } | Curve::Parametric { closed, .. } => *closed,
        }
    }

    pub fn start(&self) -> Point {
        match self {
            Curve::Circle { center, radius, .. } => Point::new(center.x + radius, center.y),
            Curve::Polyline { vertices, .. } => vertices[0],
            Curve::Parametric { sampler, .. } => sampler(0.0).0,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Curve::Circle { .. } => self.start(),
            Curve::Polyline { vertices, closed } => {
                if *closed {
                    vertices[0]
                } else {
                    *vertices.last().unwrap()
                }
            }
            Curve::Parametric { sampler, closed } => {
                if *closed {
                    sampler(0.0).0
                } else {
                    sampler(1.0).0
                }
            }
        }
    }

    /// Same point set, opposite traversal.
    pub fn reverse(&self) -> Curve {
        match self {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => Curve::Circle {
                center: *center,
                radius: *radius,
                orientation: orientation.reversed(),
            },
            Curve::Polyline { vertices, closed } => {
                let mut rev = vertices.clone();
                rev.reverse();
                Curve::Polyline {
                    vertices: rev,
                    closed: *closed,
                }
            }
            Curve::Parametric { sampler, closed } => {
                let inner = Arc::clone(sampler);
                Curve::Parametric {
                    sampler: Arc::new(move |t| {
                        let (p, dp) = inner(1.0 - t);
                        (p, Point::new(-dp.x, -dp.y))
                    }),
                    closed: *closed,
                }
            }
        }
    }

    /// Distance from a point to the traced curve. Exact for circles and
    /// polylines; for parametric curves it is a dense-sampling estimate.
    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            Curve::Circle { center, radius, .. } => (p.distance_to(*center) - radius).abs(),
            Curve::Polyline { .. } => self
                .edges()
                .into_iter()
                .map(|(a, b)| point_segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min),
            Curve::Parametric { sampler, .. } => (0..=256)
                .map(|i| p.distance_to(sampler(i as f64 / 256.0).0))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Winding number of a closed curve around a point, `None` when the
    /// curve is parametric (caller-asserted geometry) or open.
    pub fn winding_number(&self, p: Point) -> Option<i32> {
        match self {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => {
                if p.distance_to(*center) >= *radius {
                    Some(0)
                } else {
                    Some(match orientation {
                        Orientation::Ccw => 1,
                        Orientation::Cw => -1,
                    })
                }
            }
            Curve::Polyline { closed, .. } => {
                if !closed {
                    return None;
                }
                let mut angle = 0.0;
                for (a, b) in self.edges() {
                    let v1 = Point::new(a.x - p.x, a.y - p.y);
                    let v2 = Point::new(b.x - p.x, b.y - p.y);
                    let cross = v1.x * v2.y - v1.y * v2.x;
                    let dot = v1.x * v2.x + v1.y * v2.y;
                    angle += cross.atan2(dot);
                }
                Some((angle / std::f64::consts::TAU).round() as i32)
            }
            Curve::Parametric { .. } => None,
        }
    }

    /// Orientation of a closed polyline by its signed (shoelace) area, or
    /// of a circle directly.
    pub fn orientation(&self) -> Option<Orientation> {
        match self {
            Curve::Circle { orientation, .. } => Some(*orientation),
            Curve::Polyline { closed, .. } => {
                if !closed {
                    return None;
                }
                let area: f64 = self
                    .edges()
                    .into_iter()
                    .map(|(a, b)| a.x * b.y - b.x * a.y)
                    .sum();
                Some(if area >= 0.0 {
                    Orientation::Ccw
                } else {
                    Orientation::Cw
                })
            }
            Curve::Parametric { .. } => None,
        }
    }

    fn edges(&self) -> Vec<(Point, Point)> {
        match self {
            Curve::Polyline { vertices, closed } => {
                let mut edges: Vec<(Point, Point)> =
                    vertices.windows(2).map(|w| (w[0], w[1])).collect();
                if *closed {
                    edges.push((*vertices.last().unwrap(), vertices[0]));
                }
                edges
            }
            _ => Vec::new(),
        }
    }

    /// Initial parameter segments handed to the quadrature engine. Circles
    /// and parametric curves start pre-split so the embedded rule pair
    /// cannot silently agree on a full symmetric loop.
    pub(crate) fn segments(&self) -> Vec<SegmentGeom> {
        const INITIAL_SPLIT: usize = 8;
        match self {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => {
                let sweep = match orientation {
                    Orientation::Ccw => std::f64::consts::TAU,
                    Orientation::Cw => -std::f64::consts::TAU,
                };
                (0..INITIAL_SPLIT)
                    .map(|i| SegmentGeom::Arc {
                        cx: center.x,
                        cy: center.y,
                        r: *radius,
                        th0: sweep * (i as f64) / (INITIAL_SPLIT as f64),
                        th1: sweep * ((i + 1) as f64) / (INITIAL_SPLIT as f64),
                    })
                    .collect()
            }
            Curve::Polyline { .. } => self
                .edges()
                .into_iter()
                .map(|(a, b)| SegmentGeom::Line { a, b })
                .collect(),
            Curve::Parametric { sampler, .. } => (0..INITIAL_SPLIT)
                .map(|i| SegmentGeom::Param {
                    sampler: Arc::clone(sampler),
                    t0: (i as f64) / (INITIAL_SPLIT as f64),
                    t1: ((i + 1) as f64) / (INITIAL_SPLIT as f64),
                })
                .collect(),
        }
    }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let vx = b.x - a.x;
    let vy = b.y - a.y;
    let len_sq = vx * vx + vy * vy;
    if len_sq == 0.0 {
        return p.distance_to(a);
    }
    let t = (((p.x - a.x) * vx + (p.y - a.y) * vy) / len_sq).clamp(0.0, 1.0);
    p.distance_to(Point::new(a.x + t * vx, a.y + t * vy))
}

// JSON wire format:
//   {"kind":"circle","cx":…,"cy":…,"r":…,"orientation":"ccw"|"cw"}
//   {"kind":"polyline","points":[[x,y],…],"closed":true|false}
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CurveDto {
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
        orientation: Orientation,
    },
    Polyline {
        points: Vec<[f64; 2]>,
        closed: bool,
    },
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = match self {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => CurveDto::Circle {
                cx: center.x,
                cy: center.y,
                r: *radius,
                orientation: *orientation,
            },
            Curve::Polyline { vertices, closed } => CurveDto::Polyline {
                points: vertices.iter().map(|p| [p.x, p.y]).collect(),
                closed: *closed,
            },
            Curve::Parametric { .. } => {
                return Err(S::Error::custom("parametric curves have no wire format"))
            }
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Curve, D::Error> {
        let dto = CurveDto::deserialize(deserializer)?;
        let curve = match dto {
            CurveDto::Circle {
                cx,
                cy,
                r,
                orientation,
            } => Curve::circle(Point::new(cx, cy), r, orientation),
            CurveDto::Polyline { points, closed } => Curve::polyline(
                points.into_iter().map(|[x, y]| Point::new(x, y)).collect(),
                closed,
            ),
        };
        curve.map_err(D::Error::custom)
    }
}

/// Valuation `⟨w⟩_c` of a field over a curve.
pub fn valuation<F: Field + ?Sized>(
    f: &F,
    c: &Curve,
    cfg: &QuadratureConfig,
) -> Result<ValuationResult> {
    let segs = c.segments();
    let mut eval = |_t: f64, p: Point| f.eval(p);
    integrate_over_segments(&segs, &mut eval, cfg)
}

/// Valuation that also records every integrand sample in evaluation order.
pub fn valuation_traced<F: Field + ?Sized>(
    f: &F,
    c: &Curve,
    cfg: &QuadratureConfig,
) -> Result<(ValuationResult, Vec<IntegrandSample>)> {
    let segs = c.segments();
    let mut samples = Vec::new();
    let mut eval = |t: f64, p: Point| {
        let w = f.eval(p)?;
        samples.push(IntegrandSample {
            t,
            x: p.x,
            y: p.y,
            u: w.u,
            v: w.v,
        });
        Ok(w)
    };
    let result = integrate_over_segments(&segs, &mut eval, cfg)?;
    Ok((result, samples))
}

/// Valuation potential `U + V·dxdy` of a strict harmonic field, integrated
/// along `path` from `base` to `target` and pinned to 0 at the base point.
///
/// For strict harmonic fields the result depends on the endpoints only (up
/// to quadrature tolerance), which is what makes it a potential.
pub fn valuation_potential<F: Field + ?Sized>(
    f: &F,
    base: Point,
    target: Point,
    path: &Curve,
    cfg: &QuadratureConfig,
) -> Result<Edif> {
    let scale = 1.0
        + base
            .x
            .abs()
            .max(base.y.abs())
            .max(target.x.abs())
            .max(target.y.abs());
    if path.start().distance_to(base) > 1e-9 * scale {
        return Err(Error::Geometry(
            "path does not start at the base point".into(),
        ));
    }
    if path.end().distance_to(target) > 1e-9 * scale {
        return Err(Error::Geometry(
            "path does not end at the target point".into(),
        ));
    }
    Ok(valuation(f, path, cfg)?.value)
}

/// Potential along the straight segment from `base` to `target`.
pub fn potential_on_segment<F: Field + ?Sized>(
    f: &F,
    base: Point,
    target: Point,
    cfg: &QuadratureConfig,
) -> Result<Edif> {
    valuation_potential(f, base, target, &Curve::segment(base, target)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{is_strict_harmonic, parse_expr, sample_grid};
    use std::f64::consts::{E, PI, TAU};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn construction_validation() {
        assert!(Curve::circle_ccw(Point::ORIGIN, 0.0).is_err());
        assert!(Curve::circle_ccw(Point::ORIGIN, -1.0).is_err());
        assert!(Curve::polyline(vec![Point::ORIGIN, Point::new(1.0, 0.0)], true).is_err());
        // closed polylines must not repeat the first vertex
        assert!(Curve::polyline(
            vec![
                Point::ORIGIN,
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::ORIGIN
            ],
            true
        )
        .is_err());
        assert!(Curve::polyline(vec![Point::ORIGIN], false).is_err());
    }

    #[test]
    fn kernel_valuation_on_unit_circle() {
        let f = parse_expr("1/z").unwrap();
        let c = Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap();
        let res = valuation(&f, &c, &cfg()).unwrap();
        assert!((res.value - Edif::new(0.0, TAU)).norm() <= 1e-10);
        assert!(res.integrand_evals > 0);
    }

    #[test]
    fn goursat_for_square_field() {
        let f = parse_expr("z^2").unwrap();
        let c = Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap();
        let res = valuation(&f, &c, &cfg()).unwrap();
        assert!(res.value.norm() <= 1e-12);
    }

    #[test]
    fn orientation_antisymmetry() {
        let f = parse_expr("exp(z)/(z - 0.2)").unwrap();
        let c = Curve::circle_ccw(Point::ORIGIN, 1.0).unwrap();
        let forward = valuation(&f, &c, &cfg()).unwrap().value;
        let backward = valuation(&f, &c.reverse(), &cfg()).unwrap().value;
        assert!((forward + backward).norm() <= 1e-9 * forward.norm().max(1.0));
    }

    #[test]
    fn valuation_linearity() {
        let f = parse_expr("z^2").unwrap();
        let g = parse_expr("1/z").unwrap();
        let alpha = Edif::new(2.0, -1.0);
        let combo = ExprAst::constant(alpha) * f.clone() + g.clone();
        let c = Curve::circle_ccw(Point::new(0.1, -0.2), 2.0).unwrap();
        let lhs = valuation(&combo, &c, &cfg()).unwrap();
        let rhs = alpha * valuation(&f, &c, &cfg()).unwrap().value
            + valuation(&g, &c, &cfg()).unwrap().value;
        assert!((lhs.value - rhs).norm() <= 1e-9);
    }

    use crate::expr::ExprAst;

    #[test]
    fn reverse_involution_and_endpoints() {
        let poly = Curve::polyline(
            vec![Point::ORIGIN, Point::new(1.0, 0.5), Point::new(0.0, 2.0)],
            false,
        )
        .unwrap();
        let back = poly.reverse();
        assert_eq!(back.start(), Point::new(0.0, 2.0));
        assert_eq!(back.end(), Point::ORIGIN);
        match back.reverse() {
            Curve::Polyline { vertices, .. } => assert_eq!(
                vertices,
                vec![Point::ORIGIN, Point::new(1.0, 0.5), Point::new(0.0, 2.0)]
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn winding_numbers() {
        let square = Curve::polyline(
            vec![
                Point::new(-1.0, -1.0),
                Point::new(1.0, -1.0),
                Point::new(1.0, 1.0),
                Point::new(-1.0, 1.0),
            ],
            true,
        )
        .unwrap();
        assert_eq!(square.winding_number(Point::ORIGIN), Some(1));
        assert_eq!(square.reverse().winding_number(Point::ORIGIN), Some(-1));
        assert_eq!(square.winding_number(Point::new(3.0, 0.0)), Some(0));
        assert_eq!(square.orientation(), Some(Orientation::Ccw));

        let circle = Curve::circle_ccw(Point::new(1.0, 1.0), 0.5).unwrap();
        assert_eq!(circle.winding_number(Point::new(1.0, 1.2)), Some(1));
        assert_eq!(circle.winding_number(Point::ORIGIN), Some(0));
    }

    #[test]
    fn distances() {
        let circle = Curve::circle_ccw(Point::ORIGIN, 2.0).unwrap();
        assert!((circle.distance_to(Point::ORIGIN) - 2.0).abs() <= 1e-15);
        assert!((circle.distance_to(Point::new(3.0, 0.0)) - 1.0).abs() <= 1e-15);

        let seg = Curve::segment(Point::ORIGIN, Point::new(2.0, 0.0)).unwrap();
        assert!((seg.distance_to(Point::new(1.0, 1.0)) - 1.0).abs() <= 1e-15);
        assert!((seg.distance_to(Point::new(-1.0, 0.0)) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn potential_examples() {
        let one = parse_expr("1").unwrap();
        let got = potential_on_segment(&one, Point::ORIGIN, Point::new(3.0, 4.0), &cfg()).unwrap();
        assert!((got - Edif::new(3.0, 4.0)).norm() <= 1e-10);

        let two_z = parse_expr("2*z").unwrap();
        let got =
            potential_on_segment(&two_z, Point::ORIGIN, Point::new(1.0, 1.0), &cfg()).unwrap();
        assert!((got - Edif::new(0.0, 2.0)).norm() <= 1e-10);

        let exp = parse_expr("exp(z)").unwrap();
        let got = potential_on_segment(&exp, Point::ORIGIN, Point::new(1.0, 0.0), &cfg()).unwrap();
        assert!((got - Edif::scalar(E - 1.0)).norm() <= 1e-10);
    }

    #[test]
    fn potential_path_independence() {
        let f = parse_expr("sin(z)*exp(z)").unwrap();
        let base = Point::ORIGIN;
        let target = Point::new(1.0, 1.0);
        let direct = Curve::segment(base, target).unwrap();
        let dogleg = Curve::polyline(
            vec![base, Point::new(1.2, -0.3), Point::new(0.4, 0.9), target],
            false,
        )
        .unwrap();
        let a = valuation_potential(&f, base, target, &direct, &cfg()).unwrap();
        let b = valuation_potential(&f, base, target, &dogleg, &cfg()).unwrap();
        assert!((a - b).norm() <= 1e-9, "{a:?} vs {b:?}");
    }

    #[test]
    fn potential_rejects_mismatched_endpoints() {
        let f = parse_expr("1").unwrap();
        let path = Curve::segment(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        let err = valuation_potential(
            &f,
            Point::new(5.0, 0.0),
            Point::new(1.0, 0.0),
            &path,
            &cfg(),
        );
        assert!(matches!(err, Err(Error::Geometry(_))));
    }

    /// dU = u dx − v dy and dV = u dy + v dx: finite differences of the
    /// computed potential reproduce the field components.
    #[test]
    fn potential_consistency() {
        let f = parse_expr("exp(z)").unwrap();
        let tight = QuadratureConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-13,
            ..QuadratureConfig::default()
        };
        let base = Point::ORIGIN;
        let h = 1e-4;
        for probe in [Point::new(0.5, 0.25), Point::new(-0.3, 0.6)] {
            let w = f.eval(probe).unwrap();
            let pot = |p: Point| potential_on_segment(&f, base, p, &tight).unwrap();
            let east = pot(Point::new(probe.x + h, probe.y));
            let west = pot(Point::new(probe.x - h, probe.y));
            let north = pot(Point::new(probe.x, probe.y + h));
            let south = pot(Point::new(probe.x, probe.y - h));
            let ux = (east.u - west.u) / (2.0 * h);
            let vx = (east.v - west.v) / (2.0 * h);
            let uy = (north.u - south.u) / (2.0 * h);
            let vy = (north.v - south.v) / (2.0 * h);
            assert!((ux - w.u).abs() <= 1e-6, "U,x = u failed at {probe:?}");
            assert!((vy - w.u).abs() <= 1e-6, "V,y = u failed at {probe:?}");
            assert!((uy + w.v).abs() <= 1e-6, "U,y = -v failed at {probe:?}");
            assert!((vx - w.v).abs() <= 1e-6, "V,x = v failed at {probe:?}");
        }
    }

    /// The potential map itself satisfies the Cauchy-Riemann relations.
    #[test]
    fn potential_is_strict_harmonic() {
        struct PotentialField {
            f: ExprAst,
            base: Point,
            cfg: QuadratureConfig,
        }
        impl Field for PotentialField {
            fn eval(&self, at: Point) -> crate::error::Result<Edif> {
                potential_on_segment(&self.f, self.base, at, &self.cfg)
            }
        }
        let pot = PotentialField {
            f: parse_expr("cos(z)").unwrap(),
            base: Point::ORIGIN,
            cfg: QuadratureConfig {
                rel_tol: 1e-12,
                abs_tol: 1e-13,
                ..QuadratureConfig::default()
            },
        };
        let samples = sample_grid(-0.5, 0.5, -0.5, 0.5, 3);
        let (ok, worst) = is_strict_harmonic(&pot, &samples, 1e-6).unwrap();
        assert!(ok, "worst residual {worst:?}");
    }

    #[test]
    fn singular_sample_on_curve() {
        // the 21-point rule hits the segment midpoint, which is the pole
        let f = parse_expr("1/z").unwrap();
        let path = Curve::segment(Point::new(-1.0, -1.0), Point::new(1.0, 1.0)).unwrap();
        let err = valuation(&f, &path, &cfg());
        assert!(matches!(err, Err(Error::SingularOnCurve { .. })), "{err:?}");
    }

    #[test]
    fn curve_json_round_trip() {
        let circle = Curve::circle_ccw(Point::new(0.5, -1.5), 2.0).unwrap();
        let json = serde_json::to_string(&circle).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"circle","cx":0.5,"cy":-1.5,"r":2.0,"orientation":"ccw"}"#
        );
        let back: Curve = serde_json::from_str(&json).unwrap();
        match back {
            Curve::Circle {
                center,
                radius,
                orientation,
            } => {
                assert_eq!(center, Point::new(0.5, -1.5));
                assert_eq!(radius, 2.0);
                assert_eq!(orientation, Orientation::Ccw);
            }
            other => panic!("unexpected {other:?}"),
        }

        let poly: Curve = serde_json::from_str(
            r#"{"kind":"polyline","points":[[0,0],[1,0],[0,1]],"closed":true}"#,
        )
        .unwrap();
        assert!(poly.is_closed());

        // invalid geometry is rejected at the wire
        let bad = serde_json::from_str::<Curve>(
            r#"{"kind":"circle","cx":0,"cy":0,"r":-1,"orientation":"ccw"}"#,
        );
        assert!(bad.is_err());

        // parametric curves have no wire format
        let param = Curve::parametric(
            Arc::new(|t| (Point::new(t, 0.0), Point::new(1.0, 0.0))),
            false,
        );
        assert!(serde_json::to_string(&param).is_err());
    }

    #[test]
    fn parametric_matches_circle() {
        let f = parse_expr("1/z").unwrap();
        let param = Curve::parametric(
            Arc::new(|t| {
                let th = TAU * t;
                (
                    Point::new(th.cos(), th.sin()),
                    Point::new(-TAU * th.sin(), TAU * th.cos()),
                )
            }),
            true,
        );
        let res = valuation(&f, &param, &cfg()).unwrap();
        assert!((res.value - Edif::new(0.0, 2.0 * PI)).norm() <= 1e-9);
    }
}
