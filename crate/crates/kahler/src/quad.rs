//! Adaptive line-integral quadrature.
//!
//! Valuations reduce to a pair of real line integrals sharing their field
//! evaluations, so the engine integrates an ℝ²-valued integrand with one
//! embedded Gauss-Legendre rule pair (10 and 21 points) per parameter
//! segment. A segment is accepted when the rule difference meets its share
//! of the tolerance, otherwise it is bisected. Subdivision is depth-first
//! left-to-right and partial sums accumulate in that fixed order, so a
//! valuation is reproducible bit-for-bit run to run.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::Edif;
use crate::error::{Error, Result};
use crate::expr::Point;

/// Parametric sampler for user-supplied curves: `t ∈ [0, 1]` to the point
/// and its derivative with respect to `t`.
pub type ParamSampler = Arc<dyn Fn(f64) -> (Point, Point) + Send + Sync>;

/// Tolerances and budget for a valuation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Relative tolerance against the coarse estimate of the whole integral.
    pub rel_tol: f64,
    /// Absolute tolerance floor, load-bearing for integrals that vanish.
    pub abs_tol: f64,
    /// Hard cap on integrand evaluations.
    pub max_evals: usize,
    /// Optional guard distance between declared poles and the curve;
    /// `0` disables the check.
    pub min_pole_distance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_evals: 1_000_000,
            min_pole_distance: 0.0,
        }
    }
}

impl QuadratureConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0 || !self.rel_tol.is_finite() {
            return Err(Error::Config("rel_tol must be positive and finite"));
        }
        if self.abs_tol <= 0.0 || !self.abs_tol.is_finite() {
            return Err(Error::Config("abs_tol must be positive and finite"));
        }
        if self.max_evals < 64 {
            return Err(Error::Config("max_evals must be at least 64"));
        }
        if self.min_pole_distance < 0.0 || self.min_pole_distance.is_nan() {
            return Err(Error::Config("min_pole_distance must be non-negative"));
        }
        Ok(())
    }
}

/// Valuation value with its accumulated error estimate and cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationResult {
    pub value: Edif,
    pub abs_error_estimate: f64,
    pub integrand_evals: usize,
}

/// One recorded integrand evaluation, for `--dump-samples` style tracing.
/// `t` is the global curve parameter in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrandSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
}

/// One parameter segment of a curve, mapped over local `s ∈ [0, 1]`.
#[derive(Clone)]
pub(crate) enum SegmentGeom {
    /// Circular arc, angle swept linearly from `th0` to `th1` (signed).
    Arc {
        cx: f64,
        cy: f64,
        r: f64,
        th0: f64,
        th1: f64,
    },
    /// Straight segment from `a` to `b`.
    Line { a: Point, b: Point },
    /// Slice `[t0, t1]` of a user parametrization.
    Param {
        sampler: ParamSampler,
        t0: f64,
        t1: f64,
    },
}

impl SegmentGeom {
    /// Point and velocity with respect to the local parameter.
    fn at(&self, s: f64) -> (Point, Point) {
        match self {
            SegmentGeom::Arc {
                cx,
                cy,
                r,
                th0,
                th1,
            } => {
                let dth = th1 - th0;
                let th = th0 + dth * s;
                (
                    Point::new(cx + r * th.cos(), cy + r * th.sin()),
                    Point::new(-r * dth * th.sin(), r * dth * th.cos()),
                )
            }
            SegmentGeom::Line { a, b } => (
                Point::new(a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s),
                Point::new(b.x - a.x, b.y - a.y),
            ),
            SegmentGeom::Param { sampler, t0, t1 } => {
                let dt = t1 - t0;
                let (p, dp) = sampler(t0 + dt * s);
                (p, Point::new(dp.x * dt, dp.y * dt))
            }
        }
    }
}

// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence. The middle node of an odd rule is
// pinned to exactly 0 so symmetric geometry is sampled exactly.
fn gauss_legendre(n: usize) -> Rule {
    let mut rule = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        if n % 2 == 1 && i == m - 1 {
            x = 0.0;
        }
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = (((2 * j + 1) as f64) * x * p1 - (j as f64) * p2) / ((j + 1) as f64);
            }
            dp = (n as f64) * (x * p0 - p1) / (x * x - 1.0);
            let delta = p0 / dp;
            x -= delta;
            if delta.abs() <= 1e-15 {
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            x = 0.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x.abs(), w);
        rule[n - 1 - i] = (x.abs(), w);
    }
    rule
}

type Rule = Vec<(f64, f64)>;

fn rule_pair() -> &'static (Rule, Rule) {
    static PAIR: OnceLock<(Rule, Rule)> = OnceLock::new();
    PAIR.get_or_init(|| (gauss_legendre(10), gauss_legendre(21)))
}

/// Evaluations consumed by one low+high rule application.
const EVALS_PER_NODE: usize = 31;
/// Narrower intervals than this are accepted as-is; their (honest) error
/// estimate stays in the total.
const MIN_WIDTH: f64 = 1e-10;

struct Node {
    seg: usize,
    s0: f64,
    s1: f64,
    high: [f64; 2],
    err: f64,
    /// Integral of the integrand magnitude, the scale of unavoidable
    /// floating-point noise in this segment's sums.
    resabs: f64,
}

struct Engine<'a> {
    segs: &'a [SegmentGeom],
    eval: &'a mut dyn FnMut(f64, Point) -> Result<Edif>,
    cfg: &'a QuadratureConfig,
    evals: usize,
    sum: [f64; 2],
    err_sum: f64,
    tol_per_unit: f64,
}

impl Engine<'_> {
    fn global_t(&self, seg: usize, s: f64) -> f64 {
        (seg as f64 + s) / (self.segs.len() as f64)
    }

    fn eval_node(&mut self, seg: usize, s0: f64, s1: f64) -> Result<Node> {
        if self.evals + EVALS_PER_NODE > self.cfg.max_evals {
            return Err(Error::Budget { evals: self.evals });
        }
        self.evals += EVALS_PER_NODE;
        let geom = &self.segs[seg];
        let mid = 0.5 * (s0 + s1);
        let half = 0.5 * (s1 - s0);
        let (low_rule, high_rule) = rule_pair();
        let mut low = [0.0; 2];
        let mut high = [0.0; 2];
        let mut resabs = 0.0;
        for (acc, rule) in [(&mut low, low_rule), (&mut high, high_rule)] {
            for &(x, w) in rule.iter() {
                let s = mid + half * x;
                let t = self.global_t(seg, s);
                let (p, vel) = geom.at(s);
                let f = (self.eval)(t, p).map_err(|e| match e {
                    Error::Budget { .. } | Error::Config(_) => e,
                    _ => Error::SingularOnCurve { t, x: p.x, y: p.y },
                })?;
                let du = f.u * vel.x - f.v * vel.y;
                let dv = f.u * vel.y + f.v * vel.x;
                if !du.is_finite() || !dv.is_finite() {
                    return Err(Error::SingularOnCurve { t, x: p.x, y: p.y });
                }
                acc[0] += w * du;
                acc[1] += w * dv;
                if std::ptr::eq(rule, high_rule) {
                    resabs += w * du.hypot(dv);
                }
            }
            acc[0] *= half;
            acc[1] *= half;
        }
        resabs *= half.abs();
        let err = (high[0] - low[0]).hypot(high[1] - low[1]);
        Ok(Node {
            seg,
            s0,
            s1,
            high,
            err,
            resabs,
        })
    }

    fn refine(&mut self, node: Node) -> Result<()> {
        let width = node.s1 - node.s0;
        // The second disjunct is the roundoff floor: once the rule
        // difference is at the noise level of the magnitude integral,
        // further bisection cannot improve anything.
        if node.err <= self.tol_per_unit * width
            || node.err <= 100.0 * f64::EPSILON * node.resabs
            || width <= MIN_WIDTH
        {
            self.sum[0] += node.high[0];
            self.sum[1] += node.high[1];
            self.err_sum += node.err;
            return Ok(());
        }
        let mid = 0.5 * (node.s0 + node.s1);
        let left = self.eval_node(node.seg, node.s0, mid)?;
        let right = self.eval_node(node.seg, mid, node.s1)?;
        self.refine(left)?;
        self.refine(right)
    }
}

/// Integrate the valuation integrand pair over the segments of a curve.
pub(crate) fn integrate_over_segments(
    segs: &[SegmentGeom],
    eval: &mut dyn FnMut(f64, Point) -> Result<Edif>,
    cfg: &QuadratureConfig,
) -> Result<ValuationResult> {
    cfg.validate()?;
    if segs.is_empty() {
        return Err(Error::Geometry("curve has no segments".into()));
    }
    let mut engine = Engine {
        segs,
        eval,
        cfg,
        evals: 0,
        sum: [0.0; 2],
        err_sum: 0.0,
        tol_per_unit: 0.0,
    };
    // Coarse pass fixes the tolerance scale deterministically.
    let mut roots = Vec::with_capacity(segs.len());
    for seg in 0..segs.len() {
        roots.push(engine.eval_node(seg, 0.0, 1.0)?);
    }
    let coarse: [f64; 2] = roots
        .iter()
        .fold([0.0; 2], |acc, n| [acc[0] + n.high[0], acc[1] + n.high[1]]);
    let scale = coarse[0].hypot(coarse[1]);
    engine.tol_per_unit = (cfg.abs_tol + cfg.rel_tol * scale) / (segs.len() as f64);
    for node in roots {
        engine.refine(node)?;
    }
    Ok(ValuationResult {
        value: Edif::new(engine.sum[0], engine.sum[1]),
        abs_error_estimate: engine.err_sum,
        integrand_evals: engine.evals,
    })
}
