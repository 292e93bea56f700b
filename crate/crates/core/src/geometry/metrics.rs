use std::f64::consts::PI;

use nalgebra::SVector;

use super::segment::closest_points;
use super::{Curve, CurvePoint, EMBED_TOL};
use crate::error::{Error, Result};

pub fn arc_length<const D: usize>(curve: &Curve<D>) -> f64 {
    curve.arc_length()
}

/// Chord-arc (Lavrentiev) constant of a polyline.
///
/// `constant` is the supremum over all pairs of points of the polyline,
/// including edge interiors, of `ℓ(shorter subarc) / chord`. `vertex_constant`
/// restricts the same ratio to vertex pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordArcReport {
    pub constant: f64,
    pub witness: (CurvePoint, CurvePoint),
    pub vertex_constant: f64,
    pub vertex_witness: (usize, usize),
    pub length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CornerAngle {
    /// Angle in `[0, π]` between the two edge rays leaving the vertex.
    pub angle: f64,
    /// `None` when the curve has no corner (open two-vertex polyline).
    pub vertex: Option<usize>,
}

fn angle_between<const D: usize>(u: &SVector<f64, D>, v: &SVector<f64, D>) -> f64 {
    // |u × v| via Lagrange's identity, valid in any dimension
    let dot = u.dot(v);
    let cross2 = (u.norm_squared() * v.norm_squared() - dot * dot).max(0.0);
    let cross = if D == 2 {
        (u[0] * v[1] - u[1] * v[0]).abs()
    } else {
        cross2.sqrt()
    };
    cross.atan2(dot)
}

/// Corner angle at every vertex that has two incident edges, in vertex order.
pub fn corner_angles<const D: usize>(curve: &Curve<D>) -> Vec<(usize, f64)> {
    let n = curve.len();
    let range: Box<dyn Iterator<Item = usize>> = if curve.is_closed() {
        Box::new(0..n)
    } else {
        Box::new(1..n - 1)
    };
    range
        .map(|i| {
            let v = curve.vertex(i);
            let prev = curve.vertex((i + n - 1) % n);
            let next = curve.vertex((i + 1) % n);
            (i, angle_between(&(prev - v), &(next - v)))
        })
        .collect()
}

pub fn min_corner_angle<const D: usize>(curve: &Curve<D>) -> CornerAngle {
    corner_angles(curve)
        .into_iter()
        .fold(
            CornerAngle {
                angle: PI,
                vertex: None,
            },
            |best, (i, a)| {
                if best.vertex.is_none() || a < best.angle {
                    CornerAngle {
                        angle: a,
                        vertex: Some(i),
                    }
                } else {
                    best
                }
            },
        )
}

struct ArcMetric {
    cum: Vec<f64>,
    total: f64,
    closed: bool,
}

impl ArcMetric {
    fn new<const D: usize>(curve: &Curve<D>) -> Self {
        let cum = curve.cumulative_lengths();
        let total = *cum.last().unwrap();
        ArcMetric {
            cum,
            total,
            closed: curve.is_closed(),
        }
    }

    fn between(&self, a: f64, b: f64) -> f64 {
        let d = (b - a).abs();
        if self.closed {
            d.min(self.total - d)
        } else {
            d
        }
    }
}

const GOLDEN_ITERS: usize = 64;

/// Maximises a unimodal function on `[lo, hi]`; the endpoints are evaluated
/// exactly so boundary maxima are not lost to the bracketing tolerance.
fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc >= fd { (fc, c) } else { (fd, d) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best.0 {
            best = (fx, x);
        }
    }
    best
}

/// Upper bound of `arc/chord` over edges `i < j`: the chord is at least its
/// projection `L` on the direction between the edge midpoints, the forward
/// arc and `L` are affine in `(s, u)`, so `arc/L` peaks at a corner when
/// `L > 0` on all four corners.
fn projected_bound<const D: usize>(
    metric: &ArcMetric,
    i: usize,
    j: usize,
    lens: &[f64],
    (a0, a1): (SVector<f64, D>, SVector<f64, D>),
    (b0, b1): (SVector<f64, D>, SVector<f64, D>),
) -> Option<f64> {
    let e = ((b0 + b1) - (a0 + a1)).try_normalize(0.0)?;
    let mut bound: f64 = 0.0;
    for (s, u) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        let p = a0 + (a1 - a0) * s;
        let q = b0 + (b1 - b0) * u;
        let l = (q - p).dot(&e);
        if l <= 0.0 {
            return None;
        }
        let arc = metric.cum[j] + u * lens[j] - metric.cum[i] - s * lens[i];
        bound = bound.max(arc / l);
    }
    Some(bound)
}

/// Chord-arc constant of an embedded polyline.
///
/// The ratio `arc/chord` restricted to a pair of non-adjacent edges is
/// quasiconcave (affine or concave numerator, convex denominator), so each
/// edge pair is maximised by nested golden-section search after a cheap
/// upper-bound test. Pairs of adjacent edges contribute `1/sin(θ/2)` for the
/// corner angle `θ`, attained by points equidistant from the shared vertex.
pub fn chord_arc_constant<const D: usize>(curve: &Curve<D>) -> Result<ChordArcReport> {
    let n = curve.len();
    let tol = EMBED_TOL * curve.bbox_diagonal();
    let metric = ArcMetric::new(curve);
    let v = curve.vertices();

    let mut vbest = (1.0, (0usize, n - 1));
    for i in 0..n {
        for j in i + 1..n {
            let chord = (v[j] - v[i]).norm();
            if chord <= tol {
                return Err(Error::Degenerate(format!("vertices {i} and {j} coincide")));
            }
            let r = metric.between(metric.cum[i], metric.cum[j]) / chord;
            if r > vbest.0 {
                vbest = (r, (i, j));
            }
        }
    }
    curve.check_embedded()?;

    let mut best = (
        vbest.0,
        (
            CurvePoint::vertex(vbest.1 .0),
            CurvePoint::vertex(vbest.1 .1),
        ),
    );
    if !curve.is_closed() && vbest.1 .1 == n - 1 {
        // last vertex as the end of the final edge
        best.1 .1 = CurvePoint {
            edge: n - 2,
            t: 1.0,
        };
    }

    let m = curve.edge_count();
    let lens: Vec<f64> = (0..m).map(|e| curve.edge_len(e)).collect();

    // corners
    for (i, theta) in corner_angles(curve) {
        let prev = (i + m - 1) % m;
        let value = 1.0 / (theta / 2.0).sin();
        if value > best.0 {
            let mut reach = lens[prev].min(lens[i]);
            if curve.is_closed() {
                reach = reach.min(metric.total / 4.0);
            }
            best = (
                value,
                (
                    CurvePoint {
                        edge: prev,
                        t: 1.0 - reach / lens[prev],
                    },
                    CurvePoint {
                        edge: i,
                        t: reach / lens[i],
                    },
                ),
            );
        }
    }

    // non-adjacent edge pairs
    for i in 0..m {
        let (a0, a1) = curve.edge(i);
        for j in i + 1..m {
            if curve.edges_adjacent(i, j) {
                continue;
            }
            let (b0, b1) = curve.edge(j);
            let dmin = closest_points(&a0, &a1, &b0, &b1).2;
            let arc_max = if curve.is_closed() {
                (metric.cum[j + 1] - metric.cum[i]).min(metric.total / 2.0)
            } else {
                metric.cum[j + 1] - metric.cum[i]
            };
            if arc_max <= best.0 * dmin * (1.0 + 1e-12) {
                continue;
            }
            if let Some(bound) = projected_bound(&metric, i, j, &lens, (a0, a1), (b0, b1)) {
                if bound <= best.0 * (1.0 - 1e-12) {
                    continue;
                }
            }
            let ratio = |s: f64, u: f64| {
                let p = a0 + (a1 - a0) * s;
                let q = b0 + (b1 - b0) * u;
                let arc = metric.between(
                    metric.cum[i] + s * lens[i],
                    metric.cum[j] + u * lens[j],
                );
                arc / (q - p).norm()
            };
            let inner = |s: f64| golden_max(|u| ratio(s, u), 0.0, 1.0);
            let (value, s) = golden_max(|s| inner(s).0, 0.0, 1.0);
            if value > best.0 {
                let u = inner(s).1;
                best = (
                    value,
                    (CurvePoint { edge: i, t: s }, CurvePoint { edge: j, t: u }),
                );
            }
        }
    }

    Ok(ChordArcReport {
        constant: best.0.max(1.0),
        witness: best.1,
        vertex_constant: vbest.0.max(1.0),
        vertex_witness: vbest.1,
        length: metric.total,
    })
}

/// Bi-Lipschitz constant of the vertex correspondence `source[i] ↦ image[i]`:
/// the maximum over vertex pairs of `max(r, 1/r)` with `r` the ratio of image
/// to source distances.
pub fn bilipschitz_constant<const D: usize, const E: usize>(
    source: &Curve<D>,
    image: &Curve<E>,
) -> Result<f64> {
    if source.len() != image.len() {
        return Err(Error::InvalidArgument(format!(
            "vertex counts differ: {} vs {}",
            source.len(),
            image.len()
        )));
    }
    source.check_embedded()?;
    image.check_embedded()?;
    let (p, q) = (source.vertices(), image.vertices());
    let mut c = 1.0f64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let r = (q[j] - q[i]).norm() / (p[j] - p[i]).norm();
            c = c.max(r).max(1.0 / r);
        }
    }
    Ok(c)
}
