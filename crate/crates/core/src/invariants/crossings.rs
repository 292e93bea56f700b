use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{segment::intersect_2d, SpaceCurve, P2, P3};

/// Fixed projection directions, tried in order. Pseudo-random so that no
/// coordinate plane or diagonal of a hand-made test curve is special.
pub const DIRECTIONS: [[f64; 3]; 8] = [
    [0.1234, 0.3071, 0.9436],
    [0.8213, -0.2377, 0.5187],
    [-0.4411, 0.7713, 0.4589],
    [0.2902, 0.9113, -0.2920],
    [-0.6634, -0.3407, 0.6662],
    [0.5519, 0.1833, -0.8135],
    [-0.0871, -0.9372, 0.3377],
    [0.7390, 0.6118, 0.2823],
];

pub fn direction(k: usize) -> P3 {
    let d = DIRECTIONS[k];
    P3::new(d[0], d[1], d[2]).normalize()
}

/// Crossings closer than this (in edge parameter) to a vertex are rejected.
const PARAM_TOL: f64 = 1e-9;
/// Strands closer than this fraction of the diagonal along the projection
/// direction count as touching.
const HEIGHT_TOL: f64 = 1e-12;

/// Which strand passes over at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    A,
    B,
}

/// A transverse crossing of edge `edge_a` of curve `curve_a` with edge
/// `edge_b` of curve `curve_b` in the projection along a direction `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingRecord {
    pub curve_a: usize,
    pub edge_a: usize,
    pub curve_b: usize,
    pub edge_b: usize,
    /// Crossing point in the projection plane, in the basis `(e₁, e₂)` with
    /// `e₁ × e₂ = d`.
    pub x: f64,
    pub y: f64,
    pub s: f64,
    pub t: f64,
    /// Height difference `⟨p_over − p_under, d⟩ > 0`.
    pub gap: f64,
    /// `sign det(d_over, d_under, d)`.
    pub sign: i8,
    pub over: Over,
}

/// Orthonormal `(e₁, e₂)` with `e₁ × e₂ = d`.
pub fn projection_basis(d: &P3) -> (P3, P3) {
    let helper = if d.x.abs() < 0.9 { P3::x() } else { P3::y() };
    let e1 = helper.cross(d).normalize();
    let e2 = d.cross(&e1);
    (e1, e2)
}

struct Projected {
    xy: Vec<P2>,
    h: Vec<f64>,
}

fn project(curve: &SpaceCurve, d: &P3, e1: &P3, e2: &P3) -> Projected {
    Projected {
        xy: curve.vertices().iter().map(|p| P2::new(p.dot(e1), p.dot(e2))).collect(),
        h: curve.vertices().iter().map(|p| p.dot(d)).collect(),
    }
}

/// All crossings between edges of `a` and `b` (or between non-adjacent edges
/// of `a` when `b` is `None`) in the projection along `d`.
pub fn crossings(a: &SpaceCurve, b: Option<&SpaceCurve>, d: &P3) -> Result<Vec<CrossingRecord>> {
    let d = d.normalize();
    let (e1, e2) = projection_basis(&d);
    let pa = project(a, &d, &e1, &e2);
    let pb = b.map(|b| project(b, &d, &e1, &e2));
    let (cb, pbr) = match (b, &pb) {
        (Some(b), Some(p)) => (b, p),
        _ => (a, &pa),
    };
    let diag = a.bbox_diagonal().max(cb.bbox_diagonal());
    let self_pairs = b.is_none();
    let edge = |c: &SpaceCurve, p: &Projected, e: usize| {
        let j = (e + 1) % c.len();
        (e, j, p.xy[e], p.xy[j])
    };
    let bbox = |p: P2, q: P2| (p.inf(&q), p.sup(&q));

    let mut out = Vec::new();
    for ea in 0..a.edge_count() {
        let (ia, ja, p0, p1) = edge(a, &pa, ea);
        let (alo, ahi) = bbox(p0, p1);
        let start = if self_pairs { ea + 1 } else { 0 };
        for eb in start..cb.edge_count() {
            if self_pairs && a.edges_adjacent(ea, eb) {
                continue;
            }
            let (ib, jb, q0, q1) = edge(cb, pbr, eb);
            let (blo, bhi) = bbox(q0, q1);
            let slack = 1e-12 * diag;
            if ahi.x + slack < blo.x || bhi.x + slack < alo.x || ahi.y + slack < blo.y || bhi.y + slack < alo.y {
                continue;
            }
            let da = p1 - p0;
            let db = q1 - q0;
            let cross = da.x * db.y - da.y * db.x;
            if cross.abs() <= 1e-12 * da.norm() * db.norm() {
                // parallel: only an overlap is a problem
                let off = (q0 - p0).x * da.y - (q0 - p0).y * da.x;
                if off.abs() <= 1e-12 * diag * da.norm() {
                    let along = |p: P2| (p - p0).dot(&da) / da.norm_squared();
                    let (u0, u1) = (along(q0), along(q1));
                    if u0.max(u1) > -PARAM_TOL && u0.min(u1) < 1.0 + PARAM_TOL {
                        return Err(Error::NonGeneric(format!(
                            "edges {ea} and {eb} overlap in projection"
                        )));
                    }
                }
                continue;
            }
            let Some((s, t)) = intersect_2d(&p0, &p1, &q0, &q1) else {
                continue;
            };
            let near = |x: f64| x.abs() <= PARAM_TOL || (1.0 - x).abs() <= PARAM_TOL;
            if near(s) || near(t) {
                return Err(Error::NonGeneric(format!(
                    "crossing of edges {ea} and {eb} is at a vertex"
                )));
            }
            let ha = pa.h[ia] + (pa.h[ja] - pa.h[ia]) * s;
            let hb = pbr.h[ib] + (pbr.h[jb] - pbr.h[ib]) * t;
            if (ha - hb).abs() <= HEIGHT_TOL * diag {
                return Err(Error::Degenerate(format!(
                    "edges {ea} and {eb} intersect in space"
                )));
            }
            let dir_a = a.vertex(ja) - a.vertex(ia);
            let dir_b = cb.vertex(jb) - cb.vertex(ib);
            let (over, d_over, d_under) = if ha > hb {
                (Over::A, dir_a, dir_b)
            } else {
                (Over::B, dir_b, dir_a)
            };
            let det = d_over.cross(&d_under).dot(&d);
            let p = p0 + da * s;
            out.push(CrossingRecord {
                curve_a: 0,
                edge_a: ea,
                curve_b: if self_pairs { 0 } else { 1 },
                edge_b: eb,
                x: p.x,
                y: p.y,
                s,
                t,
                gap: (ha - hb).abs(),
                sign: if det > 0.0 { 1 } else { -1 },
                over,
            });
        }
    }
    Ok(out)
}

/// Writes one CSV row per crossing.
pub fn write_crossings_csv<W: Write>(records: &[CrossingRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r)?;
    }
    wr.flush().map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}
