//! Segment predicates shared by the embeddedness test and the crossing
//! detector.

use nalgebra::SVector;

use super::Curve;

/// Closest points between segments `p1q1` and `p2q2`: returns the affine
/// parameters `(s, t)` on each segment and the distance between the points.
pub fn closest_points<const D: usize>(
    p1: &SVector<f64, D>,
    q1: &SVector<f64, D>,
    p2: &SVector<f64, D>,
    q2: &SVector<f64, D>,
) -> (f64, f64, f64) {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let tiny = f64::MIN_POSITIVE;
    let (s, t);
    if a <= tiny && e <= tiny {
        s = 0.0;
        t = 0.0;
    } else if a <= tiny {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= tiny {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    let dist = ((p1 + d1 * s) - (p2 + d2 * t)).norm();
    (s, t, dist)
}

pub fn point_segment_distance<const D: usize>(
    p: &SVector<f64, D>,
    a: &SVector<f64, D>,
    b: &SVector<f64, D>,
) -> f64 {
    let d = b - a;
    let len2 = d.dot(&d);
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&d) / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// 2D segment intersection in parametric form. Returns `(s, t)` with
/// `p1 + s (q1 − p1) = p2 + t (q2 − p2)` when the supporting lines are not
/// parallel and both parameters lie in `[0, 1]`.
pub fn intersect_2d(
    p1: &nalgebra::Vector2<f64>,
    q1: &nalgebra::Vector2<f64>,
    p2: &nalgebra::Vector2<f64>,
    q2: &nalgebra::Vector2<f64>,
) -> Option<(f64, f64)> {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let denom = d1.perp(&d2);
    if denom == 0.0 {
        return None;
    }
    let r = p2 - p1;
    let s = r.perp(&d2) / denom;
    let t = r.perp(&d1) / denom;
    if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
        Some((s, t))
    } else {
        None
    }
}

/// Returns the first pair of edges of `curve` that touch within `tol`:
/// non-adjacent edges closer than `tol`, or adjacent edges that fold back onto
/// each other.
pub fn first_self_contact<const D: usize>(curve: &Curve<D>, tol: f64) -> Option<(usize, usize)> {
    let m = curve.edge_count();
    let n = curve.len();
    // fold-backs at shared vertices
    for e in 0..m {
        let next = e + 1;
        if next >= m && !curve.is_closed() {
            break;
        }
        let next = next % m;
        if next == e {
            continue;
        }
        let (a, v) = curve.edge(e);
        let (_, b) = curve.edge(next);
        if point_segment_distance(&a, &v, &b) <= tol || point_segment_distance(&b, &a, &v) <= tol
        {
            return Some((e, next));
        }
    }
    if n < 4 {
        return None;
    }
    // sweep over x-sorted bounding boxes
    let boxes: Vec<(SVector<f64, D>, SVector<f64, D>)> = (0..m)
        .map(|e| {
            let (a, b) = curve.edge(e);
            (a.inf(&b), a.sup(&b))
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| boxes[i].0[0].total_cmp(&boxes[j].0[0]));
    let mut found: Option<(usize, usize)> = None;
    for (k, &i) in order.iter().enumerate() {
        let (lo_i, hi_i) = boxes[i];
        for &j in &order[k + 1..] {
            let (lo_j, hi_j) = boxes[j];
            if lo_j[0] > hi_i[0] + tol {
                break;
            }
            if (1..D).any(|c| lo_j[c] > hi_i[c] + tol || lo_i[c] > hi_j[c] + tol) {
                continue;
            }
            if curve.edges_adjacent(i, j) {
                continue;
            }
            let (a, b) = curve.edge(i);
            let (c, d) = curve.edge(j);
            if closest_points(&a, &b, &c, &d).2 <= tol {
                let pair = (i.min(j), i.max(j));
                if found.map_or(true, |f| pair < f) {
                    found = Some(pair);
                }
            }
        }
    }
    found
}
