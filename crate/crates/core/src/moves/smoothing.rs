use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, P2};

/// Corners within this of `π` count as straight.
const STRAIGHT_TOL: f64 = 1e-12;

/// Replaces vertex `vertex` by a circular arc tangent to both incident edges
/// at distance `delta` from the corner, sampled at `samples` points including
/// the two tangency points.
pub fn corner_round(
    curve: &PlaneCurve,
    vertex: usize,
    delta: f64,
    samples: usize,
) -> Result<PlaneCurve> {
    let n = curve.len();
    if vertex >= n || (!curve.is_closed() && (vertex == 0 || vertex == n - 1)) {
        return Err(Error::InvalidArgument(format!(
            "vertex {vertex} is not an interior vertex"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 arc samples".into()));
    }
    let v = curve.vertex(vertex);
    let prev = curve.vertex((vertex + n - 1) % n);
    let next = curve.vertex((vertex + 1) % n);
    let (l1, l2) = ((prev - v).norm(), (next - v).norm());
    if !(delta > 0.0) || delta > l1.min(l2) / 3.0 {
        return Err(Error::InvalidArgument(format!(
            "delta {delta} must lie in (0, {}]",
            l1.min(l2) / 3.0
        )));
    }
    let u1 = (prev - v) / l1;
    let u2 = (next - v) / l2;
    let theta = (u1.x * u2.y - u1.y * u2.x).abs().atan2(u1.dot(&u2));
    if theta >= std::f64::consts::PI - STRAIGHT_TOL {
        return Err(Error::InvalidArgument(format!("vertex {vertex} is straight")));
    }
    let half = theta / 2.0;
    let radius = delta * half.tan();
    let bisector = (u1 + u2).normalize();
    let centre = v + bisector * (delta / half.cos());
    let (p1, p2) = (v + u1 * delta, v + u2 * delta);
    let a1 = (p1 - centre).y.atan2((p1 - centre).x);
    let mut sweep = (p2 - centre).y.atan2((p2 - centre).x) - a1;
    // the short way round: |sweep| = π − θ
    while sweep > std::f64::consts::PI {
        sweep -= std::f64::consts::TAU;
    }
    while sweep < -std::f64::consts::PI {
        sweep += std::f64::consts::TAU;
    }
    let arc = (0..samples).map(|k| {
        if k == 0 {
            p1
        } else if k == samples - 1 {
            p2
        } else {
            let a = a1 + sweep * k as f64 / (samples - 1) as f64;
            centre + P2::new(a.cos(), a.sin()) * radius
        }
    });
    let mut out = Vec::with_capacity(n + samples);
    out.extend_from_slice(&curve.vertices()[..vertex]);
    out.extend(arc);
    out.extend_from_slice(&curve.vertices()[vertex + 1..]);
    let rounded = PlaneCurve::new(out, curve.is_closed())?;
    if curve.is_embedded() {
        rounded.check_embedded()?;
    }
    Ok(rounded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{corner_angles, min_corner_angle};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn right_angle() -> PlaneCurve {
        PlaneCurve::open(vec![P2::new(1.0, 0.0), P2::new(0.0, 0.0), P2::new(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn right_angle_arc() {
        let r = corner_round(&right_angle(), 1, 0.25, 64).unwrap();
        assert_eq!(r.len(), 66);
        assert_eq!(r.vertex(0), P2::new(1.0, 0.0));
        assert_eq!(r.vertex(65), P2::new(0.0, 1.0));
        let c = P2::new(0.25, 0.25);
        for p in &r.vertices()[1..65] {
            assert!(((p - c).norm() - 0.25).abs() < 1e-15);
        }
        assert!((r.vertex(1) - P2::new(0.25, 0.0)).norm() < 1e-15);
        assert!((r.vertex(64) - P2::new(0.0, 0.25)).norm() < 1e-15);
        // total turning is π/2
        let turns: Vec<f64> = corner_angles(&r).iter().map(|&(_, a)| PI - a).collect();
        assert!((turns.iter().sum::<f64>() - FRAC_PI_2).abs() < 1e-12);
        assert!(r.arc_length() < right_angle().arc_length());
        // arc of length πδ/2 replaces two legs of length δ
        let expected = 2.0 - 0.5 + 0.25 * FRAC_PI_2;
        assert!((r.arc_length() - expected).abs() < 1e-4);
    }

    #[test]
    fn errors() {
        let straight =
            PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(1.0, 0.0), P2::new(2.0, 0.0)])
                .unwrap();
        assert!(corner_round(&straight, 1, 0.1, 8).is_err());
        assert!(corner_round(&right_angle(), 1, 0.34, 8).is_err());
        assert!(corner_round(&right_angle(), 0, 0.1, 8).is_err());
    }

    #[test]
    fn cusp_free_output() {
        for theta in [0.2f64, 1.0, 2.0, 3.0] {
            let c = PlaneCurve::open(vec![
                P2::new(theta.cos(), theta.sin()),
                P2::new(0.0, 0.0),
                P2::new(1.0, 0.0),
            ])
            .unwrap();
            let r = corner_round(&c, 1, 0.3, 32).unwrap();
            assert!(min_corner_angle(&r).angle > PI - 0.2);
            assert!(r.arc_length() < c.arc_length());
        }
    }

    #[test]
    fn closed_square_corner() {
        let sq = PlaneCurve::closed_from(vec![
            P2::new(0.0, 0.0),
            P2::new(1.0, 0.0),
            P2::new(1.0, 1.0),
            P2::new(0.0, 1.0),
        ])
        .unwrap();
        let r = corner_round(&sq, 0, 0.2, 16).unwrap();
        assert!(r.is_closed() && r.is_embedded());
        assert_eq!(r.len(), 19);
    }
}
