use crate::contact::{edge_beta, legendrian_residual, ContactForm};
use crate::error::{Error, Result};
use crate::geometry::{SpaceCurve, P3};

use super::trace::{FrameReport, IsotopyTrace};

/// Closed frames whose `|∮ β|` exceeds this fraction of `ℓ · sup‖β‖` have no
/// closed Legendrian lift.
pub const FRAME_CLOSURE_TOL: f64 = 1e-8;
const BASE_TOL: f64 = 1e-12;

/// Lifts every frame of a planar isotopy to a Legendrian curve with `z = z0`
/// at vertex `base`.
///
/// Lifts are vertex-for-vertex (no subdivision). Each report records the
/// frame's β-integral, its relative Legendrian residual and `fixed_drift`:
/// the largest `|z − z⁽⁰⁾|` over vertices outside the moved span, the span
/// running from the first to the last vertex whose projection differs from
/// frame 0.
pub fn legendrian_isotopy_lift(
    form: &ContactForm,
    trace: &IsotopyTrace<2>,
    base: usize,
    z0: f64,
) -> Result<IsotopyTrace<3>> {
    let first = trace
        .frames
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trace".into()))?;
    let n = first.len();
    if base >= n {
        return Err(Error::InvalidArgument(format!("base vertex {base} out of range")));
    }
    let anchor = first.vertex(base);
    let mut frames = Vec::with_capacity(trace.len());
    let mut reports = Vec::with_capacity(trace.len());
    for (k, frame) in trace.frames.iter().enumerate() {
        if frame.len() != n || frame.is_closed() != first.is_closed() {
            return Err(Error::InvalidArgument(format!(
                "frame {k} does not match frame 0 vertex for vertex"
            )));
        }
        if (frame.vertex(base) - anchor).norm() > BASE_TOL * first.bbox_diagonal() {
            return Err(Error::Precondition(format!("base vertex moves in frame {k}")));
        }
        let mut cum = Vec::with_capacity(frame.edge_count() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for e in 0..frame.edge_count() {
            let (p, q) = frame.edge(e);
            form.check_segment(&p, &q)?;
            acc += edge_beta(form, &p, &q);
            cum.push(acc);
        }
        if frame.is_closed() {
            let scale = frame.arc_length() * crate::contact::beta_sup(form, frame).max(1.0);
            if acc.abs() > FRAME_CLOSURE_TOL * scale {
                return Err(Error::Precondition(format!(
                    "frame {k} has ∮β = {acc:.3e}; its lift does not close"
                )));
            }
        }
        let pts: Vec<P3> = frame
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, p)| P3::new(p.x, p.y, z0 - (cum[i] - cum[base])))
            .collect();
        let lifted = SpaceCurve::new(pts, frame.is_closed())?;
        lifted
            .check_embedded()
            .map_err(|e| Error::NotEmbedded(format!("lifted frame {k}: {e}")))?;
        let verdict = legendrian_residual(form, &lifted)?;
        reports.push(FrameReport {
            time: trace.times[k],
            beta_integral: Some(acc),
            chord_arc: trace.reports.get(k).and_then(|r| r.chord_arc),
            relative_residual: Some(verdict.relative_residual),
            fixed_drift: None,
        });
        frames.push(lifted);
    }

    let z_ref = frames[0].heights();
    for (k, frame) in frames.iter().enumerate() {
        let moved: Vec<usize> = (0..n)
            .filter(|&i| trace.frames[k].vertex(i) != first.vertex(i))
            .collect();
        let z = frame.heights();
        let drift = (0..n)
            .filter(|i| match (moved.first(), moved.last()) {
                (Some(&a), Some(&b)) => *i < a || *i > b,
                _ => true,
            })
            .map(|i| (z[i] - z_ref[i]).abs())
            .fold(0.0, f64::max);
        reports[k].fixed_drift = Some(drift);
    }
    Ok(IsotopyTrace {
        times: trace.times.clone(),
        frames,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::line_integral_beta;
    use crate::geometry::{PlaneCurve, P2};
    use crate::moves::{bypass_isotopy, correct_trace, CorrectionSquare, DiskChart};

    /// Open path with a semicircular bump over `[−0.2, 0.2]` on the x-axis and
    /// a vertical run through the correction square centred at `(1, 0.5)`.
    fn bumped_path() -> (PlaneCurve, (usize, usize), (usize, usize)) {
        let mut pts = vec![P2::new(-1.0, 0.0)];
        let m = 32;
        for k in 0..=m {
            let phi = std::f64::consts::PI * (1.0 - k as f64 / m as f64);
            pts.push(P2::new(0.2 * phi.cos(), 0.2 * phi.sin()));
        }
        let bump = (1, m + 1);
        pts.push(P2::new(1.0, 0.0));
        let start = pts.len();
        for k in 1..=20 {
            pts.push(P2::new(1.0, 0.05 * k as f64));
        }
        let span = (start - 1, start + 19);
        pts.push(P2::new(1.0, 1.5));
        (PlaneCurve::open(pts).unwrap(), bump, span)
    }

    #[test]
    fn constant_trace() {
        let c = PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(1.0, 0.5), P2::new(2.0, 0.0)]).unwrap();
        let trace = IsotopyTrace {
            times: vec![0.0, 0.5, 1.0],
            frames: vec![c.clone(), c.clone(), c.clone()],
            reports: vec![],
        };
        let lifted = legendrian_isotopy_lift(&ContactForm::xdy(), &trace, 0, 1.0).unwrap();
        assert_eq!(lifted.frames[0], lifted.frames[2]);
        assert_eq!(lifted.frames[0].vertex(0).z, 1.0);
        assert!(lifted.reports.iter().all(|r| r.fixed_drift == Some(0.0)));
    }

    #[test]
    fn uncorrected_bypass_drifts() {
        let form = ContactForm::xdy();
        let (path, bump, _) = bumped_path();
        let chart = DiskChart::over_segment(P2::new(-0.2, 0.0), P2::new(0.2, 0.0)).unwrap();
        let trace = bypass_isotopy(&chart, &path, bump, &[0.0, 0.25, 0.5, 1.0]).unwrap();
        let lifted = legendrian_isotopy_lift(&form, &trace, 0, 0.0).unwrap();
        let last = path.len() - 1;
        let base_total = line_integral_beta(&form, &trace.frames[0]).unwrap().total;
        for (k, f) in lifted.frames.iter().enumerate() {
            let total = line_integral_beta(&form, &trace.frames[k]).unwrap().total;
            let dz = f.vertex(last).z - lifted.frames[0].vertex(last).z;
            assert!((dz + (total - base_total)).abs() < 1e-14);
            assert!(lifted.reports[k].relative_residual.unwrap() <= 1e-10);
        }
        assert!(lifted.reports[3].fixed_drift.unwrap() > 0.1);
    }

    #[test]
    fn corrected_bypass_fixes_far_end() {
        let form = ContactForm::xdy();
        let (path, bump, span) = bumped_path();
        let chart = DiskChart::over_segment(P2::new(-0.2, 0.0), P2::new(0.2, 0.0)).unwrap();
        let trace = bypass_isotopy(&chart, &path, bump, &[0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        let sq = CorrectionSquare::axis_aligned(P2::new(1.0, 0.5), 0.5, -0.5, 0.5).unwrap();
        let fixed = correct_trace(&trace, &sq, &form, span, 1e-2).unwrap();
        let lifted = legendrian_isotopy_lift(&form, &fixed, 0, 0.0).unwrap();
        let last = path.len() - 1;
        for f in &lifted.frames {
            assert!((f.vertex(last) - lifted.frames[0].vertex(last)).norm() <= 1e-8);
        }
        for r in &lifted.reports {
            assert!(r.fixed_drift.unwrap() <= 1e-8);
            assert!(r.relative_residual.unwrap() <= 1e-10);
        }
    }

    #[test]
    fn moving_base_rejected() {
        let a = PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(1.0, 0.0)]).unwrap();
        let b = PlaneCurve::open(vec![P2::new(0.0, 0.1), P2::new(1.0, 0.0)]).unwrap();
        let trace = IsotopyTrace {
            times: vec![0.0, 1.0],
            frames: vec![a, b],
            reports: vec![],
        };
        assert!(legendrian_isotopy_lift(&ContactForm::xdy(), &trace, 0, 0.0).is_err());
        assert!(legendrian_isotopy_lift(&ContactForm::xdy(), &trace, 1, 0.0).is_ok());
    }
}
