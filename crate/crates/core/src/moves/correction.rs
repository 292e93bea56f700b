use crate::contact::{edge_beta, flow, line_integral_beta, ContactForm, VectorField};
use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, P2};

use super::trace::IsotopyTrace;

/// Width of the smooth step that switches the correction field off below
/// `u₋` (above `u₊` for [`Side::Minus`]), in square coordinates.
pub const CUTOFF_MARGIN: f64 = 0.1;
/// Absolute tolerance on the achieved β-integral.
pub const CORRECTION_TOL: f64 = 1e-9;
const FIRST_TIME: f64 = 1.0 / 64.0;
const MAX_TIME: f64 = 65536.0;
const MAX_BISECTIONS: usize = 200;
/// Endpoints of the moved arc must lie within this of the sides `v = ±1`.
const SIDE_TOL: f64 = 1e-9;

/// Which side of the square the flow pushes towards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Towards `u = +1`; shrinks regions in `u > u₋`.
    Plus,
    /// Towards `u = −1`; shrinks regions in `u < u₊`.
    Minus,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Affine image `p = centre + u·e_u + v·e_v` of `[−1, 1]²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrectionSquare {
    pub centre: P2,
    pub e_u: P2,
    pub e_v: P2,
    pub u_minus: f64,
    pub u_plus: f64,
    pub margin: f64,
}

impl CorrectionSquare {
    pub fn new(centre: P2, e_u: P2, e_v: P2, u_minus: f64, u_plus: f64) -> Result<Self> {
        let det = e_u.x * e_v.y - e_u.y * e_v.x;
        let scale = e_u.norm() * e_v.norm();
        if !(det.abs() > 1e-12 * scale) || !det.is_finite() {
            return Err(Error::Degenerate("correction square has collinear axes".into()));
        }
        if !(-1.0 < u_minus && u_minus < u_plus && u_plus < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "need −1 < u₋ < u₊ < 1, got u₋ = {u_minus}, u₊ = {u_plus}"
            )));
        }
        Ok(CorrectionSquare {
            centre,
            e_u,
            e_v,
            u_minus,
            u_plus,
            margin: CUTOFF_MARGIN,
        })
    }

    /// Axis-aligned square with half side `half`, `u` along `x`.
    pub fn axis_aligned(centre: P2, half: f64, u_minus: f64, u_plus: f64) -> Result<Self> {
        Self::new(centre, P2::new(half, 0.0), P2::new(0.0, half), u_minus, u_plus)
    }

    pub fn det(&self) -> f64 {
        self.e_u.x * self.e_v.y - self.e_u.y * self.e_v.x
    }

    pub fn to_local(&self, p: &P2) -> (f64, f64) {
        let d = p - self.centre;
        let det = self.det();
        (
            (d.x * self.e_v.y - d.y * self.e_v.x) / det,
            (self.e_u.x * d.y - self.e_u.y * d.x) / det,
        )
    }

    pub fn to_plane(&self, u: f64, v: f64) -> P2 {
        self.centre + self.e_u * u + self.e_v * v
    }

    /// The path `γ^±` along `∂R` from `start` to `end` through the side
    /// `u = ±1`. Both points must lie on opposite sides `v = ±1`.
    pub fn closing_arc(&self, start: &P2, end: &P2, side: Side) -> Result<PlaneCurve> {
        let (_, vs) = self.to_local(start);
        let (_, ve) = self.to_local(end);
        if (vs.abs() - 1.0).abs() > SIDE_TOL || (ve.abs() - 1.0).abs() > SIDE_TOL || vs * ve > 0.0 {
            return Err(Error::Precondition(
                "arc endpoints must lie on opposite sides v = ±1".into(),
            ));
        }
        let s = side.sign();
        PlaneCurve::open(vec![
            *start,
            self.to_plane(s, vs.signum()),
            self.to_plane(s, ve.signum()),
            *end,
        ])
    }
}

/// `g·e_u` with `g = exp(1/(u−1))·exp(1/(v²−1))/|f|`, `dβ = f du∧dv`, times a
/// smooth step that vanishes below `u₋ − margin`. [`Side::Minus`] mirrors `u`.
#[derive(Clone, Debug)]
pub struct CorrectionField {
    square: CorrectionSquare,
    form: ContactForm,
    side: Side,
    margin: f64,
}

pub fn correction_field(
    square: &CorrectionSquare,
    form: &ContactForm,
    side: Side,
) -> Result<CorrectionField> {
    for i in 0..=16 {
        for j in 0..=16 {
            let p = square.to_plane(-1.0 + i as f64 / 8.0, -1.0 + j as f64 / 8.0);
            form.check_point(&p)?;
            if form.d_beta(&p) == 0.0 {
                return Err(Error::NotContact(format!("dβ vanishes at ({}, {})", p.x, p.y)));
            }
        }
    }
    // keep the cutoff band inside the square
    let room = match side {
        Side::Plus => 1.0 + square.u_minus,
        Side::Minus => 1.0 - square.u_plus,
    };
    Ok(CorrectionField {
        square: *square,
        form: form.clone(),
        side,
        margin: square.margin.min(room / 2.0),
    })
}

fn smooth_step(x: f64) -> f64 {
    let phi = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        phi(x) / (phi(x) + phi(1.0 - x))
    }
}

impl CorrectionField {
    /// `f·g` in square coordinates, i.e. the bump and cutoff without `1/|f|`.
    pub fn fg(&self, u: f64, v: f64) -> f64 {
        if u.abs() >= 1.0 || v.abs() >= 1.0 {
            return 0.0;
        }
        let (w, threshold) = match self.side {
            Side::Plus => (u, self.square.u_minus),
            Side::Minus => (-u, -self.square.u_plus),
        };
        let cut = smooth_step((w - (threshold - self.margin)) / self.margin);
        if cut == 0.0 {
            return 0.0;
        }
        (1.0 / (w - 1.0)).exp() * (1.0 / (v * v - 1.0)).exp() * cut
    }

    /// `g(u, v)`; positive where the field is on.
    pub fn g(&self, u: f64, v: f64) -> f64 {
        let fg = self.fg(u, v);
        if fg == 0.0 {
            return 0.0;
        }
        let f = self.form.d_beta(&self.square.to_plane(u, v)) * self.square.det();
        fg / f.abs()
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

impl VectorField<2> for CorrectionField {
    fn eval(&self, p: &P2) -> Result<P2> {
        let (u, v) = self.square.to_local(p);
        Ok(self.square.e_u * (self.side.sign() * self.g(u, v)))
    }
}

/// Result of [`solve_correction`].
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionSolution {
    pub time: f64,
    pub arc: PlaneCurve,
    pub achieved: f64,
    pub side: Side,
    /// `(t, |∫_{∂φ^t(U)} β|)` at every flow time evaluated, sorted by `t`.
    pub areas: Vec<(f64, f64)>,
}

impl CorrectionSolution {
    pub fn area_strictly_decreasing(&self) -> bool {
        self.areas.windows(2).all(|w| w[1].1 < w[0].1)
    }
}

fn arc_integral(form: &ContactForm, pts: &[P2]) -> f64 {
    pts.windows(2).map(|w| edge_beta(form, &w[0], &w[1])).sum()
}

/// Flows `moved_arc` under the correction field until its β-integral equals
/// `target`.
///
/// `closing_arc` is `γ^±`, the path along `∂R` with the same endpoints; the
/// side it passes through selects the flow. The region `U` bounded by the two
/// arcs shrinks monotonically, so `t ↦ ∫ β` over the transported arc moves
/// monotonically from its current value towards `∫_{γ^±} β`. The root is
/// bracketed by doubling `t` from 1/64 and refined by bisection.
pub fn solve_correction(
    square: &CorrectionSquare,
    form: &ContactForm,
    moved_arc: &PlaneCurve,
    closing_arc: &PlaneCurve,
    target: f64,
    step: f64,
) -> Result<CorrectionSolution> {
    let arc = moved_arc.vertices();
    let gamma = closing_arc.vertices();
    let (first, last) = (arc[0], arc[arc.len() - 1]);
    let tol = 1e-12 * moved_arc.bbox_diagonal().max(closing_arc.bbox_diagonal());
    if (gamma[0] - first).norm() > tol || (gamma[gamma.len() - 1] - last).norm() > tol {
        return Err(Error::Precondition(
            "closing arc does not share the moved arc's endpoints".into(),
        ));
    }
    let us: Vec<f64> = gamma.iter().map(|p| square.to_local(p).0).collect();
    let hits_plus = us.iter().any(|&u| u >= 1.0 - SIDE_TOL);
    let hits_minus = us.iter().any(|&u| u <= -1.0 + SIDE_TOL);
    let side = match (hits_plus, hits_minus) {
        (true, false) => Side::Plus,
        (false, true) => Side::Minus,
        _ => {
            return Err(Error::Precondition(
                "closing arc must pass through exactly one of the sides u = ±1".into(),
            ))
        }
    };
    for (k, p) in arc.iter().enumerate() {
        let (u, v) = square.to_local(p);
        let interior = k > 0 && k + 1 < arc.len();
        if !(u > square.u_minus && u < square.u_plus)
            || v.abs() > 1.0 + SIDE_TOL
            || (interior && v.abs() >= 1.0)
        {
            return Err(Error::Precondition(format!(
                "moved arc vertex {k} at (u, v) = ({u:.6}, {v:.6}) leaves the band"
            )));
        }
    }
    if (square.to_local(&first).1.abs() - 1.0).abs() > SIDE_TOL
        || (square.to_local(&last).1.abs() - 1.0).abs() > SIDE_TOL
    {
        return Err(Error::Precondition(
            "moved arc must run between the sides v = ±1".into(),
        ));
    }

    let field = correction_field(square, form, side)?;
    let current = arc_integral(form, arc);
    let limit = line_integral_beta(form, closing_arc)?.total;
    let area = |f: f64| (f - limit).abs();
    let mut areas = vec![(0.0, area(current))];
    if (current - target).abs() <= CORRECTION_TOL {
        return Ok(CorrectionSolution {
            time: 0.0,
            arc: moved_arc.clone(),
            achieved: current,
            side,
            areas,
        });
    }
    let (low, high) = (current.min(limit), current.max(limit));
    if !(target > low && target < high) {
        return Err(Error::OutOfRange { target, low, high });
    }
    let dir = (current - target).signum();

    // bracket
    let mut lo = (0.0, arc.to_vec(), current);
    let mut t = FIRST_TIME;
    let hi = loop {
        let pts = flow(&field, &lo.1, t - lo.0, step)?;
        let value = arc_integral(form, &pts);
        areas.push((t, area(value)));
        if (value - target).abs() <= CORRECTION_TOL {
            return finish(moved_arc, pts, t, value, side, areas);
        }
        if (value - target).signum() != dir {
            break (t, value);
        }
        lo = (t, pts, value);
        if t >= MAX_TIME {
            return Err(Error::Bracketing(format!(
                "target {target} not reached by flow time {MAX_TIME}"
            )));
        }
        t *= 2.0;
    };

    // bisect
    let mut hi_t = hi.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo.0 + hi_t);
        if mid <= lo.0 || mid >= hi_t {
            break;
        }
        let pts = flow(&field, &lo.1, mid - lo.0, step)?;
        let value = arc_integral(form, &pts);
        areas.push((mid, area(value)));
        if (value - target).abs() <= CORRECTION_TOL {
            return finish(moved_arc, pts, mid, value, side, areas);
        }
        if (value - target).signum() == dir {
            lo = (mid, pts, value);
        } else {
            hi_t = mid;
        }
    }
    Err(Error::Bracketing(format!(
        "bisection stalled at t = {} with residual {:.3e}",
        lo.0,
        (lo.2 - target).abs()
    )))
}

fn finish(
    moved_arc: &PlaneCurve,
    pts: Vec<P2>,
    time: f64,
    achieved: f64,
    side: Side,
    mut areas: Vec<(f64, f64)>,
) -> Result<CorrectionSolution> {
    areas.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(CorrectionSolution {
        time,
        arc: PlaneCurve::new(pts, moved_arc.is_closed())?,
        achieved,
        side,
        areas,
    })
}

/// Corrects one frame so that its total β-integral equals `target_total`,
/// moving only the vertices `span.0 ..= span.1` (which must cross the square).
pub fn correct_frame(
    frame: &PlaneCurve,
    square: &CorrectionSquare,
    form: &ContactForm,
    span: (usize, usize),
    target_total: f64,
    step: f64,
) -> Result<(PlaneCurve, CorrectionSolution)> {
    let (i, j) = span;
    if i >= j || j >= frame.len() {
        return Err(Error::InvalidArgument(format!("bad correction span {i}..={j}")));
    }
    let arc = PlaneCurve::open(frame.vertices()[i..=j].to_vec())?;
    let total = line_integral_beta(form, frame)?.total;
    let current = arc_integral(form, arc.vertices());
    let target = current + (target_total - total);
    let (p, q) = (arc.vertex(0), arc.vertex(arc.len() - 1));
    let plus = square.closing_arc(&p, &q, Side::Plus)?;
    let minus = square.closing_arc(&p, &q, Side::Minus)?;
    let bound = |c: &PlaneCurve| line_integral_beta(form, c).map(|b| b.total);
    let (ip, im) = (bound(&plus)?, bound(&minus)?);
    let between = |lim: f64| (target - current) * (lim - current) > 0.0 && (target - current).abs() < (lim - current).abs();
    let closing = if (target - current).abs() <= CORRECTION_TOL || between(ip) {
        plus
    } else if between(im) {
        minus
    } else {
        return Err(Error::OutOfRange {
            target,
            low: ip.min(im),
            high: ip.max(im),
        });
    };
    let sol = solve_correction(square, form, &arc, &closing, target, step)?;
    let mut pts = frame.vertices().to_vec();
    pts[i..=j].copy_from_slice(sol.arc.vertices());
    Ok((PlaneCurve::new(pts, frame.is_closed())?, sol))
}

/// Applies [`correct_frame`] to every frame so that all frames keep the
/// β-integral of frame 0.
pub fn correct_trace(
    trace: &IsotopyTrace<2>,
    square: &CorrectionSquare,
    form: &ContactForm,
    span: (usize, usize),
    step: f64,
) -> Result<IsotopyTrace<2>> {
    let target = line_integral_beta(form, &trace.frames[0])?.total;
    let mut frames = Vec::with_capacity(trace.len());
    let mut reports = Vec::with_capacity(trace.len());
    for (k, frame) in trace.frames.iter().enumerate() {
        let (fixed, _) = correct_frame(frame, square, form, span, target, step)?;
        let mut report = trace.reports.get(k).cloned().unwrap_or_default();
        report.time = trace.times[k];
        report.beta_integral = Some(line_integral_beta(form, &fixed)?.total);
        reports.push(report);
        frames.push(fixed);
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
    use crate::geometry::resample;

    fn unit_square(u_minus: f64, u_plus: f64) -> CorrectionSquare {
        CorrectionSquare::axis_aligned(P2::zeros(), 1.0, u_minus, u_plus).unwrap()
    }

    fn vertical_arc(x: f64) -> PlaneCurve {
        resample(&PlaneCurve::open(vec![P2::new(x, -1.0), P2::new(x, 1.0)]).unwrap(), 0.05).unwrap()
    }

    #[test]
    fn field_values() {
        let sq = unit_square(-0.5, 0.5);
        let f = correction_field(&sq, &ContactForm::xdy(), Side::Plus).unwrap();
        assert!((f.g(0.0, 0.0) - (-2.0f64).exp()).abs() < 1e-16);
        assert_eq!(f.eval(&P2::new(0.0, 0.0)).unwrap(), P2::new((-2.0f64).exp(), 0.0));
        for p in [P2::new(1.0, 1.0), P2::new(-1.0, 1.0), P2::new(1.0, -1.0), P2::new(-1.0, -1.0)] {
            assert_eq!(f.eval(&p).unwrap(), P2::zeros());
        }
        let near = 1.0 - 1e-6;
        for k in 0..=100 {
            let s = -1.0 + k as f64 / 50.0;
            for p in [P2::new(near, s), P2::new(-near, s), P2::new(s, near), P2::new(s, -near)] {
                assert!(f.eval(&p).unwrap().norm() <= 1e-30);
            }
        }
        // off below the cutoff band
        assert_eq!(f.g(-0.65, 0.0), 0.0);
        let m = correction_field(&sq, &ContactForm::xdy(), Side::Minus).unwrap();
        assert!((m.eval(&P2::new(0.0, 0.0)).unwrap().x + (-2.0f64).exp()).abs() < 1e-16);
        assert_eq!(m.g(0.65, 0.0), 0.0);
    }

    #[test]
    fn fg_decreases_along_u() {
        let sq = unit_square(-0.4, 0.3);
        let f = correction_field(&sq, &ContactForm::rot(), Side::Plus).unwrap();
        let m = correction_field(&sq, &ContactForm::rot(), Side::Minus).unwrap();
        let h = 1e-6;
        for i in 0..40 {
            let u = -0.4 + 1.39 * i as f64 / 40.0;
            for j in 1..40 {
                let v = -1.0 + 2.0 * j as f64 / 40.0;
                assert!(f.fg(u + h, v) - f.fg(u - h, v) < 0.0, "({u}, {v})");
                // mirrored: fg increases in u on u ≤ u₊, so −∂_u(fg) < 0 along −e_u
                let um = -u * 0.3 / 0.4;
                assert!(m.fg(um + h, v) - m.fg(um - h, v) > 0.0);
            }
        }
    }

    #[test]
    fn target_equals_current() {
        let sq = unit_square(-0.5, 0.5);
        let form = ContactForm::xdy();
        let arc = vertical_arc(0.0);
        let gamma = sq
            .closing_arc(&arc.vertex(0), &arc.vertex(arc.len() - 1), Side::Plus)
            .unwrap();
        let current: f64 = arc_integral(&form, arc.vertices());
        let sol = solve_correction(&sq, &form, &arc, &gamma, current, 1e-2).unwrap();
        assert_eq!(sol.time, 0.0);
        assert_eq!(sol.arc, arc);
    }

    #[test]
    fn small_perturbation() {
        let sq = unit_square(-0.5, 0.5);
        let form = ContactForm::xdy();
        let arc = vertical_arc(0.1);
        let (p, q) = (arc.vertex(0), arc.vertex(arc.len() - 1));
        // ∫ x dy over the arc is 0.2; through u = +1 the boundary path gives 2
        let current = arc_integral(&form, arc.vertices());
        assert!((current - 0.2).abs() < 1e-15);
        let minus = sq.closing_arc(&p, &q, Side::Minus).unwrap();
        let sol = solve_correction(&sq, &form, &arc, &minus, current - 0.01, 1e-2).unwrap();
        assert!((sol.achieved - (current - 0.01)).abs() <= 1e-9);
        assert!(sol.time > 0.0);
        assert_eq!(sol.side, Side::Minus);
        assert!(sol.area_strictly_decreasing());
        let plus = sq.closing_arc(&p, &q, Side::Plus).unwrap();
        let up = solve_correction(&sq, &form, &arc, &plus, current + 0.01, 1e-2).unwrap();
        assert!((up.achieved - (current + 0.01)).abs() <= 1e-9);
        assert_eq!(up.side, Side::Plus);
        // beyond γ⁺: unreachable
        assert!(matches!(
            solve_correction(&sq, &form, &arc, &plus, 2.5, 1e-2),
            Err(Error::OutOfRange { .. })
        ));
        // wrong direction for the chosen side
        assert!(matches!(
            solve_correction(&sq, &form, &arc, &plus, current - 0.01, 1e-2),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn arc_outside_band() {
        let sq = unit_square(-0.5, 0.5);
        let arc = vertical_arc(0.7);
        let g = sq
            .closing_arc(&arc.vertex(0), &arc.vertex(arc.len() - 1), Side::Plus)
            .unwrap();
        assert!(matches!(
            solve_correction(&sq, &ContactForm::xdy(), &arc, &g, 1.0, 1e-2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_square() {
        assert!(CorrectionSquare::new(P2::zeros(), P2::new(1.0, 0.0), P2::new(2.0, 0.0), -0.5, 0.5).is_err());
        assert!(CorrectionSquare::axis_aligned(P2::zeros(), 1.0, 0.5, -0.5).is_err());
    }
}
