//! Plain SVG plots of plane curves. Every plot uses a fixed 800 × 800
//! viewport fitted to the data.

use std::fmt::Write;

use crate::geometry::{Curve, P2};
use crate::moves::IsotopyTrace;

const SIZE: f64 = 800.0;
const PAD: f64 = 20.0;

/// One polyline to draw.
#[derive(Clone, Debug)]
pub struct Stroke {
    pub points: Vec<P2>,
    pub closed: bool,
    pub opacity: f64,
}

impl<const D: usize> From<&Curve<D>> for Stroke {
    fn from(c: &Curve<D>) -> Self {
        Stroke {
            points: c.vertices().iter().map(|v| P2::new(v[0], v[1])).collect(),
            closed: c.is_closed(),
            opacity: 1.0,
        }
    }
}

struct Frame {
    min: P2,
    scale: f64,
    origin: P2,
    size: f64,
}

impl Frame {
    fn fit(strokes: &[Stroke], origin: P2, size: f64) -> Self {
        let mut lo = P2::repeat(f64::INFINITY);
        let mut hi = P2::repeat(f64::NEG_INFINITY);
        for p in strokes.iter().flat_map(|s| &s.points) {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let span = (hi - lo).max().max(1e-300);
        Frame {
            min: lo,
            scale: (size - 2.0 * PAD) / span,
            origin,
            size,
        }
    }

    fn map(&self, p: &P2) -> (f64, f64) {
        let x = self.origin.x + PAD + (p.x - self.min.x) * self.scale;
        let y = self.origin.y + self.size - PAD - (p.y - self.min.y) * self.scale;
        (x, y)
    }
}

fn draw(out: &mut String, frame: &Frame, s: &Stroke) {
    let tag = if s.closed { "polygon" } else { "polyline" };
    let _ = write!(out, "<{tag} fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-opacity=\"{:.3}\" points=\"", s.opacity);
    for (k, p) in s.points.iter().enumerate() {
        let (x, y) = frame.map(p);
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.3},{y:.3}");
    }
    out.push_str("\"/>\n");
}

fn document(body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// All strokes in one panel sharing a common fit.
pub fn plot(strokes: &[Stroke]) -> String {
    let frame = Frame::fit(strokes, P2::zeros(), SIZE);
    let mut body = String::new();
    for s in strokes {
        draw(&mut body, &frame, s);
    }
    document(&body)
}

/// Frames of a trace, opacity rising from 0.15 at the first frame to 1 at
/// the last.
pub fn plot_trace<const D: usize>(trace: &IsotopyTrace<D>) -> String {
    let n = trace.frames.len();
    let strokes: Vec<Stroke> = trace
        .frames
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mut s = Stroke::from(f);
            s.opacity = if n > 1 { 0.15 + 0.85 * k as f64 / (n - 1) as f64 } else { 1.0 };
            s
        })
        .collect();
    plot(&strokes)
}

/// Up to four panels in a 2 × 2 grid, each fitted separately.
pub fn plot_panels(panels: &[Vec<Stroke>]) -> String {
    let half = SIZE / 2.0;
    let mut body = String::new();
    for (k, strokes) in panels.iter().take(4).enumerate() {
        let origin = P2::new(half * (k % 2) as f64, half * (k / 2) as f64);
        let frame = Frame::fit(strokes, origin, half);
        for s in strokes {
            draw(&mut body, &frame, s);
        }
    }
    document(&body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlaneCurve;

    #[test]
    fn square_fits_viewport() {
        let c = PlaneCurve::closed_from(vec![P2::new(0.0, 0.0), P2::new(2.0, 0.0), P2::new(2.0, 2.0), P2::new(0.0, 2.0)]).unwrap();
        let svg = plot(&[Stroke::from(&c)]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("20.000,780.000"));
        assert!(svg.contains("780.000,20.000"));
    }

    #[test]
    fn panels_are_offset() {
        let c = PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(1.0, 1.0)]).unwrap();
        let svg = plot_panels(&vec![vec![Stroke::from(&c)]; 4]);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(svg.contains("780.000,420.000"));
    }
}
