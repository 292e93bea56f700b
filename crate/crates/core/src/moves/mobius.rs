use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{chord_arc_constant, segment::point_segment_distance, PlaneCurve, P2};

use super::trace::{FrameReport, IsotopyTrace};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `F₊↦₋(s, t) = (s + (1−2t)i) / ((1−2t)i·s + 1)`.
///
/// For fixed `t` the image of `s ∈ [−1, 1]` is an arc of a generalized circle
/// through `±1`: the upper unit semicircle at `t = 0`, the diameter at
/// `t = 1/2`, the lower semicircle at `t = 1`.
pub fn mobius_arc(s: f64, t: f64) -> Complex64 {
    let c = 1.0 - 2.0 * t;
    (Complex64::new(s, c)) / (Complex64::new(1.0, c * s))
}

/// Inverse of `s ↦ F₊↦₋(s, 0)` on the upper unit semicircle.
pub fn mobius_arc_inverse(w: Complex64) -> f64 {
    ((I - w) / (I * w - 1.0)).re
}

pub fn to_c(p: &P2) -> Complex64 {
    Complex64::new(p.x, p.y)
}

pub fn to_p(w: Complex64) -> P2 {
    P2::new(w.re, w.im)
}

/// `χ(w) = T + scale·e^{iψ}·e^{iθ}(w − c)/(1 − c̄w)`: a disk automorphism
/// followed by a similarity. `χ(D̄)` is the closed disk of radius `scale`
/// about `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskChart {
    pub scale: f64,
    pub rotation: f64,
    pub translation: P2,
    /// Point sent to the disk centre, `|c| < 1`.
    pub mobius_center: Complex64,
    pub mobius_angle: f64,
}

/// Polar grid size used by [`DiskChart::bilipschitz_estimate`].
const BILIP_GRID: usize = 64;

impl DiskChart {
    pub fn new(scale: f64, rotation: f64, translation: P2) -> Result<Self> {
        Self::with_mobius(scale, rotation, translation, Complex64::new(0.0, 0.0), 0.0)
    }

    pub fn with_mobius(
        scale: f64,
        rotation: f64,
        translation: P2,
        mobius_center: Complex64,
        mobius_angle: f64,
    ) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("chart scale {scale} must be positive")));
        }
        if !(mobius_center.norm() < 1.0) {
            return Err(Error::InvalidArgument(
                "Möbius centre must lie in the open unit disk".into(),
            ));
        }
        Ok(DiskChart {
            scale,
            rotation,
            translation,
            mobius_center,
            mobius_angle,
        })
    }

    /// Chart whose upper arc `χ(∂₊D)` is the semicircle from `p` to `q` on the
    /// left of `p → q`.
    pub fn over_segment(p: P2, q: P2) -> Result<Self> {
        let mid = (p + q) * 0.5;
        let d = q - p;
        Self::new(d.norm() / 2.0, d.y.atan2(d.x), mid)
    }

    fn mobius(&self, w: Complex64) -> Complex64 {
        let c = self.mobius_center;
        Complex64::from_polar(1.0, self.mobius_angle) * (w - c) / (1.0 - c.conj() * w)
    }

    fn mobius_inv(&self, u: Complex64) -> Complex64 {
        let c = self.mobius_center;
        let v = Complex64::from_polar(1.0, -self.mobius_angle) * u;
        (v + c) / (1.0 + c.conj() * v)
    }

    pub fn apply(&self, w: Complex64) -> P2 {
        let z = Complex64::from_polar(self.scale, self.rotation) * self.mobius(w);
        self.translation + to_p(z)
    }

    pub fn inverse(&self, p: &P2) -> Complex64 {
        let u = to_c(&(p - self.translation)) / Complex64::from_polar(self.scale, self.rotation);
        self.mobius_inv(u)
    }

    pub fn center(&self) -> P2 {
        self.translation
    }

    pub fn radius(&self) -> f64 {
        self.scale
    }

    /// Largest `max(r, 1/r)` over pairs of a 64 × 64 polar grid of the closed
    /// disk, `r` being the distance ratio image/source.
    pub fn bilipschitz_estimate(&self) -> f64 {
        let n = BILIP_GRID;
        let src: Vec<Complex64> = (1..=n)
            .flat_map(|i| {
                let r = i as f64 / n as f64;
                (0..n).map(move |j| {
                    Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n as f64)
                })
            })
            .chain(std::iter::once(Complex64::new(0.0, 0.0)))
            .collect();
        let img: Vec<P2> = src.iter().map(|&w| self.apply(w)).collect();
        let mut c = 1.0f64;
        for i in 0..src.len() {
            for j in i + 1..src.len() {
                let r = (img[i] - img[j]).norm() / (src[i] - src[j]).norm();
                c = c.max(r).max(1.0 / r);
            }
        }
        c
    }
}

/// Tolerance for the attach arc matching `χ(∂₊D)`, relative to the chart
/// scale.
pub const ATTACH_TOL: f64 = 1e-8;

/// Slides the attach subarc (vertices `attach.0 ..= attach.1`) of `curve`
/// across the bypass disk: the vertex `p` moves to `χ(F₊↦₋(χ⁻¹(p), t))`, the
/// rest of the curve stays fixed.
pub fn bypass_isotopy(
    chart: &DiskChart,
    curve: &PlaneCurve,
    attach: (usize, usize),
    times: &[f64],
) -> Result<IsotopyTrace<2>> {
    let (i0, i1) = attach;
    if i0 >= i1 || i1 >= curve.len() {
        return Err(Error::InvalidArgument(format!(
            "attach range {i0}..={i1} is not an increasing index range"
        )));
    }
    check_times(times)?;
    let tol = ATTACH_TOL * chart.scale;
    let v = curve.vertices();

    // parameters on ∂₊D
    let mut params = Vec::with_capacity(i1 - i0 + 1);
    for (k, p) in v[i0..=i1].iter().enumerate() {
        let w = chart.inverse(p);
        let s = if k == 0 {
            -1.0
        } else if k == i1 - i0 {
            1.0
        } else {
            mobius_arc_inverse(w).clamp(-1.0, 1.0)
        };
        let back = chart.apply(mobius_arc(s, 0.0));
        if (back - p).norm() > tol {
            return Err(Error::Precondition(format!(
                "vertex {} is {:.3e} away from the upper arc of the bypass",
                i0 + k,
                (back - p).norm()
            )));
        }
        params.push(s);
    }
    if params.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition(
            "attach vertices are not ordered along the upper arc".into(),
        ));
    }

    // the rest of the curve must avoid the open disk
    let centre = chart.center();
    let r = chart.scale;
    for e in 0..curve.edge_count() {
        let (a, b) = curve.edge(e);
        let ja = e;
        let jb = (e + 1) % curve.len();
        let inside = |j: usize| j >= i0 && j <= i1;
        if inside(ja) && inside(jb) && jb == ja + 1 {
            continue;
        }
        let touching = if ja == i0 || ja == i1 {
            Some((a, b))
        } else if jb == i0 || jb == i1 {
            Some((b, a))
        } else {
            None
        };
        let clear = match touching {
            Some((p, q)) => (q - p).dot(&(p - centre)) >= 0.0,
            None => point_segment_distance(&centre, &a, &b) >= r,
        };
        if !clear {
            return Err(Error::Precondition(format!(
                "edge {e} enters the bypass disk"
            )));
        }
    }

    let mut frames = Vec::with_capacity(times.len());
    for &t in times {
        let mut pts = v.to_vec();
        if t != 0.0 {
            for (k, &s) in params.iter().enumerate().skip(1).take(params.len() - 2) {
                pts[i0 + k] = chart.apply(mobius_arc(s, t));
            }
        }
        frames.push(PlaneCurve::new(pts, curve.is_closed())?);
    }
    let reports = frames
        .iter()
        .zip(times)
        .map(|(f, &t)| {
            let moved = PlaneCurve::open(f.vertices()[i0..=i1].to_vec()).ok();
            FrameReport {
                time: t,
                chord_arc: moved.and_then(|m| chord_arc_constant(&m).ok()).map(|r| r.constant),
                ..Default::default()
            }
        })
        .collect();
    Ok(IsotopyTrace {
        times: times.to_vec(),
        frames,
        reports,
    })
}

pub(crate) fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("no times given".into()));
    }
    if times.iter().any(|t| !(0.0..=1.0).contains(t)) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "times must increase within [0, 1]".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::bilipschitz_constant;
    use std::f64::consts::PI;

    #[test]
    fn formula_examples() {
        assert_eq!(mobius_arc(1.0, 0.37), Complex64::new(1.0, 0.0));
        assert_eq!(mobius_arc(-1.0, 0.81), Complex64::new(-1.0, 0.0));
        assert_eq!(mobius_arc(0.0, 0.5), Complex64::new(0.0, 0.0));
        assert_eq!(mobius_arc(0.0, 0.0), I);
        for k in 0..=20 {
            let s = -1.0 + k as f64 / 10.0;
            for t in [0.0, 0.2, 0.5, 0.9, 1.0] {
                assert!(mobius_arc(s, t).norm() <= 1.0 + 1e-15);
            }
            assert!((mobius_arc_inverse(mobius_arc(s, 0.0)) - s).abs() < 1e-14);
        }
    }

    #[test]
    fn arcs_lie_on_circles() {
        for t in [0.0, 0.1, 0.3, 0.7, 1.0] {
            let pts: Vec<Complex64> =
                (0..257).map(|k| mobius_arc(-1.0 + k as f64 / 128.0, t)).collect();
            // circle through ±1 has centre on the imaginary axis: |w − ik|² = 1 + k²
            let c = 1.0 - 2.0 * t;
            let k = (c * c - 1.0) / (2.0 * c);
            let dev = pts
                .iter()
                .map(|w| ((w - Complex64::new(0.0, k)).norm() - (1.0 + k * k).sqrt()).abs())
                .fold(0.0, f64::max);
            assert!(dev <= 1e-10, "t = {t}: {dev}");
        }
    }

    #[test]
    fn chart_round_trip() {
        let chart = DiskChart::with_mobius(
            2.0,
            0.3,
            P2::new(1.0, -1.0),
            Complex64::new(0.2, -0.1),
            0.7,
        )
        .unwrap();
        for k in 0..10 {
            let w = Complex64::from_polar(0.1 * k as f64, k as f64);
            let back = chart.inverse(&chart.apply(w));
            assert!((back - w).norm() < 1e-14);
        }
        // the disk maps onto the disk of radius `scale`
        let boundary = chart.apply(Complex64::from_polar(1.0, 0.4));
        assert!(((boundary - chart.center()).norm() - 2.0).abs() < 1e-12);
        let b = chart.bilipschitz_estimate();
        assert!(b.is_finite() && b >= 2.0);
    }

    fn semicircle(n: usize, upper: bool) -> PlaneCurve {
        PlaneCurve::open(
            (0..n)
                .map(|k| {
                    let phi = PI * (1.0 - k as f64 / (n - 1) as f64);
                    let y = phi.sin();
                    P2::new(phi.cos(), if upper { y } else { -y })
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn unit_bypass_flips_semicircle() {
        let chart = DiskChart::new(1.0, 0.0, P2::zeros()).unwrap();
        let c = semicircle(65, true);
        let tr = bypass_isotopy(&chart, &c, (0, 64), &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(tr.frames[0], c);
        let lower = semicircle(65, false);
        for (a, b) in tr.frames[2].vertices().iter().zip(lower.vertices()) {
            assert!((a - b).norm() <= 1e-10);
        }
        assert!(tr.frames[1].vertices().iter().all(|p| p.y.abs() < 1e-12));
        let single = bypass_isotopy(&chart, &c, (0, 64), &[0.0]).unwrap();
        assert_eq!(single.frames, vec![c.clone()]);
        for r in &tr.reports {
            assert!(r.chord_arc.unwrap() <= PI / 2.0 + 1e-9);
        }
        let bl = bilipschitz_constant(&tr.frames[0], &tr.frames[2]).unwrap();
        assert!(bl.is_finite());
    }

    #[test]
    fn collision_and_mismatch() {
        let chart = DiskChart::new(1.0, 0.0, P2::zeros()).unwrap();
        let mut pts = semicircle(17, true).into_vertices();
        pts.push(P2::new(0.0, -0.5));
        let c = PlaneCurve::open(pts).unwrap();
        assert!(matches!(
            bypass_isotopy(&chart, &c, (0, 16), &[0.0, 1.0]),
            Err(Error::Precondition(_))
        ));
        let shifted = semicircle(17, true).map(|p| p + P2::new(0.0, 1e-3)).unwrap();
        assert!(bypass_isotopy(&chart, &shifted, (0, 16), &[1.0]).is_err());
        assert!(bypass_isotopy(&chart, &semicircle(17, true), (0, 16), &[0.5, 0.2]).is_err());
    }
}
