use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::contact::ContactForm;
use crate::error::Result;
use crate::geometry::{resample, PlaneCurve, SpaceCurve, P2, P3};
use crate::lifting::lift;
use crate::moves::{
    bypass_isotopy, correct_trace, legendrian_isotopy_lift, CorrectionSquare, DiskChart,
    IsotopyTrace,
};

/// Figure-eight `(cos t, sin 2t / 2)`, sampled at half steps so that the
/// double point at the origin falls inside two edges.
pub fn lemniscate_projection(samples: usize) -> Result<PlaneCurve> {
    PlaneCurve::closed_from(
        (0..samples)
            .map(|k| {
                let t = TAU * (k as f64 + 0.5) / samples as f64;
                P2::new(t.cos(), (2.0 * t).sin() / 2.0)
            })
            .collect(),
    )
}

/// Legendrian lift of [`lemniscate_projection`] for `dz + x dy`: an unknot
/// whose front has one crossing. `samples` must be even.
pub fn lemniscate_unknot(samples: usize) -> Result<SpaceCurve> {
    Ok(lift(&ContactForm::xdy(), &lemniscate_projection(samples)?, 0.0, 1)?.curve)
}

/// The unit circle in the xy-plane and the unit circle in the xz-plane
/// centred at `(1, 0, 0)`.
pub fn hopf_pair(samples: usize) -> Result<(SpaceCurve, SpaceCurve)> {
    let angle = |k: usize| TAU * (k as f64 + 0.5) / samples as f64;
    let a = SpaceCurve::closed_from(
        (0..samples)
            .map(|k| P3::new(angle(k).cos(), angle(k).sin(), 0.0))
            .collect(),
    )?;
    let b = SpaceCurve::closed_from(
        (0..samples)
            .map(|k| P3::new(1.0 + angle(k).cos(), 0.0, angle(k).sin()))
            .collect(),
    )?;
    Ok((a, b))
}

/// Closed plane polygon star-shaped about the origin, counter-clockwise,
/// with its area computed as a fan of triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPolygon {
    pub curve: PlaneCurve,
    pub fan_area: f64,
}

/// `n` vertices at random angles (gaps at least a tenth of the mean) and
/// radii in `[0.5, 1.5]`.
pub fn random_star_polygon(rng: &mut impl Rng, n: usize) -> Result<StarPolygon> {
    let gaps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = gaps.iter().sum();
    let offset = rng.gen_range(0.0..TAU);
    let mut theta = Vec::with_capacity(n);
    let mut acc = offset;
    for g in &gaps {
        theta.push(acc);
        acc += g / total * TAU;
    }
    let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let pts: Vec<P2> = theta
        .iter()
        .zip(&radii)
        .map(|(t, r)| P2::new(r * t.cos(), r * t.sin()))
        .collect();
    let fan_area = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            0.5 * radii[i] * radii[j] * (gaps[i] / total * TAU).sin()
        })
        .sum();
    Ok(StarPolygon {
        curve: PlaneCurve::closed_from(pts)?,
        fan_area,
    })
}

/// A closed figure-eight made of two squares, prepared for a bypass move and
/// an integral correction.
///
/// The bottom edge of the right lobe carries a semicircular bump (radius 0.2
/// around `(2, −1)`, inside the lobe) that the bypass slides outside. The
/// right edge runs through a correction square centred at `(3, 0)` that
/// restores `∮ β` for `dz + x dy`. The left lobe is narrowed so that the two
/// lobes enclose equal areas.
#[derive(Clone, Debug)]
pub struct BypassFixture {
    pub curve: PlaneCurve,
    pub chart: DiskChart,
    pub attach: (usize, usize),
    pub square: CorrectionSquare,
    pub span: (usize, usize),
    /// A vertex of the left lobe, fixed by the whole isotopy.
    pub base: usize,
}

pub fn figure_eight_fixture() -> Result<BypassFixture> {
    let mut pts = vec![P2::new(1.0, -1.0)];
    let m = 32;
    for k in 0..=m {
        // from (1.8, −1) over the top to (2.2, −1)
        let phi = PI * (1.0 - k as f64 / m as f64);
        pts.push(P2::new(2.0 + 0.2 * phi.cos(), -1.0 + 0.2 * phi.sin()));
    }
    let attach = (1, m + 1);
    let right = resample(
        &PlaneCurve::open(vec![P2::new(3.0, -1.0), P2::new(3.0, 1.0)])?,
        0.05,
    )?;
    let start = pts.len();
    pts.extend_from_slice(right.vertices());
    let at = |y: f64| start + ((y + 1.0) / 0.05).round() as usize;
    let span = (at(-0.5), at(0.5));
    pts.push(P2::new(1.0, 1.0));
    pts.push(P2::new(-1.0, -1.0));
    let base = pts.len();
    // the left lobe loses the bump's area so that ∮ x dy = 0
    let bump_area = 0.5 * 0.04 * m as f64 * (PI / m as f64).sin();
    let left = -3.0 + bump_area / 2.0;
    pts.push(P2::new(left, -1.0));
    pts.push(P2::new(left, 1.0));
    pts.push(P2::new(-1.0, 1.0));
    Ok(BypassFixture {
        curve: PlaneCurve::closed_from(pts)?,
        chart: DiskChart::over_segment(P2::new(1.8, -1.0), P2::new(2.2, -1.0))?,
        attach,
        square: CorrectionSquare::axis_aligned(P2::new(3.0, 0.0), 0.5, -0.5, 0.5)?,
        span,
        base,
    })
}

impl BypassFixture {
    /// Bypass trace at `times`, corrected and lifted with `z = 0` at `base`.
    pub fn lifted_trace(&self, form: &ContactForm, times: &[f64], step: f64) -> Result<IsotopyTrace<3>> {
        let trace = bypass_isotopy(&self.chart, &self.curve, self.attach, times)?;
        let fixed = correct_trace(&trace, &self.square, form, self.span, step)?;
        legendrian_isotopy_lift(form, &fixed, self.base, 0.0)
    }
}
