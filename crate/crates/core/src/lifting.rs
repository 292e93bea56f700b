//! Legendrian lifts of plane curves along the vertical projection, and the
//! metric comparison between a Legendrian curve and its projection.

use crate::contact::{
    alpha_sup, beta_sup, edge_beta, legendrian_residual, ContactForm, LEGENDRIAN_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{chord_arc_constant, PlaneCurve, SpaceCurve, P2, P3};

pub const DEFAULT_SUBDIVISION: usize = 8;
/// Relative closure threshold: a closed input lifts to a closed curve when
/// `|closure_defect| ≤ CLOSURE_TOL · ℓ · sup‖(a, b, 1)‖`.
pub const CLOSURE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult {
    pub curve: SpaceCurve,
    /// `−∮ β` for closed inputs, 0 for open ones.
    pub closure_defect: f64,
    pub subdivision: usize,
}

/// Splits every edge into `k` equal pieces.
pub fn subdivide(curve: &PlaneCurve, k: usize) -> Result<PlaneCurve> {
    if k == 0 {
        return Err(Error::InvalidArgument("subdivision must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(curve.edge_count() * k + 1);
    for e in 0..curve.edge_count() {
        let (a, b) = curve.edge(e);
        out.push(a);
        for j in 1..k {
            out.push(a + (b - a) * (j as f64 / k as f64));
        }
    }
    if !curve.is_closed() {
        out.push(curve.vertex(curve.len() - 1));
    }
    PlaneCurve::new(out, curve.is_closed())
}

/// Lifts with the default closure threshold.
pub fn lift(form: &ContactForm, curve: &PlaneCurve, z0: f64, subdivision: usize) -> Result<LiftResult> {
    lift_with_tol(form, curve, z0, subdivision, CLOSURE_TOL)
}

/// Sets `z = z0 − ∫ β` at every sample of the subdivided curve.
///
/// A closed input whose defect exceeds the threshold comes back as an open
/// curve ending over vertex 0 at height `z0 + closure_defect`.
pub fn lift_with_tol(
    form: &ContactForm,
    curve: &PlaneCurve,
    z0: f64,
    subdivision: usize,
    closure_tol: f64,
) -> Result<LiftResult> {
    let fine = subdivide(curve, subdivision)?;
    let mut z = Vec::with_capacity(fine.len() + 1);
    let mut acc = 0.0;
    z.push(z0);
    for e in 0..fine.edge_count() {
        let (p, q) = fine.edge(e);
        form.check_segment(&p, &q)?;
        acc += edge_beta(form, &p, &q);
        z.push(z0 - acc);
    }
    if !curve.is_closed() {
        return Ok(LiftResult {
            curve: fine.with_heights(&z)?,
            closure_defect: 0.0,
            subdivision,
        });
    }
    let defect = -acc;
    let scale = fine.arc_length() * alpha_sup(form, &fine);
    let closing = z.pop().expect("closed curve has edges");
    let pts: Vec<P3> = fine
        .vertices()
        .iter()
        .zip(&z)
        .map(|(p, &h)| P3::new(p.x, p.y, h))
        .collect();
    let curve = if defect.abs() <= closure_tol * scale {
        SpaceCurve::closed_from(pts)?
    } else {
        let mut pts = pts;
        let p0 = fine.vertex(0);
        pts.push(P3::new(p0.x, p0.y, closing));
        SpaceCurve::open(pts)?
    };
    Ok(LiftResult {
        curve,
        closure_defect: defect,
        subdivision,
    })
}

/// Drops the z-coordinate. The projection must be embedded.
pub fn project(curve: &SpaceCurve) -> Result<PlaneCurve> {
    let plane = PlaneCurve::new(curve.xy_points(), curve.is_closed())
        .map_err(|e| Error::NonInjectiveProjection(e.to_string()))?;
    plane
        .check_embedded()
        .map_err(|e| Error::NonInjectiveProjection(e.to_string()))?;
    Ok(plane)
}

/// Outcome of comparing a Legendrian curve with its projection.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionBounds {
    /// `√(1 + (B·C)²)`.
    pub k: f64,
    /// `B`: sampled sup of `‖β‖` along the curve.
    pub beta_sup: f64,
    /// `C`: chord-arc constant of the projection.
    pub chord_arc: f64,
    /// `min (K − dist(p, q) / dist(pr p, pr q))` over vertex pairs.
    pub distance_margin: f64,
    /// `min (K − ℓ(γ|pq) / ℓ(pr γ|pq))` over vertex pairs and both subarcs
    /// of closed curves.
    pub length_margin: f64,
    pub worst_pair: (usize, usize),
}

impl ProjectionBounds {
    pub fn margin(&self) -> f64 {
        self.distance_margin.min(self.length_margin)
    }
}

/// Checks distances and subarc lengths of a Legendrian curve against those of
/// its projection, over all vertex pairs.
pub fn projection_bounds_check(form: &ContactForm, curve: &SpaceCurve) -> Result<ProjectionBounds> {
    let verdict = legendrian_residual(form, curve)?;
    if !verdict.is_legendrian(LEGENDRIAN_TOL) {
        return Err(Error::Precondition(format!(
            "curve is not Legendrian (relative residual {:.3e})",
            verdict.relative_residual
        )));
    }
    let plane = project(curve)?;
    let c = chord_arc_constant(&plane)?.constant;
    let b = beta_sup(form, &plane);
    let k = (1.0 + (b * c).powi(2)).sqrt();

    let cum3 = curve.cumulative_lengths();
    let cum2 = plane.cumulative_lengths();
    let (v3, v2) = (curve.vertices(), plane.vertices());
    let n = v3.len();
    let mut out = ProjectionBounds {
        k,
        beta_sup: b,
        chord_arc: c,
        distance_margin: f64::INFINITY,
        length_margin: f64::INFINITY,
        worst_pair: (0, 0),
    };
    let total3 = cum3[cum3.len() - 1];
    let total2 = cum2[cum2.len() - 1];
    for i in 0..n {
        for j in i + 1..n {
            let d = k - (v3[j] - v3[i]).norm() / dist2(&v2[j], &v2[i]);
            let (l3, l2) = (cum3[j] - cum3[i], cum2[j] - cum2[i]);
            let mut l = k - l3 / l2;
            if curve.is_closed() {
                l = l.min(k - (total3 - l3) / (total2 - l2));
            }
            if d.min(l) < out.margin() {
                out.worst_pair = (i, j);
            }
            out.distance_margin = out.distance_margin.min(d);
            out.length_margin = out.length_margin.min(l);
        }
    }
    Ok(out)
}

fn dist2(p: &P2, q: &P2) -> f64 {
    (p - q).norm()
}
