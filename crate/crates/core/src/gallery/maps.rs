use std::sync::Arc;

use crate::contact::{edge_beta, ContactForm};
use crate::error::{Error, Result};
use crate::geometry::{Curve, SpaceCurve, P2, P3};

/// `(ρ, φ, z)` with `φ ∈ (−π, π]`.
pub fn to_cylindrical(p: &P3) -> (f64, f64, f64) {
    (p.x.hypot(p.y), p.y.atan2(p.x), p.z)
}

pub fn from_cylindrical(rho: f64, phi: f64, z: f64) -> P3 {
    P3::new(rho * phi.cos(), rho * phi.sin(), z)
}

fn off_axis(p: &P3) -> Result<(f64, f64, f64)> {
    let (rho, phi, z) = to_cylindrical(p);
    if rho <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "point ({}, {}, {}) lies on the z-axis",
            p.x, p.y, p.z
        )));
    }
    Ok((rho, phi, z))
}

/// `(ρ, φ, z) ↦ (ρ, φ + ln ρ, z − ρ²/2)`, a contactomorphism of
/// `dz + ρ² dφ` off the z-axis.
pub fn log_spiral_contactomorphism(p: &P3) -> Result<P3> {
    let (rho, phi, z) = off_axis(p)?;
    Ok(from_cylindrical(rho, phi + rho.ln(), z - rho * rho / 2.0))
}

pub fn log_spiral_inverse(p: &P3) -> Result<P3> {
    let (rho, phi, z) = off_axis(p)?;
    Ok(from_cylindrical(rho, phi - rho.ln(), z + rho * rho / 2.0))
}

/// The `ρ ≥ t` formula `(ρ, φ + ln ρ, z − ρ²/2 + t²/2)`.
pub fn cylinder_outer_branch(p: &P3, t: f64) -> Result<P3> {
    let (rho, phi, z) = off_axis(p)?;
    Ok(from_cylindrical(rho, phi + rho.ln(), z - rho * rho / 2.0 + t * t / 2.0))
}

/// The `ρ < t` formula `(ρ, φ + ln t, z)`.
pub fn cylinder_inner_branch(p: &P3, t: f64) -> Result<P3> {
    let (rho, phi, z) = to_cylindrical(p);
    if t <= 0.0 {
        return Err(Error::InvalidArgument("inner branch needs t > 0".into()));
    }
    Ok(from_cylindrical(rho, phi + t.ln(), z))
}

/// Contact isotopy of the solid cylinder `ρ ≤ 1`, from the log-spiral map at
/// `t = 0` to a rigid rotation by `ln t` near the axis.
pub fn cylinder_contact_isotopy(p: &P3, t: f64) -> Result<P3> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, 1]")));
    }
    let rho = p.x.hypot(p.y);
    if rho > 1.0 {
        return Err(Error::InvalidArgument(format!("ρ = {rho} outside the unit cylinder")));
    }
    if rho >= t {
        cylinder_outer_branch(p, t)
    } else {
        cylinder_inner_branch(p, t)
    }
}

/// Applies a point map to every vertex.
pub fn map_curve(curve: &SpaceCurve, f: impl Fn(&P3) -> Result<P3>) -> Result<SpaceCurve> {
    let pts = curve.vertices().iter().map(f).collect::<Result<Vec<_>>>()?;
    Curve::new(pts, curve.is_closed())
}

pub type PlaneMap = Arc<dyn Fn(&P2) -> P2 + Send + Sync>;

/// Pieces per straight path and per test-loop edge.
const PATH_PIECES: usize = 64;
const PRECONDITION_TOL: f64 = 1e-8;

/// Lift `(q, z) ↦ (h(q), z + c + ∫_γ β − ∫_{h(γ)} β)` of an area-preserving
/// plane map, `γ` the segment from the base point to `q`.
#[derive(Clone)]
pub struct LiftedMap {
    form: ContactForm,
    h: PlaneMap,
    h_inv: PlaneMap,
    base: P2,
    shift: f64,
}

impl std::fmt::Debug for LiftedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LiftedMap")
            .field("base", &self.base)
            .field("shift", &self.shift)
            .finish_non_exhaustive()
    }
}

fn polyline_beta(form: &ContactForm, pts: &[P2]) -> Result<f64> {
    let mut acc = 0.0;
    for w in pts.windows(2) {
        form.check_segment(&w[0], &w[1])?;
        acc += edge_beta(form, &w[0], &w[1]);
    }
    Ok(acc)
}

fn segment_points(p: &P2, q: &P2) -> Vec<P2> {
    (0..=PATH_PIECES)
        .map(|k| p + (q - p) * (k as f64 / PATH_PIECES as f64))
        .collect()
}

impl LiftedMap {
    /// `∫_γ β − ∫_{h(γ)} β` along the subdivided polyline `pts`.
    pub fn defect_along(&self, pts: &[P2]) -> Result<f64> {
        let image: Vec<P2> = pts.iter().map(|p| (self.h)(p)).collect();
        Ok(polyline_beta(&self.form, pts)? - polyline_beta(&self.form, &image)?)
    }

    pub fn apply(&self, p: &P3) -> Result<P3> {
        let q = p.xy();
        let d = self.defect_along(&segment_points(&self.base, &q))?;
        let hq = (self.h)(&q);
        Ok(P3::new(hq.x, hq.y, p.z + self.shift + d))
    }

    pub fn inverse(&self, p: &P3) -> Result<P3> {
        let q = (self.h_inv)(&p.xy());
        let d = self.defect_along(&segment_points(&self.base, &q))?;
        Ok(P3::new(q.x, q.y, p.z - self.shift - d))
    }

    pub fn base(&self) -> P2 {
        self.base
    }
}

/// Builds the lift of `h` through `(base, z) ↦ (h(base), z + base_shift)`.
///
/// Fails if `h` changes `∮ β` on one of 16 test triangles around the base
/// point (side `radius`) by more than `1e−8 · max(1, |∮ β|)`, or if `h_inv`
/// does not invert `h` on their vertices.
pub fn lift_homeomorphism(
    form: &ContactForm,
    h: PlaneMap,
    h_inv: PlaneMap,
    base: P2,
    base_shift: f64,
    radius: f64,
) -> Result<LiftedMap> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument("test radius must be positive".into()));
    }
    let map = LiftedMap {
        form: form.clone(),
        h,
        h_inv,
        base,
        shift: base_shift,
    };
    for k in 0..16 {
        let th = std::f64::consts::TAU * k as f64 / 16.0;
        let c = base + P2::new(th.cos(), th.sin()) * (radius * (0.25 + 0.05 * k as f64));
        let tri = [
            c,
            c + P2::new(radius, 0.0),
            c + P2::new(0.3 * radius, 0.8 * radius),
            c,
        ];
        let mut pts = Vec::new();
        for w in tri.windows(2) {
            let seg = segment_points(&w[0], &w[1]);
            pts.extend_from_slice(&seg[..PATH_PIECES]);
        }
        pts.push(c);
        let loop_integral = polyline_beta(form, &pts)?;
        let d = map.defect_along(&pts)?;
        if d.abs() > PRECONDITION_TOL * loop_integral.abs().max(1.0) {
            return Err(Error::Precondition(format!(
                "map changes the β-integral of test loop {k} by {d:.3e}"
            )));
        }
        for p in &tri[..3] {
            let back = (map.h_inv)(&(map.h)(p));
            if (back - p).norm() > PRECONDITION_TOL * p.norm().max(1.0) {
                return Err(Error::Precondition(format!(
                    "inverse map misses ({}, {}) by {:.3e}",
                    p.x,
                    p.y,
                    (back - p).norm()
                )));
            }
        }
    }
    Ok(map)
}
