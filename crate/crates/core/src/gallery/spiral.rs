use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, SpaceCurve, P2, P3};

fn radii(r0: f64, r1: f64, samples: usize) -> Result<Vec<f64>> {
    if !(r0 > 0.0 && r0 < r1) || samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "spiral needs 0 < r0 < r1 and at least 2 samples (got {r0}, {r1}, {samples})"
        )));
    }
    let (l0, l1) = (r0.ln(), r1.ln());
    Ok((0..samples)
        .map(|k| (l0 + (l1 - l0) * k as f64 / (samples - 1) as f64).exp())
        .collect())
}

/// Leaf of the characteristic foliation of `z = x² + y²` for
/// `dz + x dy − y dx`: `(r cos φ, r sin φ, r²)` with `φ = −2 ln r`, sampled
/// uniformly in `ln r`.
pub fn spiral_leaf(r0: f64, r1: f64, samples: usize) -> Result<SpaceCurve> {
    let pts = radii(r0, r1, samples)?
        .into_iter()
        .map(|r| {
            let phi = -2.0 * r.ln();
            P3::new(r * phi.cos(), r * phi.sin(), r * r)
        })
        .collect();
    SpaceCurve::open(pts)
}

/// The xy-projection of [`spiral_leaf`], the logarithmic spiral
/// `r = e^{−φ/2}`.
pub fn spiral_projection(r0: f64, r1: f64, samples: usize) -> Result<PlaneCurve> {
    let pts = radii(r0, r1, samples)?
        .into_iter()
        .map(|r| {
            let phi = -2.0 * r.ln();
            P2::new(r * phi.cos(), r * phi.sin())
        })
        .collect();
    PlaneCurve::open(pts)
}
