use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::SpaceCurve;

use super::integrate::{alpha_sup, line_integral_alpha};
use super::ContactForm;

/// Default acceptance threshold on [`LegendrianVerdict::relative_residual`].
pub const LEGENDRIAN_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct LegendrianVerdict {
    /// Range (max − min) of the cumulative `∫ α`, i.e. the largest `|∫ α|`
    /// over subarcs that start and end at vertices.
    pub residual: f64,
    /// `residual / (length · alpha_sup)`.
    pub relative_residual: f64,
    pub length: f64,
    /// Largest `‖(a, b, 1)‖` sampled along the curve.
    pub alpha_sup: f64,
    pub cumulative: Vec<f64>,
}

impl LegendrianVerdict {
    pub fn is_legendrian(&self, tol: f64) -> bool {
        self.relative_residual <= tol
    }
}

pub fn legendrian_residual(form: &ContactForm, curve: &SpaceCurve) -> Result<LegendrianVerdict> {
    let cumulative = line_integral_alpha(form, curve)?;
    let (lo, hi) = cumulative
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let residual = hi - lo;
    let length = curve.arc_length();
    let sup = alpha_sup(form, curve);
    let relative_residual = if residual == 0.0 {
        0.0
    } else {
        residual / (length * sup)
    };
    Ok(LegendrianVerdict {
        residual,
        relative_residual,
        length,
        alpha_sup: sup,
        cumulative,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleSample {
    pub radius: f64,
    /// Worst angle (radians) between a chord inside the ball and the contact
    /// plane at its centre; 0 when no ball contains two vertices.
    pub angle: f64,
    /// Vertex whose ball realises `angle`.
    pub vertex: usize,
}

/// For each radius `r`, the largest angle between a chord `p'' − p'` with both
/// endpoints within `r` of a vertex `p` and the contact plane `ξ_p`.
pub fn angle_profile(
    form: &ContactForm,
    curve: &SpaceCurve,
    radii: &[f64],
) -> Result<Vec<AngleSample>> {
    if radii.is_empty() {
        return Err(Error::InvalidArgument("empty radius list".into()));
    }
    let v = curve.vertices();
    for p in v {
        form.check_point(&p.xy())?;
    }
    let normals: Vec<Vector3<f64>> = v
        .iter()
        .map(|p| {
            let b = form.beta(&p.xy());
            Vector3::new(b.x, b.y, 1.0).normalize()
        })
        .collect();
    let mut out = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut best = AngleSample {
            radius: r,
            angle: 0.0,
            vertex: 0,
        };
        let mut ball = Vec::new();
        for (i, p) in v.iter().enumerate() {
            ball.clear();
            ball.extend((0..v.len()).filter(|&j| (v[j] - p).norm() <= r));
            let n = &normals[i];
            for (k, &a) in ball.iter().enumerate() {
                for &b in &ball[k + 1..] {
                    let chord = v[b] - v[a];
                    let s = (chord.dot(n).abs() / chord.norm()).min(1.0);
                    let angle = s.asin();
                    if angle > best.angle {
                        best.angle = angle;
                        best.vertex = i;
                    }
                }
            }
        }
        out.push(best);
    }
    Ok(out)
}
