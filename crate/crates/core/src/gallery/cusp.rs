use crate::error::{Error, Result};
use crate::geometry::{SpaceCurve, P3};

/// `samples` points of `(t³, t², −(2/5) t⁵)` on `[t0, t1]`, Legendrian for
/// `dz + x dy`.
pub fn cusp_curve(t0: f64, t1: f64, samples: usize) -> Result<SpaceCurve> {
    if !(t0 < t1) || samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "cusp needs t0 < t1 and at least 2 samples (got [{t0}, {t1}], {samples})"
        )));
    }
    let pts = (0..samples)
        .map(|k| {
            let t = t0 + (t1 - t0) * k as f64 / (samples - 1) as f64;
            P3::new(t.powi(3), t * t, -0.4 * t.powi(5))
        })
        .collect();
    SpaceCurve::open(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{legendrian_residual, ContactForm};
    use crate::geometry::chord_arc_constant;

    #[test]
    fn endpoints() {
        let c = cusp_curve(0.0, 1.0, 11).unwrap();
        assert_eq!(c.vertex(0), P3::zeros());
        assert_eq!(c.vertex(10), P3::new(1.0, 1.0, -0.4));
    }

    #[test]
    fn nearly_legendrian() {
        let c = cusp_curve(-1.0, 1.0, 2001).unwrap();
        let v = legendrian_residual(&ContactForm::xdy(), &c).unwrap();
        assert!(v.relative_residual < 1e-6, "{}", v.relative_residual);
    }

    #[test]
    fn chord_arc_blows_up() {
        let mut prev = 0.0;
        for k in 1..=6 {
            let eps = 0.5f64.powi(k);
            let c = cusp_curve(-eps, eps, (1 << (k + 3)) + 1).unwrap();
            let r = chord_arc_constant(&c).unwrap().constant;
            if k > 1 {
                assert!(r >= 1.5 * prev, "level {k}: {r} vs {prev}");
            }
            prev = r;
        }
    }

    #[test]
    fn rejects_bad_range() {
        assert!(cusp_curve(1.0, 1.0, 5).is_err());
        assert!(cusp_curve(0.0, 1.0, 1).is_err());
    }
}
