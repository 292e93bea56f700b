use crate::contact::{edge_beta, ContactForm};
use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, SpaceCurve, P2, P3};

/// A family of closed plane curves `f(·, t)` with a common vertex count; row
/// `k` holds the samples `f(2πi/N, t_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Collar {
    pub offsets: Vec<f64>,
    pub rows: Vec<PlaneCurve>,
}

impl Collar {
    /// Offsets `curve` along its left unit normal (bisector of the adjacent
    /// edge normals) by each value in `offsets`.
    pub fn normal_offsets(curve: &PlaneCurve, offsets: &[f64]) -> Result<Self> {
        if !curve.is_closed() {
            return Err(Error::InvalidArgument("collar core must be closed".into()));
        }
        let n = curve.len();
        let left = |e: usize| {
            let (a, b) = curve.edge(e);
            let d = (b - a).normalize();
            P2::new(-d.y, d.x)
        };
        let normals: Vec<P2> = (0..n)
            .map(|i| (left((i + n - 1) % n) + left(i)).normalize())
            .collect();
        let rows = offsets
            .iter()
            .map(|&t| {
                if t == 0.0 {
                    Ok(curve.clone())
                } else {
                    PlaneCurve::closed_from(
                        curve.vertices().iter().zip(&normals).map(|(p, m)| p + m * t).collect(),
                    )
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Collar {
            offsets: offsets.to_vec(),
            rows,
        })
    }
}

/// Space curve over collar row `row` with
/// `z(s) = z₀ − ∫_{f([0,s]×{t})} β + (s/2π) ∮_{f(·,t)} β`, `s = 2πi/N`.
///
/// `dz + β` then equals `∮β / N` on every edge, so the result is positively
/// transverse when `∮β > 0`, negatively when `∮β < 0`, and Legendrian over a
/// row with `∮β = 0`.
pub fn transverse_pushoff(form: &ContactForm, collar: &Collar, row: usize, z0: f64) -> Result<SpaceCurve> {
    let curve = collar
        .rows
        .get(row)
        .ok_or_else(|| Error::InvalidArgument(format!("no collar row {row}")))?;
    if !curve.is_closed() {
        return Err(Error::InvalidArgument(format!("collar row {row} is not closed")));
    }
    let n = curve.len();
    let mut cum = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    cum.push(0.0);
    for e in 0..n {
        let (p, q) = curve.edge(e);
        form.check_segment(&p, &q)?;
        acc += edge_beta(form, &p, &q);
        cum.push(acc);
    }
    let pts = curve
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, p)| P3::new(p.x, p.y, z0 - cum[i] + (i as f64 / n as f64) * acc))
        .collect();
    SpaceCurve::closed_from(pts)
}

/// `α` integrated over each edge.
pub fn edge_alphas(form: &ContactForm, curve: &SpaceCurve) -> Vec<f64> {
    (0..curve.edge_count())
        .map(|e| {
            let (p, q) = curve.edge(e);
            (q.z - p.z) + edge_beta(form, &p.xy(), &q.xy())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::lemniscate_projection;

    #[test]
    fn rows_are_transverse() {
        let form = ContactForm::xdy();
        let core = lemniscate_projection(400).unwrap();
        let collar = Collar::normal_offsets(&core, &[-0.01, 0.0, 0.01]).unwrap();
        let n = core.len() as f64;
        for (row, sign) in [(0, 1.0), (1, 0.0), (2, -1.0)] {
            let c = transverse_pushoff(&form, &collar, row, 0.5).unwrap();
            assert_eq!(c.vertex(0).z, 0.5);
            let alphas = edge_alphas(&form, &c);
            let first = alphas[0];
            if sign == 0.0 {
                assert!(alphas.iter().all(|a| a.abs() < 1e-15));
            } else {
                assert!(first * sign > 0.0, "row {row}: {first}");
                assert!(alphas.iter().all(|a| (a - first).abs() < 1e-15));
                let total = crate::contact::line_integral_beta(&form, &collar.rows[row]).unwrap().total;
                assert!((first - total / n).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn missing_row() {
        let core = lemniscate_projection(40).unwrap();
        let collar = Collar::normal_offsets(&core, &[0.0]).unwrap();
        assert!(transverse_pushoff(&ContactForm::xdy(), &collar, 3, 0.0).is_err());
    }
}
