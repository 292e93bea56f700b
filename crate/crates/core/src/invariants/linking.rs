use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{SpaceCurve, P3};

use super::crossings::{crossings, direction, DIRECTIONS};

/// Largest tolerated `|gauss − lk|`.
pub const GAUSS_AGREEMENT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct LinkReport {
    pub lk: i64,
    /// Gauss double integral, summed exactly over segment pairs.
    pub gauss: f64,
    /// Index into [`DIRECTIONS`] of the projection used.
    pub direction: usize,
    pub crossings: usize,
}

fn check_closed(c: &SpaceCurve, name: &str) -> Result<()> {
    if !c.is_closed() {
        return Err(Error::InvalidArgument(format!("{name} must be closed")));
    }
    c.check_embedded()
}

/// Half the signed count of crossings between the two curves in the
/// projection along `d`.
pub fn linking_number_along(c1: &SpaceCurve, c2: &SpaceCurve, d: &P3) -> Result<(i64, usize)> {
    let cs = crossings(c1, Some(c2), d)?;
    let sum: i64 = cs.iter().map(|c| c.sign as i64).sum();
    if sum % 2 != 0 {
        return Err(Error::NonGeneric(format!(
            "odd crossing sum {sum}: curves are not closed in projection"
        )));
    }
    Ok((sum / 2, cs.len()))
}

/// Linking number of two disjoint closed curves, from the first of the fixed
/// directions whose projection is generic, checked against the Gauss integral.
pub fn linking_number(c1: &SpaceCurve, c2: &SpaceCurve) -> Result<LinkReport> {
    check_closed(c1, "first curve")?;
    check_closed(c2, "second curve")?;
    let mut last = None;
    for k in 0..DIRECTIONS.len() {
        match linking_number_along(c1, c2, &direction(k)) {
            Ok((lk, n)) => {
                let gauss = gauss_linking(c1, c2);
                if (gauss - lk as f64).abs() > GAUSS_AGREEMENT {
                    return Err(Error::NonGeneric(format!(
                        "crossing count {lk} disagrees with Gauss integral {gauss}"
                    )));
                }
                return Ok(LinkReport {
                    lk,
                    gauss,
                    direction: k,
                    crossings: n,
                });
            }
            Err(e @ Error::NonGeneric(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::NonGeneric("no generic direction".into())))
}

/// Gauss linking integral `(1/4π) ∮∮ (r₁ − r₂)·(dr₁ × dr₂) / |r₁ − r₂|³`,
/// evaluated exactly per pair of segments as a signed solid angle.
pub fn gauss_linking(c1: &SpaceCurve, c2: &SpaceCurve) -> f64 {
    let mut total = 0.0;
    for i in 0..c1.edge_count() {
        let (a, b) = c1.edge(i);
        for j in 0..c2.edge_count() {
            let (c, d) = c2.edge(j);
            total += segment_solid_angle(&a, &b, &c, &d);
        }
    }
    total / (4.0 * PI)
}

/// Signed solid angle that the segment pair `a→b`, `c→d` contributes to
/// `4π·lk`.
pub fn segment_solid_angle(a: &P3, b: &P3, c: &P3, d: &P3) -> f64 {
    let r13 = c - a;
    let r14 = d - a;
    let r23 = c - b;
    let r24 = d - b;
    let unit = |v: P3| {
        let n = v.norm();
        if n > 0.0 {
            Some(v / n)
        } else {
            None
        }
    };
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        unit(r13.cross(&r14)),
        unit(r14.cross(&r24)),
        unit(r24.cross(&r23)),
        unit(r23.cross(&r13)),
    ) else {
        return 0.0;
    };
    let asin = |u: &P3, v: &P3| u.dot(v).atan2(u.cross(v).norm());
    let omega = asin(&n1, &n2) + asin(&n2, &n3) + asin(&n3, &n4) + asin(&n4, &n1);
    let orient = (d - c).cross(&(b - a)).dot(&r13);
    if orient > 0.0 {
        omega
    } else if orient < 0.0 {
        -omega
    } else {
        0.0
    }
}

/// Signed count of self-crossings of the projection along `d`.
pub fn writhe(curve: &SpaceCurve, d: &P3) -> Result<i64> {
    Ok(crossings(curve, None, d)?.iter().map(|c| c.sign as i64).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, f: impl Fn(f64, f64) -> P3) -> SpaceCurve {
        SpaceCurve::closed_from(
            (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    f(t.cos(), t.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    fn hopf() -> (SpaceCurve, SpaceCurve) {
        (
            circle(64, |c, s| P3::new(c, s, 0.0)),
            circle(64, |c, s| P3::new(1.0 + c, 0.0, s)),
        )
    }

    /// Midpoint-rule double integral on refined edges.
    fn brute_gauss(c1: &SpaceCurve, c2: &SpaceCurve, k: usize) -> f64 {
        let pts = |c: &SpaceCurve| {
            let mut out = Vec::new();
            for e in 0..c.edge_count() {
                let (a, b) = c.edge(e);
                for j in 0..k {
                    let m = a + (b - a) * ((j as f64 + 0.5) / k as f64);
                    out.push((m, (b - a) / k as f64));
                }
            }
            out
        };
        let (p1, p2) = (pts(c1), pts(c2));
        let mut s = 0.0;
        for (r1, d1) in &p1 {
            for (r2, d2) in &p2 {
                let r = r1 - r2;
                s += r.dot(&d1.cross(d2)) / r.norm().powi(3);
            }
        }
        s / (4.0 * PI)
    }

    #[test]
    fn solid_angle_sign_matches_brute_force() {
        let (a, b) = hopf();
        let exact = gauss_linking(&a, &b);
        let brute = brute_gauss(&a, &b, 8);
        assert!((exact - brute).abs() < 1e-2, "{exact} vs {brute}");
        assert!((exact.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hopf_pair() {
        let (a, b) = hopf();
        let r = linking_number(&a, &b).unwrap();
        assert_eq!(r.lk.abs(), 1);
        assert!((r.gauss - r.lk as f64).abs() < 0.5);
        assert_eq!(linking_number(&b, &a).unwrap().lk, r.lk);
        assert_eq!(linking_number(&a.reversed(), &b).unwrap().lk, -r.lk);
        for k in 0..8 {
            assert_eq!(linking_number_along(&a, &b, &direction(k)).unwrap().0, r.lk);
        }
    }

    #[test]
    fn distant_circles() {
        let a = circle(32, |c, s| P3::new(c, s, 0.0));
        let b = circle(32, |c, s| P3::new(5.0 + c, 0.0, s));
        let r = linking_number(&a, &b).unwrap();
        assert_eq!(r.lk, 0);
        assert!(r.gauss.abs() < 1e-9);
    }

    #[test]
    fn writhe_examples() {
        let flat = circle(32, |c, s| P3::new(c, s, 0.0));
        assert_eq!(writhe(&flat, &P3::z()).unwrap(), 0);
        // one-crossing figure eight lifted so one strand passes over
        let eight = SpaceCurve::closed_from(
            (0..64)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64 + 0.5) / 64.0;
                    P3::new(t.cos(), (2.0 * t).sin() / 2.0, t.sin())
                })
                .collect(),
        )
        .unwrap();
        let w = writhe(&eight, &P3::z()).unwrap();
        assert_eq!(w.abs(), 1);
        let mirror = eight.map(|p| P3::new(p.x, p.y, -p.z)).unwrap();
        assert_eq!(writhe(&mirror, &P3::z()).unwrap(), -w);
    }

    #[test]
    fn open_curve_rejected() {
        let (a, _) = hopf();
        let open = SpaceCurve::open(a.vertices().to_vec()).unwrap();
        assert!(linking_number(&a, &open).is_err());
    }
}
