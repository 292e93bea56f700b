use crate::error::Result;
use nalgebra::SVector;

use crate::geometry::{Curve, PlaneCurve, SpaceCurve, P2};

use super::ContactForm;

/// Gauss–Legendre order 8 on `[−1, 1]`: (node, weight).
const GAUSS8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
];

/// Polynomial integrands up to this degree are integrated exactly.
const EXACT_DEGREE: u32 = 15;
const ADAPTIVE_REL_TOL: f64 = 1e-12;
const ADAPTIVE_MAX_DEPTH: u32 = 40;

/// Quadrature nodes of an edge, as affine parameters in `[0, 1]`.
pub fn gauss_params() -> impl Iterator<Item = f64> {
    GAUSS8.iter().map(|&(x, _)| 0.5 * (x + 1.0))
}

fn gauss_edge(form: &ContactForm, p: &P2, q: &P2) -> f64 {
    let d = q - p;
    let mut s = 0.0;
    for &(x, w) in &GAUSS8 {
        let beta = form.beta(&(p + d * (0.5 * (x + 1.0))));
        s += w * beta.dot(&d);
    }
    0.5 * s
}

fn adaptive_edge(form: &ContactForm, p: &P2, q: &P2, whole: f64, depth: u32) -> f64 {
    let m = (p + q) * 0.5;
    let left = gauss_edge(form, p, &m);
    let right = gauss_edge(form, &m, q);
    let split = left + right;
    if depth >= ADAPTIVE_MAX_DEPTH
        || (split - whole).abs() <= ADAPTIVE_REL_TOL * split.abs().max(f64::MIN_POSITIVE)
        || (split - whole).abs() <= f64::EPSILON * (q - p).norm()
    {
        split
    } else {
        adaptive_edge(form, p, &m, left, depth + 1) + adaptive_edge(form, &m, q, right, depth + 1)
    }
}

/// `∫ β` along the segment `p → q`. The domain is not checked.
pub fn edge_beta(form: &ContactForm, p: &P2, q: &P2) -> f64 {
    let whole = gauss_edge(form, p, q);
    match form.polynomial_degree() {
        Some(d) if d <= EXACT_DEGREE => whole,
        _ => adaptive_edge(form, p, q, whole, 0),
    }
}

/// Total and per-vertex cumulative `∫ β`. For closed curves `cumulative` has
/// one extra entry, equal to `total`, for the return to vertex 0.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaIntegral {
    pub total: f64,
    pub cumulative: Vec<f64>,
}

pub fn line_integral_beta(form: &ContactForm, curve: &PlaneCurve) -> Result<BetaIntegral> {
    let mut cumulative = Vec::with_capacity(curve.edge_count() + 1);
    let mut s = 0.0;
    cumulative.push(0.0);
    for e in 0..curve.edge_count() {
        let (p, q) = curve.edge(e);
        form.check_segment(&p, &q)?;
        s += edge_beta(form, &p, &q);
        cumulative.push(s);
    }
    Ok(BetaIntegral {
        total: s,
        cumulative,
    })
}

/// Per-vertex cumulative `∫ (dz + β)`, laid out like
/// [`BetaIntegral::cumulative`].
pub fn line_integral_alpha(form: &ContactForm, curve: &SpaceCurve) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(curve.edge_count() + 1);
    let mut s = 0.0;
    out.push(0.0);
    for e in 0..curve.edge_count() {
        let (p, q) = curve.edge(e);
        let (p2, q2) = (p.xy(), q.xy());
        form.check_segment(&p2, &q2)?;
        s += (q.z - p.z) + edge_beta(form, &p2, &q2);
        out.push(s);
    }
    Ok(out)
}

/// Largest `‖β‖` seen at the vertices and quadrature nodes of the curve's
/// xy-projection. A lower bound for the true supremum.
pub fn beta_sup<const D: usize>(form: &ContactForm, curve: &Curve<D>) -> f64 {
    sup_over_nodes(curve, |p| form.beta(p).norm())
}

/// Largest `‖(a, b, 1)‖` at the vertices and quadrature nodes.
pub fn alpha_sup<const D: usize>(form: &ContactForm, curve: &Curve<D>) -> f64 {
    sup_over_nodes(curve, |p| (1.0 + form.beta(p).norm_squared()).sqrt())
}

fn sup_over_nodes<const D: usize>(curve: &Curve<D>, f: impl Fn(&P2) -> f64) -> f64 {
    let xy = |v: &SVector<f64, D>| P2::new(v[0], v[1]);
    let mut best = curve.vertices().iter().map(|v| f(&xy(v))).fold(0.0, f64::max);
    for e in 0..curve.edge_count() {
        let (p, q) = curve.edge(e);
        let (p, q) = (xy(&p), xy(&q));
        for t in gauss_params() {
            best = best.max(f(&(p + (q - p) * t)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{Domain, FormValue};
    use crate::geometry::P3;
    use std::f64::consts::PI;

    fn unit_square() -> PlaneCurve {
        PlaneCurve::closed_from(vec![
            P2::new(0.0, 0.0),
            P2::new(1.0, 0.0),
            P2::new(1.0, 1.0),
            P2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn xdy_examples() {
        let f = ContactForm::xdy();
        let seg = PlaneCurve::open(vec![P2::new(-2.0, 3.0), P2::new(5.0, 3.0)]).unwrap();
        assert_eq!(line_integral_beta(&f, &seg).unwrap().total, 0.0);
        let sq = line_integral_beta(&f, &unit_square()).unwrap();
        assert!((sq.total - 1.0).abs() < 1e-15);
        assert_eq!(sq.cumulative.len(), 5);
    }

    #[test]
    fn rot_on_circle() {
        // inscribed n-gon: ∮(x dy − y dx) = 2·area = n r² sin(2π/n)
        let (n, r) = (2000, 1.7);
        let c = PlaneCurve::closed_from(
            (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    P2::new(r * t.cos(), r * t.sin())
                })
                .collect(),
        )
        .unwrap();
        let total = line_integral_beta(&ContactForm::rot(), &c).unwrap().total;
        let polygon = n as f64 * r * r * (2.0 * PI / n as f64).sin();
        assert!((total - polygon).abs() < 1e-10);
        assert!((total - 2.0 * PI * r * r).abs() < 1e-4);
    }

    #[test]
    fn alpha_examples() {
        let f = ContactForm::xdy();
        let flat = SpaceCurve::open(vec![P3::new(0.0, 0.0, 0.0), P3::new(1.0, 0.0, 0.0)]).unwrap();
        assert_eq!(line_integral_alpha(&f, &flat).unwrap(), vec![0.0, 0.0]);
        let vertical =
            SpaceCurve::open(vec![P3::new(0.0, 0.0, 0.0), P3::new(0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(line_integral_alpha(&f, &vertical).unwrap()[1], 1.0);
        // helix: ∫(1 + cos² t) dt over [0, 2π] = 3π; the PL value converges
        let n = 4096;
        let helix = SpaceCurve::open(
            (0..=n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    P3::new(t.cos(), t.sin(), t)
                })
                .collect(),
        )
        .unwrap();
        let cum = line_integral_alpha(&f, &helix).unwrap();
        assert!((cum[n] - 3.0 * PI).abs() < 1e-5);
        assert!(cum.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn exact_on_polynomials() {
        // β = x⁷ dy on the segment (0,0) → (1,1): ∫ t⁷ dt = 1/8
        let f = ContactForm::poly(
            vec![],
            vec![
                crate::contact::Monomial { c: 1.0, i: 7, j: 0 },
                crate::contact::Monomial { c: 1.0, i: 0, j: 0 },
            ],
            Domain::Rect {
                x_min: 0.01,
                x_max: 2.0,
                y_min: -1.0,
                y_max: 2.0,
            },
        )
        .unwrap();
        let v = edge_beta(&f, &P2::new(0.0, 0.0), &P2::new(1.0, 1.0));
        assert!((v - (1.0 / 8.0 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn adaptive_on_transcendental() {
        // β = e^x dy, segment (0,0) → (3,1): ∫ e^{3t} dt = (e³ − 1)/3
        let f = ContactForm::custom(
            |x, _| FormValue {
                b: x.exp(),
                b_x: x.exp(),
                ..Default::default()
            },
            Domain::Plane,
        )
        .unwrap();
        let v = edge_beta(&f, &P2::new(0.0, 0.0), &P2::new(3.0, 1.0));
        let exact = (3f64.exp() - 1.0) / 3.0;
        assert!((v - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn domain_exit() {
        let f = ContactForm::xdy()
            .with_domain(Domain::Rect {
                x_min: 0.0,
                x_max: 1.0,
                y_min: 0.0,
                y_max: 1.0,
            })
            .unwrap();
        let c = PlaneCurve::open(vec![P2::new(0.5, 0.5), P2::new(1.5, 0.5)]).unwrap();
        assert!(matches!(
            line_integral_beta(&f, &c),
            Err(crate::Error::DomainExit { .. })
        ));
    }
}
