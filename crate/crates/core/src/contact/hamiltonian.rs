use std::fmt;
use std::sync::Arc;

use nalgebra::SVector;

use crate::error::{Error, Result};
use crate::geometry::{P2, P3};

use super::ContactForm;

/// A vector field on `ℝ^D` that may refuse points outside its domain.
pub trait VectorField<const D: usize>: Sync {
    fn eval(&self, p: &SVector<f64, D>) -> Result<SVector<f64, D>>;
}

/// Wraps a plain closure as an everywhere-defined field.
pub struct FnField<F>(pub F);

impl<const D: usize, F> VectorField<D> for FnField<F>
where
    F: Fn(&SVector<f64, D>) -> SVector<f64, D> + Sync,
{
    fn eval(&self, p: &SVector<f64, D>) -> Result<SVector<f64, D>> {
        Ok((self.0)(p))
    }
}

type HamFn = Arc<dyn Fn(&P3) -> (f64, P3) + Send + Sync>;

/// A contact Hamiltonian `H(x, y, z)` together with its gradient.
#[derive(Clone)]
pub struct Hamiltonian(HamFn);

impl fmt::Debug for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hamiltonian(..)")
    }
}

impl Hamiltonian {
    /// `f` returns `(H, ∇H)`.
    pub fn new(f: impl Fn(&P3) -> (f64, P3) + Send + Sync + 'static) -> Self {
        Hamiltonian(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| (c, P3::zeros()))
    }

    /// Polynomial from terms `[c, i, j, k]` meaning `c · x^i y^j z^k`.
    pub fn poly(terms: &[[f64; 4]]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let mut e = [0i32; 3];
            for (k, &v) in t[1..].iter().enumerate() {
                if !(v >= 0.0 && v.fract() == 0.0 && v <= 64.0) {
                    return Err(Error::Format(format!("bad exponent {v} in Hamiltonian term")));
                }
                e[k] = v as i32;
            }
            parsed.push((t[0], e));
        }
        Ok(Self::new(move |p| {
            let mut h = 0.0;
            let mut g = P3::zeros();
            for &(c, e) in &parsed {
                let pw = |v: f64, k: i32| if k <= 0 { 1.0 } else { v.powi(k) };
                let mono = [pw(p.x, e[0]), pw(p.y, e[1]), pw(p.z, e[2])];
                h += c * mono[0] * mono[1] * mono[2];
                for d in 0..3 {
                    if e[d] > 0 {
                        let mut m = mono;
                        m[d] = e[d] as f64 * pw(p[d], e[d] - 1);
                        g[d] += c * m[0] * m[1] * m[2];
                    }
                }
            }
            (h, g)
        }))
    }

    pub fn eval(&self, p: &P3) -> (f64, P3) {
        (self.0)(p)
    }
}

/// Contact vector field `X_H` of `α = dz + a dx + b dy`, characterised by
/// `α(X_H) = H` and `ι_{X_H} dα = dH(R) α − dH`.
///
/// With `f = b_x − a_y`:
/// `X¹ = (H_z b − H_y)/f`, `X² = (H_x − H_z a)/f`, `X³ = H − a X¹ − b X²`.
#[derive(Clone, Debug)]
pub struct HamiltonianField {
    form: ContactForm,
    h: Hamiltonian,
}

pub fn hamiltonian_field(form: &ContactForm, h: Hamiltonian) -> HamiltonianField {
    HamiltonianField {
        form: form.clone(),
        h,
    }
}

impl VectorField<3> for HamiltonianField {
    fn eval(&self, p: &P3) -> Result<P3> {
        let xy = P2::new(p.x, p.y);
        self.form.check_point(&xy)?;
        let v = self.form.eval(&xy);
        let (h, g) = self.h.eval(p);
        let f = v.d_beta();
        let x1 = (g.z * v.b - g.y) / f;
        let x2 = (g.x - g.z * v.a) / f;
        Ok(P3::new(x1, x2, h - v.a * x1 - v.b * x2))
    }
}

/// Advances every point by the classical RK4 scheme over time `t` using
/// `ceil(|t|/step)` equal steps.
pub fn flow<const D: usize, F: VectorField<D> + ?Sized>(
    field: &F,
    points: &[SVector<f64, D>],
    t: f64,
    step: f64,
) -> Result<Vec<SVector<f64, D>>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("flow time {t} is not finite")));
    }
    if t == 0.0 {
        return Ok(points.to_vec());
    }
    let n = (t.abs() / step - 1e-9).ceil().max(1.0) as usize;
    let h = t / n as f64;
    points
        .iter()
        .map(|p| {
            let mut x = *p;
            for _ in 0..n {
                x = rk4_step(field, &x, h)?;
            }
            Ok(x)
        })
        .collect()
}

pub fn rk4_step<const D: usize, F: VectorField<D> + ?Sized>(
    field: &F,
    x: &SVector<f64, D>,
    h: f64,
) -> Result<SVector<f64, D>> {
    let k1 = field.eval(x)?;
    let k2 = field.eval(&(x + k1 * (h / 2.0)))?;
    let k3 = field.eval(&(x + k2 * (h / 2.0)))?;
    let k4 = field.eval(&(x + k3 * h))?;
    Ok(x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{legendrian_residual, Domain, FormValue};
    use crate::geometry::SpaceCurve;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reeb_and_zero() {
        let f = ContactForm::rot();
        let p = P3::new(0.3, -0.2, 4.0);
        assert_eq!(
            hamiltonian_field(&f, Hamiltonian::constant(1.0)).eval(&p).unwrap(),
            P3::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            hamiltonian_field(&f, Hamiltonian::constant(0.0)).eval(&p).unwrap(),
            P3::zeros()
        );
    }

    #[test]
    fn h_equals_y_under_xdy() {
        let f = ContactForm::xdy();
        let x = hamiltonian_field(&f, Hamiltonian::poly(&[[1.0, 0.0, 1.0, 0.0]]).unwrap());
        let p = P3::new(0.7, -1.3, 2.0);
        assert_eq!(x.eval(&p).unwrap(), P3::new(-1.0, 0.0, -1.3));
        // closed form (x − t, y, z + t y) pulls α back to itself
        let t = 0.37;
        let img = |q: P3| P3::new(q.x - t, q.y, q.z + t * q.y);
        let a = |q: P3, v: P3| v.z + q.x * v.y;
        let v = P3::new(0.2, 0.5, -0.4);
        let pushed = P3::new(v.x, v.y, v.z + t * v.y);
        assert!((a(img(p), pushed) - a(p, v)).abs() < 1e-15);
        let moved = flow(&x, &[p], 0.5, 1e-3).unwrap()[0];
        let exact = P3::new(p.x - 0.5, p.y, p.z + 0.5 * p.y);
        assert!((moved - exact).norm() <= 1e-12);
    }

    #[test]
    fn general_formula_is_contact() {
        // L_X α = μ α for a non-trivial form and Hamiltonian, checked by finite differences
        let form = ContactForm::poly(
            vec![crate::contact::Monomial { c: -0.5, i: 0, j: 1 }],
            vec![
                crate::contact::Monomial { c: 0.5, i: 1, j: 0 },
                crate::contact::Monomial { c: 0.2, i: 2, j: 0 },
            ],
            Domain::Rect {
                x_min: -1.0,
                x_max: 1.0,
                y_min: -1.0,
                y_max: 1.0,
            },
        )
        .unwrap();
        let h = Hamiltonian::poly(&[[1.0, 1.0, 1.0, 0.0], [0.3, 0.0, 0.0, 1.0], [0.5, 2.0, 0.0, 0.0]])
            .unwrap();
        let field = hamiltonian_field(&form, h.clone());
        let alpha = |p: &P3| {
            let v: FormValue = form.eval(&p.xy());
            P3::new(v.a, v.b, 1.0)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = 1e-5;
        for _ in 0..20 {
            let p = P3::new(
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-0.5..0.5),
                rng.gen_range(-1.0..1.0),
            );
            let x = field.eval(&p).unwrap();
            assert!((alpha(&p).dot(&x) - h.eval(&p).0).abs() < 1e-12);
            // (L_X α)(w) = d/dt α_{φ_t p}(dφ_t w) at t = 0
            let pull = |w: P3| {
                let fwd = {
                    let q = flow(&field, &[p, p + w * e], e, e).unwrap();
                    alpha(&q[0]).dot(&((q[1] - q[0]) / e))
                };
                let back = {
                    let q = flow(&field, &[p, p + w * e], -e, e).unwrap();
                    alpha(&q[0]).dot(&((q[1] - q[0]) / e))
                };
                (fwd - back) / (2.0 * e)
            };
            let basis = [P3::x(), P3::y(), P3::z()];
            let lie: Vec<f64> = basis.iter().map(|&w| pull(w)).collect();
            let a = alpha(&p);
            let mu = lie[2] / a.z;
            for k in 0..3 {
                assert!((lie[k] - mu * a[k]).abs() < 1e-4, "{lie:?} vs {mu} {a:?}");
            }
        }
    }

    #[test]
    fn constant_field_and_reversal() {
        let up = FnField(|_: &P3| P3::new(0.0, 0.0, 1.0));
        let p = P3::new(1.0, 2.0, 3.0);
        assert_eq!(flow(&up, &[p], 1.0, 0.25).unwrap()[0], P3::new(1.0, 2.0, 4.0));
        let zero = FnField(|_: &P3| P3::zeros());
        assert_eq!(flow(&zero, &[p], 5.0, 0.1).unwrap()[0], p);
        let rot = FnField(|q: &P2| P2::new(-q.y, q.x));
        let start = P2::new(1.0, 0.0);
        let there = flow(&rot, &[start], 1.3, 1e-2).unwrap();
        let back = flow(&rot, &there, -1.3, 1e-2).unwrap()[0];
        assert!((back - start).norm() < 1e-8);
        assert!(flow(&rot, &[start], 1.0, 0.0).is_err());
    }

    #[test]
    fn flow_preserves_legendrian() {
        let form = ContactForm::xdy();
        let pts: Vec<P3> = (0..=200)
            .map(|k| {
                let t = k as f64 / 200.0;
                P3::new(t * t, t, -t * t * t / 3.0)
            })
            .collect();
        let curve = SpaceCurve::open(pts).unwrap();
        let field = hamiltonian_field(
            &form,
            Hamiltonian::poly(&[[1.0, 0.0, 1.0, 0.0], [0.5, 1.0, 0.0, 1.0]]).unwrap(),
        );
        let moved = SpaceCurve::open(flow(&field, curve.vertices(), 0.1, 1e-3).unwrap()).unwrap();
        let before = legendrian_residual(&form, &curve).unwrap().relative_residual;
        let after = legendrian_residual(&form, &moved).unwrap().relative_residual;
        assert!(before <= 1e-3, "{before}");
        assert!(after <= before * 2.0 + 1e-6, "{after}");
    }

    #[test]
    fn domain_exit_mid_flow() {
        let form = ContactForm::xdy()
            .with_domain(Domain::Rect {
                x_min: -1.0,
                x_max: 1.0,
                y_min: -1.0,
                y_max: 1.0,
            })
            .unwrap();
        let field = hamiltonian_field(&form, Hamiltonian::poly(&[[1.0, 0.0, 1.0, 0.0]]).unwrap());
        let r = flow(&field, &[P3::new(0.5, 0.0, 0.0)], 2.0, 1e-2);
        assert!(matches!(r, Err(Error::DomainExit { .. })));
    }
}
