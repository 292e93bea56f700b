use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segment::point_segment_distance, P2};

/// Region of the chart on which a form is used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Domain {
    #[default]
    Plane,
    Rect {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
    Annulus {
        center: [f64; 2],
        r_min: f64,
        r_max: f64,
    },
}

/// Window sampled by the contact check when the domain is the whole plane.
const PLANE_WINDOW: f64 = 10.0;
const CONTACT_GRID: usize = 16;

impl Domain {
    pub fn contains(&self, p: &P2) -> bool {
        match *self {
            Domain::Plane => true,
            Domain::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max,
            Domain::Annulus {
                center,
                r_min,
                r_max,
            } => {
                let r = (p - P2::new(center[0], center[1])).norm();
                r >= r_min && r <= r_max
            }
        }
    }

    /// Whether the whole segment lies in the domain. Rectangles and discs are
    /// convex, so only the hole of an annulus needs a distance test.
    pub fn contains_segment(&self, p: &P2, q: &P2) -> bool {
        if !self.contains(p) || !self.contains(q) {
            return false;
        }
        match *self {
            Domain::Annulus { center, r_min, .. } if r_min > 0.0 => {
                point_segment_distance(&P2::new(center[0], center[1]), p, q) >= r_min
            }
            _ => true,
        }
    }

    /// Points of a regular grid over the domain, used for sampled checks.
    pub fn sample_grid(&self, n: usize) -> Vec<P2> {
        let lerp = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
        match *self {
            Domain::Plane => {
                let w = PLANE_WINDOW;
                grid(n, |i, j| P2::new(lerp(-w, w, i), lerp(-w, w, j)))
            }
            Domain::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => grid(n, |i, j| P2::new(lerp(x_min, x_max, i), lerp(y_min, y_max, j))),
            Domain::Annulus {
                center,
                r_min,
                r_max,
            } => grid(n, |i, j| {
                let r = lerp(r_min, r_max, i);
                let phi = lerp(0.0, std::f64::consts::TAU, j);
                P2::new(center[0] + r * phi.cos(), center[1] + r * phi.sin())
            }),
        }
    }
}

fn grid(n: usize, f: impl Fn(usize, usize) -> P2) -> Vec<P2> {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| f(i, j))
        .collect()
}

/// Values of `a`, `b` and their first partial derivatives at a point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FormValue {
    pub a: f64,
    pub b: f64,
    pub a_x: f64,
    pub a_y: f64,
    pub b_x: f64,
    pub b_y: f64,
}

impl FormValue {
    /// `dβ = (b_x − a_y) dx∧dy`.
    pub fn d_beta(&self) -> f64 {
        self.b_x - self.a_y
    }
}

/// Monomial `c · x^i · y^j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub c: f64,
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    fn eval(&self, x: f64, y: f64) -> (f64, f64, f64) {
        let pw = |v: f64, k: u32| if k == 0 { 1.0 } else { v.powi(k as i32) };
        let v = self.c * pw(x, self.i) * pw(y, self.j);
        let dx = if self.i == 0 {
            0.0
        } else {
            self.c * self.i as f64 * pw(x, self.i - 1) * pw(y, self.j)
        };
        let dy = if self.j == 0 {
            0.0
        } else {
            self.c * self.j as f64 * pw(x, self.i) * pw(y, self.j - 1)
        };
        (v, dx, dy)
    }
}

fn eval_poly(terms: &[Monomial], x: f64, y: f64) -> (f64, f64, f64) {
    terms.iter().fold((0.0, 0.0, 0.0), |acc, m| {
        let (v, dx, dy) = m.eval(x, y);
        (acc.0 + v, acc.1 + dx, acc.2 + dy)
    })
}

type CustomFn = Arc<dyn Fn(f64, f64) -> FormValue + Send + Sync>;

#[derive(Clone)]
pub enum FormKind {
    /// `β = x dy`
    Xdy,
    /// `β = −y dx`
    MinusYdx,
    /// `β = x dy − y dx = ρ² dφ`
    Rot,
    Poly {
        a: Vec<Monomial>,
        b: Vec<Monomial>,
    },
    Custom(CustomFn),
}

impl fmt::Debug for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Xdy => write!(f, "Xdy"),
            FormKind::MinusYdx => write!(f, "MinusYdx"),
            FormKind::Rot => write!(f, "Rot"),
            FormKind::Poly { a, b } => f.debug_struct("Poly").field("a", a).field("b", b).finish(),
            FormKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// The contact form `α = dz + a dx + b dy` on `domain × ℝ`.
#[derive(Clone, Debug)]
pub struct ContactForm {
    kind: FormKind,
    domain: Domain,
    sign: f64,
}

impl ContactForm {
    /// Builds a form and checks the contact condition: `dβ` is nonzero with
    /// constant sign on a 16 × 16 sample grid of the domain.
    pub fn new(kind: FormKind, domain: Domain) -> Result<Self> {
        let mut form = ContactForm {
            kind,
            domain,
            sign: 1.0,
        };
        let mut sign = 0.0;
        for p in form.domain.sample_grid(CONTACT_GRID) {
            let d = form.eval(&p).d_beta();
            if !(d != 0.0 && d.is_finite()) {
                return Err(Error::NotContact(format!(
                    "dβ = {d} at ({}, {})",
                    p.x, p.y
                )));
            }
            if sign == 0.0 {
                sign = d.signum();
            } else if d.signum() != sign {
                return Err(Error::NotContact(format!(
                    "dβ changes sign near ({}, {})",
                    p.x, p.y
                )));
            }
        }
        form.sign = sign;
        Ok(form)
    }

    pub fn xdy() -> Self {
        Self::new(FormKind::Xdy, Domain::Plane).expect("x dy is contact")
    }

    pub fn minus_ydx() -> Self {
        Self::new(FormKind::MinusYdx, Domain::Plane).expect("−y dx is contact")
    }

    pub fn rot() -> Self {
        Self::new(FormKind::Rot, Domain::Plane).expect("x dy − y dx is contact")
    }

    pub fn poly(a: Vec<Monomial>, b: Vec<Monomial>, domain: Domain) -> Result<Self> {
        Self::new(FormKind::Poly { a, b }, domain)
    }

    pub fn custom(
        f: impl Fn(f64, f64) -> FormValue + Send + Sync + 'static,
        domain: Domain,
    ) -> Result<Self> {
        Self::new(FormKind::Custom(Arc::new(f)), domain)
    }

    pub fn with_domain(&self, domain: Domain) -> Result<Self> {
        Self::new(self.kind.clone(), domain)
    }

    pub fn kind(&self) -> &FormKind {
        &self.kind
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Sign of `dβ` on the domain.
    pub fn orientation(&self) -> f64 {
        self.sign
    }

    pub fn eval(&self, p: &P2) -> FormValue {
        let (x, y) = (p.x, p.y);
        match &self.kind {
            FormKind::Xdy => FormValue {
                b: x,
                b_x: 1.0,
                ..Default::default()
            },
            FormKind::MinusYdx => FormValue {
                a: -y,
                a_y: -1.0,
                ..Default::default()
            },
            FormKind::Rot => FormValue {
                a: -y,
                b: x,
                a_y: -1.0,
                b_x: 1.0,
                ..Default::default()
            },
            FormKind::Poly { a, b } => {
                let (a, a_x, a_y) = eval_poly(a, x, y);
                let (b, b_x, b_y) = eval_poly(b, x, y);
                FormValue {
                    a,
                    b,
                    a_x,
                    a_y,
                    b_x,
                    b_y,
                }
            }
            FormKind::Custom(f) => f(x, y),
        }
    }

    /// `(a, b)` at `p`.
    pub fn beta(&self, p: &P2) -> P2 {
        let v = self.eval(p);
        P2::new(v.a, v.b)
    }

    pub fn d_beta(&self, p: &P2) -> f64 {
        self.eval(p).d_beta()
    }

    /// Largest total degree of `a` and `b` when both are polynomials.
    pub fn polynomial_degree(&self) -> Option<u32> {
        match &self.kind {
            FormKind::Xdy | FormKind::MinusYdx | FormKind::Rot => Some(1),
            FormKind::Poly { a, b } => Some(a.iter().chain(b).map(|m| m.i + m.j).max().unwrap_or(0)),
            FormKind::Custom(_) => None,
        }
    }

    pub fn check_point(&self, p: &P2) -> Result<()> {
        if self.domain.contains(p) {
            Ok(())
        } else {
            Err(Error::DomainExit { x: p.x, y: p.y })
        }
    }

    pub fn check_segment(&self, p: &P2, q: &P2) -> Result<()> {
        if self.domain.contains_segment(p, q) {
            Ok(())
        } else if !self.domain.contains(p) {
            Err(Error::DomainExit { x: p.x, y: p.y })
        } else {
            Err(Error::DomainExit { x: q.x, y: q.y })
        }
    }

    pub fn to_spec(&self) -> Result<FormSpec> {
        let (kind, a, b) = match &self.kind {
            FormKind::Xdy => ("xdy", vec![], vec![]),
            FormKind::MinusYdx => ("minus_ydx", vec![], vec![]),
            FormKind::Rot => ("rot", vec![], vec![]),
            FormKind::Poly { a, b } => ("poly", a.clone(), b.clone()),
            FormKind::Custom(_) => {
                return Err(Error::Format("custom forms cannot be serialized".into()))
            }
        };
        Ok(FormSpec {
            kind: kind.into(),
            a_coeffs: a.iter().map(|m| [m.c, m.i as f64, m.j as f64]).collect(),
            b_coeffs: b.iter().map(|m| [m.c, m.i as f64, m.j as f64]).collect(),
            domain: self.domain.clone(),
        })
    }
}

/// JSON description of a form. Polynomial coefficients are triples
/// `[c, i, j]` standing for `c · x^i · y^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    pub kind: String,
    #[serde(default)]
    pub a_coeffs: Vec<[f64; 3]>,
    #[serde(default)]
    pub b_coeffs: Vec<[f64; 3]>,
    #[serde(default)]
    pub domain: Domain,
}

fn monomials(coeffs: &[[f64; 3]]) -> Result<Vec<Monomial>> {
    coeffs
        .iter()
        .map(|&[c, i, j]| {
            let ok = |e: f64| e >= 0.0 && e.fract() == 0.0 && e <= 64.0;
            if ok(i) && ok(j) {
                Ok(Monomial {
                    c,
                    i: i as u32,
                    j: j as u32,
                })
            } else {
                Err(Error::Format(format!("bad exponents in [{c}, {i}, {j}]")))
            }
        })
        .collect()
}

impl FormSpec {
    pub fn named(kind: &str) -> Self {
        FormSpec {
            kind: kind.into(),
            a_coeffs: vec![],
            b_coeffs: vec![],
            domain: Domain::Plane,
        }
    }

    pub fn build(&self) -> Result<ContactForm> {
        let kind = match self.kind.as_str() {
            "xdy" => FormKind::Xdy,
            "minus_ydx" => FormKind::MinusYdx,
            "rot" => FormKind::Rot,
            "poly" => FormKind::Poly {
                a: monomials(&self.a_coeffs)?,
                b: monomials(&self.b_coeffs)?,
            },
            other => return Err(Error::Format(format!("unknown form kind `{other}`"))),
        };
        ContactForm::new(kind, self.domain.clone())
    }
}
