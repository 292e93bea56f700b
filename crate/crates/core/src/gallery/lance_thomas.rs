use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, SpaceCurve, P2, P3};

/// A square of the construction with the run of curve vertices inside it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Square {
    /// Bottom-left corner.
    pub x: f64,
    pub y: f64,
    pub side: f64,
    /// First and last curve vertex inside the square (a contiguous run).
    pub first: usize,
    pub last: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LanceThomasLevel {
    pub n: usize,
    /// `s₁ … sₙ`.
    pub s: Vec<f64>,
    /// `a₁ … a_{n+1}`, `a₁ = 1`.
    pub a: Vec<f64>,
    /// `squares[m − 1]` is `S_m`, `m = 1 … n+1`.
    pub squares: Vec<Vec<Square>>,
    /// `γₙ` from `(0, 0)` to `(1, 1)`.
    pub curve: PlaneCurve,
}

/// `s_k = 1/(k+1)²`.
pub fn default_s(k: usize) -> f64 {
    1.0 / ((k + 1) * (k + 1)) as f64
}

struct Builder<'a> {
    n: usize,
    a: &'a [f64],
    squares: Vec<Vec<Square>>,
    pts: Vec<P2>,
}

impl Builder<'_> {
    fn route(&mut self, x: f64, y: f64, m: usize) {
        let side = self.a[m - 1];
        let first = self.pts.len();
        let slot = self.squares[m - 1].len();
        self.squares[m - 1].push(Square { x, y, side, first, last: first });
        if m == self.n + 1 {
            self.pts.push(P2::new(x, y));
            self.pts.push(P2::new(x + side, y + side));
        } else {
            let b = self.a[m];
            let off = side - b;
            for (dx, dy) in [(0.0, 0.0), (off, 0.0), (0.0, off), (off, off)] {
                self.route(x + dx, y + dy, m + 1);
            }
        }
        self.squares[m - 1][slot].last = self.pts.len() - 1;
    }
}

/// Level-`n` projection `γₙ` with `s_k = s_rule(k)`.
pub fn lance_thomas_projection(n: usize, s_rule: impl Fn(usize) -> f64) -> Result<LanceThomasLevel> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be at least 1".into()));
    }
    let s: Vec<f64> = (1..=n).map(&s_rule).collect();
    if let Some((k, v)) = s.iter().enumerate().find(|(_, v)| !(**v > 0.0 && **v < 1.0)) {
        return Err(Error::InvalidArgument(format!("s_{} = {v} is not in (0, 1)", k + 1)));
    }
    let mut a = vec![1.0];
    for k in 0..n {
        a.push((1.0 - s[k]) * a[k] / 2.0);
    }
    let mut b = Builder {
        n,
        a: &a,
        squares: vec![Vec::new(); n + 1],
        pts: Vec::with_capacity(2 << (2 * n)),
    };
    b.route(0.0, 0.0, 1);
    let Builder { squares, pts, .. } = b;
    Ok(LanceThomasLevel {
        n,
        s,
        a,
        squares,
        curve: PlaneCurve::open(pts)?,
    })
}

/// Closed curve over `γₙ` plus a return path, for `ker(dz − y dx)`.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq)]
pub struct LanceThomasUnknot {
    pub level: LanceThomasLevel,
    pub K: f64,
    /// `k₁ … k_{n+1}`, `k₁ = K`.
    pub k: Vec<f64>,
    /// Legendrian height `z` on the vertices of `γₙ` (`dz = y dx`, `z(0,0) = 0`).
    pub z: Vec<f64>,
    /// `Δz` on the vertices of `γₙ`.
    pub delta_z: Vec<f64>,
    /// Height of `γₙ`'s endpoint, `(K + 1/2) a₁²`.
    pub endpoint_z: f64,
    /// Return path `(a₁,a₁) → (a₁,h) → (−δ,h) → (−δ,0) → (0,0)`.
    pub h: f64,
    pub delta: f64,
    /// z-mismatch at `(0, 0)` after the return path.
    pub closure_defect: f64,
    pub curve: SpaceCurve,
}

/// Legendrian unknot over `γₙ` (default `s` rule), `z + Δz` with `Δz`
/// increasing by `k_{n+1} a_{n+1}²` along each finest diagonal, closed by a
/// Legendrian return path whose height `h` cancels the endpoint height.
#[allow(non_snake_case)]
pub fn lance_thomas_unknot(n: usize, K: f64) -> Result<LanceThomasUnknot> {
    if !(K > 0.0) {
        return Err(Error::InvalidArgument(format!("K = {K} must be positive")));
    }
    let level = lance_thomas_projection(n, default_s)?;
    let a1 = level.a[0];
    let mut k = vec![K];
    for j in 0..n {
        k.push(k[j] / (1.0 - level.s[j]).powi(2));
    }
    let step = k[n] * level.a[n] * level.a[n];
    let v = level.curve.vertices();
    let mut z = vec![0.0];
    let mut delta_z = vec![0.0];
    for e in 0..v.len() - 1 {
        let (p, q) = (v[e], v[e + 1]);
        z.push(z[e] + 0.5 * (p.y + q.y) * (q.x - p.x));
        // even edges are the finest diagonals
        delta_z.push(delta_z[e] + if e % 2 == 0 { step } else { 0.0 });
    }
    let endpoint_z = z[v.len() - 1] + delta_z[v.len() - 1];
    let delta = a1 / 16.0;
    let h = endpoint_z / (a1 + delta);
    if h <= a1 {
        return Err(Error::Precondition(format!(
            "return path at height {h} meets the unit square (K too small)"
        )));
    }
    let top = endpoint_z - h * (a1 + delta);
    let mut pts: Vec<P3> = v
        .iter()
        .zip(z.iter().zip(&delta_z))
        .map(|(p, (z, dz))| P3::new(p.x, p.y, z + dz))
        .collect();
    pts.push(P3::new(a1, h, endpoint_z));
    pts.push(P3::new(-delta, h, top));
    pts.push(P3::new(-delta, 0.0, top));
    Ok(LanceThomasUnknot {
        K,
        k,
        z,
        delta_z,
        endpoint_z,
        h,
        delta,
        closure_defect: top,
        curve: SpaceCurve::closed_from(pts)?,
        level,
    })
}

/// Worst cases of the two square bounds at one level `m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelBound {
    pub m: usize,
    /// `max |z(x,y) − z(x₀,y₀) − (x − x₀) y₀|` over corners in a square of `S_m`.
    pub max_f: f64,
    /// `a_m² / 2`.
    pub f_bound: f64,
    /// `max |z(q) − z(p)|` (with `Δz`) over corner pairs in one square of `S_m`.
    pub max_range: f64,
    /// `6 a₁ a_m`.
    pub range_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractalBounds {
    pub levels: Vec<LevelBound>,
}

impl FractalBounds {
    pub fn holds(&self, slack: f64) -> bool {
        self.levels
            .iter()
            .all(|l| l.max_f <= l.f_bound + slack && l.max_range < l.range_bound)
    }
}

/// Checks both bounds over every square of `S₁ … S_{n+1}` and every pair of
/// curve corners inside it.
pub fn fractal_bounds(u: &LanceThomasUnknot) -> FractalBounds {
    let v = u.level.curve.vertices();
    let a1 = u.level.a[0];
    let levels = u
        .level
        .squares
        .iter()
        .enumerate()
        .map(|(i, sq)| {
            let am = u.level.a[i];
            let mut max_f: f64 = 0.0;
            let mut max_range: f64 = 0.0;
            for s in sq {
                let z0 = u.z[s.first];
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for j in s.first..=s.last {
                    max_f = max_f.max((u.z[j] - z0 - (v[j].x - s.x) * s.y).abs());
                    let full = u.z[j] + u.delta_z[j];
                    lo = lo.min(full);
                    hi = hi.max(full);
                }
                max_range = max_range.max(hi - lo);
            }
            LevelBound {
                m: i + 1,
                max_f,
                f_bound: am * am / 2.0,
                max_range,
                range_bound: 6.0 * a1 * am,
            }
        })
        .collect();
    FractalBounds { levels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{legendrian_residual, ContactForm};
    use crate::invariants::{thurston_bennequin, TbOptions};

    #[test]
    fn first_level_shape() {
        let l = lance_thomas_projection(1, |_| 0.25).unwrap();
        assert_eq!(l.a, vec![1.0, 0.375]);
        // 4 diagonals joined by the 3 cross segments
        assert_eq!(l.curve.len(), 8);
        assert_eq!(l.curve.edge_count(), 7);
        let g = 0.25;
        let b = 0.375;
        let expect = [
            (0.0, 0.0),
            (b, b),
            (b + g, 0.0),
            (1.0, b),
            (0.0, b + g),
            (b, 1.0),
            (b + g, b + g),
            (1.0, 1.0),
        ];
        for (p, e) in l.curve.vertices().iter().zip(expect) {
            assert!((p - P2::new(e.0, e.1)).norm() < 1e-15);
        }
        // connecting edges cross the arms of the cross of width s·a
        for e in [1, 3, 5] {
            let (p, q) = l.curve.edge(e);
            assert!(p.x <= b + 1e-15 && q.x >= b + g - 1e-15 || p.y <= b && q.y >= b + g);
        }
    }

    #[test]
    fn square_counts_and_runs() {
        let l = lance_thomas_projection(4, default_s).unwrap();
        for (m, sq) in l.squares.iter().enumerate() {
            assert_eq!(sq.len(), 4usize.pow(m as u32));
            for s in sq {
                for p in &l.curve.vertices()[s.first..=s.last] {
                    assert!(p.x >= s.x - 1e-15 && p.x <= s.x + s.side + 1e-15);
                    assert!(p.y >= s.y - 1e-15 && p.y <= s.y + s.side + 1e-15);
                }
            }
        }
        assert!(l.curve.is_embedded());
    }

    #[test]
    fn recurrence() {
        let l = lance_thomas_projection(6, default_s).unwrap();
        for k in 0..6 {
            assert_eq!(l.a[k + 1], (1.0 - l.s[k]) * l.a[k] / 2.0);
        }
    }

    #[test]
    fn a_over_s_decreases() {
        let l = lance_thomas_projection(12, default_s).unwrap();
        let r: Vec<f64> = (1..12).map(|k| l.a[k] / l.s[k]).collect();
        assert!(r.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn endpoint_height() {
        for n in 1..=4 {
            let u = lance_thomas_unknot(n, 1.0).unwrap();
            assert!((u.endpoint_z - 1.5).abs() <= 1e-12);
            assert!(u.closure_defect.abs() <= 1e-12);
            // Legendrian part alone ends at a₁²/2
            assert!((u.z[u.z.len() - 1] - 0.5).abs() <= 1e-12);
        }
    }

    #[test]
    fn segment_lifts_are_exact() {
        let u = lance_thomas_unknot(2, 1.0).unwrap();
        let form = ContactForm::minus_ydx();
        let n = u.level.curve.len();
        let c = SpaceCurve::open(u.curve.vertices()[..n].to_vec()).unwrap();
        let mut acc = 0.0;
        for e in 0..n - 1 {
            let (p, q) = c.edge(e);
            let alpha = (q.z - p.z) + crate::contact::edge_beta(&form, &p.xy(), &q.xy());
            acc += alpha;
            if e % 2 == 1 {
                assert!(alpha.abs() < 1e-15);
            }
        }
        assert!((acc - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tb_zero() {
        let form = ContactForm::minus_ydx();
        for n in 2..=3 {
            let u = lance_thomas_unknot(n, 1.0).unwrap();
            let opts = TbOptions { require_legendrian: false, ..Default::default() };
            assert_eq!(thurston_bennequin(&form, &u.curve, opts).unwrap().tb, 0);
        }
    }

    #[test]
    fn residual_is_not_small() {
        let u = lance_thomas_unknot(2, 1.0).unwrap();
        let v = legendrian_residual(&ContactForm::minus_ydx(), &u.curve).unwrap();
        assert!((v.residual - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bounds_hold() {
        for n in 1..=5 {
            let b = fractal_bounds(&lance_thomas_unknot(n, 1.0).unwrap());
            assert!(b.holds(1e-12), "{n}: {:?}", b.levels);
        }
    }

    #[test]
    fn small_k_rejected() {
        assert!(lance_thomas_unknot(2, 0.25).is_err());
        assert!(lance_thomas_unknot(2, -1.0).is_err());
    }
}
