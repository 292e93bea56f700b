//! The acceptance checks, shared by `leglab suite acceptance` and the
//! `acceptance` integration test.
//!
//! Each criterion produces named checks `{check, value, bound, pass}`.
//! Tolerances (not the mathematical bounds) are multiplied by the scalar in
//! `LEGLAB_TOL_OVERRIDE` when it is set. Criteria run concurrently; reports
//! come back ordered by name.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contact::{angle_profile, edge_beta, legendrian_residual, line_integral_beta, ContactForm};
use crate::error::{Error, Result};
use crate::gallery::{
    cusp_curve, cylinder_contact_isotopy, cylinder_inner_branch, cylinder_outer_branch,
    figure_eight_fixture, fractal_bounds, from_cylindrical, hopf_pair, lance_thomas_unknot,
    log_spiral_contactomorphism, map_curve, random_star_polygon,
};
use crate::geometry::{chord_arc_constant, min_corner_angle, PlaneCurve, SpaceCurve, P2, P3};
use crate::invariants::{linking_number, thurston_bennequin, TbOptions};
use crate::lifting::{lift, projection_bounds_check};
use crate::moves::{mobius_arc, solve_correction, CorrectionSquare, Side};

pub const TOL_ENV: &str = "LEGLAB_TOL_OVERRIDE";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    /// A measurement with no threshold: `bound` repeats the value.
    pub fn measured(name: impl Into<String>, value: f64) -> Self {
        Check { check: name.into(), value, bound: value, pass: true }
    }

    pub fn le(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { check: name.into(), value, bound, pass: value <= bound }
    }

    pub fn lt(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { check: name.into(), value, bound, pass: value < bound }
    }

    pub fn ge(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { check: name.into(), value, bound, pass: value >= bound }
    }

    pub fn gt(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { check: name.into(), value, bound, pass: value > bound }
    }

    pub fn eq(name: impl Into<String>, value: i64, expected: i64) -> Self {
        Check {
            check: name.into(),
            value: value as f64,
            bound: expected as f64,
            pass: value == expected,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    /// Runtime limit in seconds.
    pub time_limit: f64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn checks_pass(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub fn in_time(&self) -> bool {
        self.elapsed.as_secs_f64() < self.time_limit
    }

    pub fn pass(&self) -> bool {
        self.checks_pass() && self.in_time()
    }

    /// One line: status, name, failing checks and runtime.
    pub fn summary(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {} ({} checks, {:.2}s / {}s)",
            self.name,
            self.checks.len(),
            self.elapsed.as_secs_f64(),
            self.time_limit
        );
        if let Some(e) = &self.error {
            line.push_str(&format!(" error: {e}"));
        }
        for c in self.checks.iter().filter(|c| !c.pass) {
            line.push_str(&format!(" [{}: {:.6e} vs {:.6e}]", c.check, c.value, c.bound));
        }
        if !self.in_time() {
            line.push_str(" [runtime exceeded]");
        }
        line
    }
}

/// Tolerance multiplier from `LEGLAB_TOL_OVERRIDE`, 1 when unset.
pub fn tolerance_scale() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Error::InvalidArgument(format!("{TOL_ENV}={s} is not a positive number"))),
        },
    }
}

type CheckFn = fn(f64) -> Result<Vec<Check>>;

/// `(id, name, time limit in seconds, check)`.
pub const CRITERIA: [(usize, &str, f64, CheckFn); 9] = [
    (1, "c1_lance_thomas_tb", 10.0, lance_thomas_tb),
    (2, "c2_fractal_bounds", 30.0, fractal_bound_checks),
    (3, "c3_bypass_metrics", 5.0, bypass_metrics),
    (4, "c4_lemma_inequalities", 60.0, lemma_inequalities),
    (5, "c5_lift_area_oracle", 5.0, lift_area_oracle),
    (6, "c6_correction_solver", 60.0, correction_solver),
    (7, "c7_contactomorphisms", 10.0, contactomorphisms),
    (8, "c8_invariant_cross_checks", 10.0, invariant_cross_checks),
    (9, "c9_negative_controls", 5.0, negative_controls),
];

pub fn run_criterion(id: usize, scale: f64) -> Option<CriterionReport> {
    let &(id, name, time_limit, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (checks, error) = match f(scale) {
        Ok(c) => (c, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Some(CriterionReport {
        id,
        name: name.to_string(),
        checks,
        error,
        time_limit,
        elapsed: start.elapsed(),
    })
}

/// Runs every criterion on its own thread.
pub fn run_all(scale: f64) -> Vec<CriterionReport> {
    let mut out: Vec<CriterionReport> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|c| s.spawn(move || run_criterion(c.0, scale).expect("known criterion")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn lance_thomas_tb(scale: f64) -> Result<Vec<Check>> {
    let form = ContactForm::minus_ydx();
    let mut out = Vec::new();
    for n in 2..=4 {
        let u = lance_thomas_unknot(n, 1.0)?;
        out.push(Check::le(format!("n{n}_closure_defect"), u.closure_defect.abs(), 1e-12 * scale));
        out.push(Check::le(format!("n{n}_endpoint_z_error"), (u.endpoint_z - 1.5).abs(), 1e-12 * scale));
        let v = legendrian_residual(&form, &u.curve)?;
        out.push(Check::le(format!("n{n}_relative_residual"), v.relative_residual, 1e-10 * scale));
        let opts = TbOptions { require_legendrian: false, ..Default::default() };
        let tb = thurston_bennequin(&form, &u.curve, opts)?;
        out.push(Check::eq(format!("n{n}_tb"), tb.tb, 0));
    }
    Ok(out)
}

fn fractal_bound_checks(scale: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=5 {
        let b = fractal_bounds(&lance_thomas_unknot(n, 1.0)?);
        let excess = b.levels.iter().map(|l| l.max_f - l.f_bound).fold(f64::NEG_INFINITY, f64::max);
        out.push(Check::le(format!("n{n}_in_square_excess"), excess, 1e-12 * scale));
        let ratio = b.levels.iter().map(|l| l.max_range / l.range_bound).fold(0.0, f64::max);
        out.push(Check::lt(format!("n{n}_corner_pair_ratio"), ratio, 1.0));
    }
    Ok(out)
}

fn mobius_curve(t: f64, samples: usize) -> Result<PlaneCurve> {
    PlaneCurve::open(
        (0..samples)
            .map(|j| {
                let w = mobius_arc(-1.0 + 2.0 * j as f64 / (samples - 1) as f64, t);
                P2::new(w.re, w.im)
            })
            .collect(),
    )
}

fn bypass_metrics(scale: f64) -> Result<Vec<Check>> {
    let samples = 257;
    let arc0 = mobius_curve(0.0, samples)?;
    let (mut chord, mut bilip) = (0.0f64, 0.0f64);
    for k in 0..33 {
        let arc = mobius_curve(k as f64 / 32.0, samples)?;
        chord = chord.max(chord_arc_constant(&arc)?.constant);
        bilip = bilip.max(crate::geometry::bilipschitz_constant(&arc0, &arc)?);
    }
    Ok(vec![
        Check::le("chord_arc_max", chord, FRAC_PI_2 + 1e-6 * scale),
        Check::le("bilipschitz_max", bilip, PI + 1e-6 * scale),
    ])
}

/// Polyline from `start` whose steps stay within `cone` of direction `dir`;
/// monotone along `dir`, hence embedded.
fn random_arc(rng: &mut ChaCha8Rng, start: P2, dir: f64, cone: f64, steps: usize) -> Vec<P2> {
    let mut pts = vec![start];
    for _ in 0..steps {
        let a = dir + rng.gen_range(-cone..cone);
        let len = rng.gen_range(0.1..1.0);
        let last = pts[pts.len() - 1];
        pts.push(last + P2::new(a.cos(), a.sin()) * len);
    }
    pts
}

fn random_form(rng: &mut ChaCha8Rng) -> ContactForm {
    match rng.gen_range(0..3) {
        0 => ContactForm::xdy(),
        1 => ContactForm::minus_ydx(),
        _ => ContactForm::rot(),
    }
}

const INSTANCES: usize = 128;

fn lemma_inequalities(scale: f64) -> Result<Vec<Check>> {
    let slack = 1e-9 * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c454d);

    // concatenation
    let mut concat = f64::NEG_INFINITY;
    for _ in 0..INSTANCES {
        let d1 = rng.gen_range(0.0..TAU);
        let d2 = d1 + rng.gen_range(100f64.to_radians()..260f64.to_radians());
        let cone = 40f64.to_radians();
        let steps = rng.gen_range(2..9);
        let l1 = random_arc(&mut rng, P2::zeros(), d1, cone, steps);
        let steps = rng.gen_range(2..9);
        let l2 = random_arc(&mut rng, P2::zeros(), d2, cone, steps);
        let (c1, c2) = (PlaneCurve::open(l1.clone())?, PlaneCurve::open(l2.clone())?);
        let k = chord_arc_constant(&c1)?.constant + chord_arc_constant(&c2)?.constant;
        let (cum1, cum2) = (c1.cumulative_lengths(), c2.cumulative_lengths());
        for i in 1..l1.len() {
            for j in 1..l2.len() {
                let (q1, q2) = (l1[i], l2[j]);
                let angle = (q1.dot(&q2) / (q1.norm() * q2.norm())).clamp(-1.0, 1.0).acos();
                let bound = k / (angle / 2.0).sin() * (q1 - q2).norm();
                concat = concat.max(cum1[i] + cum2[j] - bound);
            }
        }
    }

    // semitangent
    let mut semi = f64::NEG_INFINITY;
    for k in 0..INSTANCES {
        let curve = if k % 4 == 3 {
            let steps = rng.gen_range(5..15);
            random_star_polygon(&mut rng, steps)?.curve
        } else {
            let dir = rng.gen_range(0.0..TAU);
            let cone = rng.gen_range(20f64..85.0).to_radians();
            let steps = rng.gen_range(2..12);
            PlaneCurve::open(random_arc(&mut rng, P2::zeros(), dir, cone, steps))?
        };
        let c = chord_arc_constant(&curve)?.constant;
        let theta = min_corner_angle(&curve).angle;
        semi = semi.max(2.0 * (1.0 / c).asin() - theta);
    }

    // projection bounds
    let mut proj = f64::NEG_INFINITY;
    for _ in 0..INSTANCES {
        let form = random_form(&mut rng);
        let start = P2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let dir = rng.gen_range(0.0..TAU);
        let steps = rng.gen_range(2..8);
        let pts = random_arc(&mut rng, start, dir, 60f64.to_radians(), steps);
        let lifted = lift(&form, &PlaneCurve::open(pts)?, rng.gen_range(-1.0..1.0), 2)?.curve;
        proj = proj.max(-projection_bounds_check(&form, &lifted)?.margin());
    }

    // Whitney continuity
    let mut whitney = f64::NEG_INFINITY;
    for _ in 0..INSTANCES {
        let form = random_form(&mut rng);
        let start = P2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let dir = rng.gen_range(0.0..TAU);
        let steps = rng.gen_range(3..10);
        let pts = random_arc(&mut rng, start, dir, 60f64.to_radians(), steps);
        let l = PlaneCurve::open(pts.clone())?;
        let c = chord_arc_constant(&l)?.constant;
        let min_edge = (0..l.edge_count()).map(|e| l.edge_len(e)).fold(f64::INFINITY, f64::min);
        let mut eta = 0.05 * min_edge;
        let moved = loop {
            let q: Vec<P2> = pts
                .iter()
                .map(|p| {
                    let a = rng.gen_range(0.0..TAU);
                    p + P2::new(a.cos(), a.sin()) * (eta * rng.gen_range(0.0..1.0))
                })
                .collect();
            let lip = lipschitz(&pts, &q);
            if lip <= c {
                break q;
            }
            eta /= 2.0;
        };
        let lhs = (polyline_beta(&form, &pts) - polyline_beta(&form, &moved)).abs();
        let sup = pts.iter().zip(&moved).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        let norm_sup = pts.iter().chain(&moved).map(|p| form.beta(p).norm()).fold(0.0, f64::max);
        let d_sup = pts.iter().chain(&moved).map(|p| form.d_beta(p).abs()).fold(0.0, f64::max);
        let rhs = sup * (c * l.arc_length() + 2.0) * norm_sup.max(d_sup);
        whitney = whitney.max(lhs - rhs);
    }

    Ok(vec![
        Check::le("concatenation_excess", concat, slack),
        Check::le("semitangent_excess", semi, slack),
        Check::le("projection_excess", proj, slack),
        Check::le("whitney_excess", whitney, slack),
    ])
}

fn lipschitz(p: &[P2], q: &[P2]) -> f64 {
    let mut c = 0.0f64;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            c = c.max((q[j] - q[i]).norm() / (p[j] - p[i]).norm());
        }
    }
    c
}

fn polyline_beta(form: &ContactForm, pts: &[P2]) -> f64 {
    pts.windows(2).map(|w| edge_beta(form, &w[0], &w[1])).sum()
}

fn lift_area_oracle(scale: f64) -> Result<Vec<Check>> {
    let form = ContactForm::xdy();
    let mut rng = ChaCha8Rng::seed_from_u64(0x415245);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let steps = rng.gen_range(5..40);
        let poly = random_star_polygon(&mut rng, steps)?;
        let l = lift(&form, &poly.curve, 0.0, 1)?;
        worst = worst.max((l.closure_defect + poly.fan_area).abs());
    }
    Ok(vec![Check::le("closure_defect_vs_area", worst, 1e-9 * scale)])
}

fn correction_solver(scale: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x434f52);
    let (mut worst, mut non_monotone) = (0.0f64, 0);
    for k in 0..20 {
        let form = if k % 2 == 0 { ContactForm::xdy() } else { ContactForm::rot() };
        let rot = rng.gen_range(0.0..TAU);
        let half = rng.gen_range(0.3..1.0);
        let e_u = P2::new(rot.cos(), rot.sin()) * half;
        let e_v = P2::new(-rot.sin(), rot.cos()) * half;
        let centre = P2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let u0 = rng.gen_range(-0.3..0.3);
        let sq = CorrectionSquare::new(centre, e_u, e_v, u0 - 0.3, u0 + 0.3)?;
        let n = 40;
        let arc = PlaneCurve::open((0..=n).map(|j| sq.to_plane(u0, -1.0 + 2.0 * j as f64 / n as f64)).collect())?;
        let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        let closing = sq.closing_arc(&arc.vertex(0), &arc.vertex(n), side)?;
        let current = polyline_beta(&form, arc.vertices());
        let limit = line_integral_beta(&form, &closing)?.total;
        let target = current + rng.gen_range(0.05..0.5) * (limit - current);
        let sol = solve_correction(&sq, &form, &arc, &closing, target, 1e-2)?;
        worst = worst.max((sol.achieved - target).abs());
        if !sol.area_strictly_decreasing() {
            non_monotone += 1;
        }
    }
    Ok(vec![
        Check::le("achieved_error", worst, 1e-9 * scale),
        Check::eq("non_monotone_instances", non_monotone, 0),
    ])
}

/// Open Legendrian arcs for `dz + ρ² dφ` over wobbly ellipses inside the
/// annulus `0.15 < ρ < 0.95`.
fn legendrian_test_curves(rng: &mut ChaCha8Rng, count: usize, samples: usize) -> Result<Vec<SpaceCurve>> {
    let form = ContactForm::rot();
    (0..count)
        .map(|_| {
            let psi = rng.gen_range(0.0..TAU);
            let c = P2::new(psi.cos(), psi.sin()) * rng.gen_range(0.45..0.55);
            let (r1, r2) = (rng.gen_range(0.1..0.25), rng.gen_range(0.1..0.25));
            let tilt = rng.gen_range(0.0..TAU);
            let (wob, ph) = (rng.gen_range(0.0..0.03), rng.gen_range(0.0..TAU));
            let span = rng.gen_range(PI..1.8 * PI);
            let pts: Vec<P2> = (0..samples)
                .map(|k| {
                    let th = span * k as f64 / (samples - 1) as f64;
                    let local = P2::new(r1 * th.cos(), r2 * th.sin()) * (1.0 + wob * (3.0 * th + ph).cos());
                    let (s, co) = tilt.sin_cos();
                    c + P2::new(co * local.x - s * local.y, s * local.x + co * local.y)
                })
                .collect();
            Ok(lift(&form, &PlaneCurve::open(pts)?, rng.gen_range(-0.5..0.5), 1)?.curve)
        })
        .collect()
}

fn contactomorphisms(scale: f64) -> Result<Vec<Check>> {
    let form = ContactForm::rot();
    let mut rng = ChaCha8Rng::seed_from_u64(0x434f4e);
    let curves = legendrian_test_curves(&mut rng, 10, 2048)?;
    let mut input = 0.0f64;
    let mut spiral = 0.0f64;
    let mut frames = 0.0f64;
    for c in &curves {
        input = input.max(legendrian_residual(&form, c)?.relative_residual);
        let img = map_curve(c, log_spiral_contactomorphism)?;
        spiral = spiral.max(legendrian_residual(&form, &img)?.relative_residual);
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let img = map_curve(c, |p| cylinder_contact_isotopy(p, t))?;
            frames = frames.max(legendrian_residual(&form, &img)?.relative_residual);
        }
    }
    let mut branch = 0.0f64;
    for _ in 0..100 {
        let t = rng.gen_range(0.01..1.0);
        let p = from_cylindrical(t, rng.gen_range(-PI..PI), rng.gen_range(-1.0..1.0));
        let rho = p.xy().norm();
        let a = cylinder_outer_branch(&p, rho)?;
        let b = cylinder_inner_branch(&p, rho)?;
        branch = branch.max((a - b).norm());
    }
    Ok(vec![
        Check::le("input_residual", input, 1e-10 * scale),
        Check::le("log_spiral_image_residual", spiral, 1e-6 * scale),
        Check::le("isotopy_frame_residual", frames, 1e-6 * scale),
        Check::le("branch_continuity", branch, 1e-15 * scale),
    ])
}

fn invariant_cross_checks(_scale: f64) -> Result<Vec<Check>> {
    let (a, b) = hopf_pair(256)?;
    let link = linking_number(&a, &b)?;
    let mut out = vec![
        Check::eq("hopf_lk_abs", link.lk.abs(), 1),
        Check::eq("hopf_gauss_rounded_abs", link.gauss.round().abs() as i64, 1),
        Check::lt("hopf_gauss_minus_lk", (link.gauss - link.lk as f64).abs(), 0.5),
    ];
    let form = ContactForm::xdy();
    let fixture = figure_eight_fixture()?;
    let times = [0.0, 0.5, 1.0];
    let lifted = fixture.lifted_trace(&form, &times, 1e-2)?;
    let tb: Vec<i64> = lifted
        .frames
        .iter()
        .map(|f| thurston_bennequin(&form, f, TbOptions::default()).map(|r| r.tb))
        .collect::<Result<_>>()?;
    for (t, v) in times.iter().zip(&tb) {
        out.push(Check::eq(format!("bypass_tb_t{t}"), *v, tb[0]));
    }
    Ok(out)
}

fn negative_controls(scale: f64) -> Result<Vec<Check>> {
    let mut ratios = Vec::new();
    for k in 1..=7 {
        let eps = 0.5f64.powi(k);
        let c = cusp_curve(-eps, eps, (1 << (k + 3)) + 1)?;
        ratios.push(chord_arc_constant(&c)?.constant);
    }
    let growth = ratios.windows(2).map(|w| w[1] / w[0]).fold(f64::INFINITY, f64::min);
    let form = ContactForm::xdy();
    let vertical = SpaceCurve::open((0..=16).map(|k| P3::new(0.0, 0.0, k as f64 / 16.0)).collect())?;
    let verdict = legendrian_residual(&form, &vertical)?;
    let eps = angle_profile(&form, &vertical, &[0.1])?
        .iter()
        .map(|s| s.angle)
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        Check::ge("cusp_min_growth", growth, 1.5),
        Check::gt("vertical_relative_residual", verdict.relative_residual, crate::contact::LEGENDRIAN_TOL),
        Check::le("vertical_angle_error", (eps - FRAC_PI_2).abs(), 1e-12 * scale),
    ])
}
