//! The `leglab` command line.
//!
//! Exit codes: 0 success, 1 acceptance checks failed, 2 invalid input,
//! 3 numerical failure (non-generic projection, ambiguous crossing, root
//! bracketing), 64 usage error. With `--json` every command prints a list of
//! `{"check", "value", "bound", "pass"}` records on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::contact::{
    angle_profile, flow, hamiltonian_field, legendrian_residual, line_integral_beta, ContactForm,
    Hamiltonian, LEGENDRIAN_TOL,
};
use crate::error::{Error, Result};
use crate::gallery::{
    cusp_curve, cylinder_contact_isotopy, figure_eight_fixture, lance_thomas_projection,
    lance_thomas_unknot, lemniscate_unknot, log_spiral_contactomorphism, log_spiral_inverse,
    map_curve, spiral_leaf, default_s,
};
use crate::geometry::{chord_arc_constant, Curve, PlaneCurve, SpaceCurve, P2};
use crate::invariants::{linking_number, thurston_bennequin, write_crossings_csv, TbOptions};
use crate::io::{self, AnyCurve};
use crate::lifting::{lift_with_tol, CLOSURE_TOL, DEFAULT_SUBDIVISION};
use crate::moves::{
    bypass_isotopy, corner_round, correct_trace, legendrian_isotopy_lift, CorrectionSquare,
    DiskChart, CORRECTION_TOL,
};
use crate::suite::{self, Check};
use crate::svg::{self, Stroke};

pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "leglab", version, about = "Lavrentiev and Legendrian polylines in contact 3-space")]
pub struct Cli {
    /// Print the report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one of the built-in example curves.
    Gallery(GalleryArgs),
    /// Legendrian lift of a plane curve, or of every frame of a plane trace.
    Lift(LiftArgs),
    /// Legendrian residual and angle profile of a space curve.
    Verify(VerifyArgs),
    /// Chord-arc constant of a curve.
    Chordarc(ChordarcArgs),
    /// Bypass isotopy of a plane curve.
    Bypass(BypassArgs),
    /// Round one corner of a plane curve.
    Smooth(SmoothArgs),
    /// Integral correction of every frame of a plane trace.
    Correct(CorrectArgs),
    /// Thurston–Bennequin number of a closed Legendrian curve.
    Tb(TbArgs),
    /// Linking number of two closed space curves.
    Link(LinkArgs),
    /// Apply one of the cylinder contactomorphisms to a space curve.
    ApplyMap(ApplyMapArgs),
    /// Flow a space curve along a contact Hamiltonian field.
    Flow(FlowArgs),
    /// Run the acceptance checks.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GalleryName {
    Cusp,
    SpiralLeaf,
    LanceThomas,
    LanceThomasUnknot,
    Lemniscate,
    FigureEight,
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    pub name: GalleryName,
    #[arg(long)]
    pub out: PathBuf,
    /// Lance–Thomas level.
    #[arg(long, default_value_t = 3)]
    pub level: usize,
    /// Lance–Thomas height constant.
    #[arg(long = "K", default_value_t = 1.0)]
    pub k: f64,
    /// Sample count (cusp 257, spiral 4096, lemniscate 512).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, default_value_t = 0.5)]
    pub r0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r1: f64,
    /// SVG plot; for `lance-thomas` the four panels of levels 1 to 4.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// `xdy`, `minus_ydx`, `rot` or a form spec JSON file.
    #[arg(long)]
    pub form: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z0: f64,
    /// Pieces per edge (curves only).
    #[arg(long, default_value_t = DEFAULT_SUBDIVISION)]
    pub subdivision: usize,
    /// Relative closure threshold (curves only).
    #[arg(long, default_value_t = CLOSURE_TOL)]
    pub closure_tol: f64,
    /// Vertex held at height `z0` (traces only).
    #[arg(long, default_value_t = 0)]
    pub base: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub form: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = LEGENDRIAN_TOL)]
    pub tol: f64,
    /// Ball radii for the angle profile.
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ChordarcArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct BypassArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// First and last vertex of the attaching arc.
    #[arg(long, value_delimiter = ',', required = true)]
    pub attach: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 0.75, 1.0])]
    pub times: Vec<f64>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub vertex: usize,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    #[arg(long)]
    pub form: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Square centre `x,y`.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub centre: Vec<f64>,
    #[arg(long)]
    pub half: f64,
    /// Band `u₋,u₊` in square coordinates.
    #[arg(long, value_delimiter = ',', default_values_t = [-0.5, 0.5], allow_hyphen_values = true)]
    pub band: Vec<f64>,
    /// First and last vertex of the arc moved by the correction.
    #[arg(long, value_delimiter = ',', required = true)]
    pub span: Vec<usize>,
    #[arg(long, default_value_t = 1e-2)]
    pub step: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TbArgs {
    #[arg(long)]
    pub form: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Refuse curves whose relative residual exceeds `--tol`.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = LEGENDRIAN_TOL)]
    pub tol: f64,
    /// Write the crossings as CSV.
    #[arg(long)]
    pub crossings: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    LogSpiral,
    LogSpiralInverse,
    Cylinder,
}

#[derive(Debug, Args)]
pub struct ApplyMapArgs {
    #[arg(long)]
    pub map: MapName,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Isotopy time for `cylinder`.
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long)]
    pub form: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Terms `c,i,j,k` of `Σ c·xⁱyʲzᵏ`, separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub hamiltonian: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Acceptance,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    pub name: SuiteName,
    /// Run only this criterion.
    #[arg(long)]
    pub only: Option<usize>,
}

/// What a command reports: the checks and the human-readable text.
struct Outcome {
    checks: Vec<Check>,
    text: String,
    code: i32,
}

impl Outcome {
    fn new(checks: Vec<Check>) -> Self {
        let text = checks
            .iter()
            .map(|c| {
                if c.bound == c.value {
                    format!("{} = {}\n", c.check, num(c.value))
                } else {
                    format!("{} = {} (bound {}, {})\n", c.check, num(c.value), num(c.bound), if c.pass { "ok" } else { "FAIL" })
                }
            })
            .collect();
        Outcome { checks, text, code: 0 }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli.command, err) {
        Ok(o) => {
            let printed = if cli.json {
                io::to_json(&o.checks).map(|s| write!(out, "{s}"))
            } else {
                Ok(write!(out, "{}", o.text))
            };
            if let Err(e) = printed {
                let _ = writeln!(err, "error: {e}");
                return e.exit_code();
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("--{name} must be positive, got {v}")))
    }
}

fn input_file(p: &Path) -> Result<()> {
    if p.is_file() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("input {} does not exist", p.display())))
    }
}

fn output_file(p: &Path) -> Result<()> {
    match p.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Error::InvalidArgument(
            format!("output directory {} does not exist", dir.display()),
        )),
        _ => Ok(()),
    }
}

fn read_space(p: &Path) -> Result<SpaceCurve> {
    input_file(p)?;
    io::read_curve(p)
}

fn dispatch(cmd: &Command, err: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Gallery(a) => gallery(a),
        Command::Lift(a) => lift_cmd(a),
        Command::Verify(a) => verify(a),
        Command::Chordarc(a) => {
            input_file(&a.input)?;
            let r = match io::read_any_curve(&a.input)? {
                AnyCurve::Plane(c) => chord_arc_constant(&c)?,
                AnyCurve::Space(c) => chord_arc_constant(&c)?,
            };
            Ok(Outcome::new(vec![
                Check::measured("chord_arc", r.constant),
                Check::measured("vertex_chord_arc", r.vertex_constant),
                Check::measured("length", r.length),
            ]))
        }
        Command::Bypass(a) => bypass(a),
        Command::Smooth(a) => {
            input_file(&a.input)?;
            output_file(&a.out)?;
            positive("delta", a.delta)?;
            let c: PlaneCurve = io::read_curve(&a.input)?;
            let r = corner_round(&c, a.vertex, a.delta, a.samples)?;
            io::write_curve(&a.out, &r)?;
            Ok(Outcome::new(vec![
                Check::measured("chord_arc_before", chord_arc_constant(&c)?.constant),
                Check::measured("chord_arc_after", chord_arc_constant(&r)?.constant),
            ]))
        }
        Command::Correct(a) => correct(a),
        Command::Tb(a) => tb(a, err),
        Command::Link(a) => {
            let (c1, c2) = (read_space(&a.a)?, read_space(&a.b)?);
            let r = linking_number(&c1, &c2)?;
            let mut o = Outcome::new(vec![
                Check::eq("lk", r.lk, r.gauss.round() as i64),
                Check::measured("gauss", r.gauss),
            ]);
            o.text = format!("{}\n", r.lk);
            Ok(o)
        }
        Command::ApplyMap(a) => apply_map(a),
        Command::Flow(a) => flow_cmd(a),
        Command::Suite(a) => suite_cmd(a),
    }
}

fn write_svg(path: &Option<PathBuf>, text: impl FnOnce() -> Result<String>) -> Result<()> {
    if let Some(p) = path {
        output_file(p)?;
        io::write_text(p, &text()?)?;
    }
    Ok(())
}

fn gallery(a: &GalleryArgs) -> Result<Outcome> {
    output_file(&a.out)?;
    let curve: AnyCurve = match a.name {
        GalleryName::Cusp => AnyCurve::Space(cusp_curve(a.t0, a.t1, a.samples.unwrap_or(257))?),
        GalleryName::SpiralLeaf => AnyCurve::Space(spiral_leaf(a.r0, a.r1, a.samples.unwrap_or(4096))?),
        GalleryName::LanceThomas => AnyCurve::Plane(lance_thomas_projection(a.level, default_s)?.curve),
        GalleryName::LanceThomasUnknot => AnyCurve::Space(lance_thomas_unknot(a.level, a.k)?.curve),
        GalleryName::Lemniscate => AnyCurve::Space(lemniscate_unknot(a.samples.unwrap_or(512))?),
        GalleryName::FigureEight => AnyCurve::Plane(figure_eight_fixture()?.curve),
    };
    let file = curve.to_file();
    io::write_text(&a.out, &io::to_json(&file)?)?;
    write_svg(&a.svg, || {
        if a.name == GalleryName::LanceThomas {
            let panels = (1..=4)
                .map(|n| Ok(vec![Stroke::from(&lance_thomas_projection(n, default_s)?.curve)]))
                .collect::<Result<Vec<_>>>()?;
            Ok(svg::plot_panels(&panels))
        } else {
            Ok(svg::plot(&[match &curve {
                AnyCurve::Plane(c) => Stroke::from(c),
                AnyCurve::Space(c) => Stroke::from(c),
            }]))
        }
    })?;
    Ok(Outcome::new(vec![Check::measured("vertices", file.vertices.len() as f64)]))
}

fn is_trace(path: &Path) -> Result<bool> {
    let v: serde_json::Value = serde_json::from_str(&io::read_text(path)?)?;
    Ok(v.get("times").is_some())
}

fn lift_cmd(a: &LiftArgs) -> Result<Outcome> {
    input_file(&a.input)?;
    output_file(&a.out)?;
    positive("closure-tol", a.closure_tol)?;
    let form = io::load_form(&a.form)?;
    if is_trace(&a.input)? {
        let trace = io::read_trace::<2>(&a.input)?;
        let lifted = legendrian_isotopy_lift(&form, &trace, a.base, a.z0)?;
        io::write_trace(&a.out, &lifted)?;
        let max = |f: fn(&crate::moves::FrameReport) -> Option<f64>| {
            lifted.reports.iter().filter_map(f).fold(0.0, f64::max)
        };
        return Ok(Outcome::new(vec![
            Check::le("max_relative_residual", max(|r| r.relative_residual), LEGENDRIAN_TOL),
            Check::measured("max_fixed_drift", max(|r| r.fixed_drift)),
        ]));
    }
    let c: PlaneCurve = io::read_curve(&a.input)?;
    let r = lift_with_tol(&form, &c, a.z0, a.subdivision, a.closure_tol)?;
    io::write_curve(&a.out, &r.curve)?;
    Ok(Outcome::new(vec![
        Check::measured("closure_defect", r.closure_defect),
        Check::measured("closed", if r.curve.is_closed() { 1.0 } else { 0.0 }),
    ]))
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    positive("tol", a.tol)?;
    for &r in &a.radii {
        positive("radii", r)?;
    }
    let form = io::load_form(&a.form)?;
    let c = read_space(&a.input)?;
    let v = legendrian_residual(&form, &c)?;
    let mut checks = vec![
        Check::le("relative_residual", v.relative_residual, a.tol),
        Check::measured("residual", v.residual),
    ];
    if !a.radii.is_empty() {
        let prof = angle_profile(&form, &c, &a.radii)?;
        for &r in &a.radii {
            let worst = prof
                .iter()
                .filter(|s| s.radius == r)
                .map(|s| s.angle)
                .fold(0.0, f64::max);
            checks.push(Check::measured(format!("angle_r{r}"), worst));
        }
    }
    Ok(Outcome::new(checks))
}

fn pair<T: Copy>(v: &[T], name: &str) -> Result<(T, T)> {
    match v {
        [i, j] => Ok((*i, *j)),
        _ => Err(Error::InvalidArgument(format!("--{name} needs two comma-separated values"))),
    }
}

fn num(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e7) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn bypass(a: &BypassArgs) -> Result<Outcome> {
    input_file(&a.input)?;
    output_file(&a.out)?;
    let c: PlaneCurve = io::read_curve(&a.input)?;
    let (i0, i1) = pair(&a.attach, "attach")?;
    if i1 >= c.len() {
        return Err(Error::InvalidArgument(format!("attach vertex {i1} out of range")));
    }
    let chart = DiskChart::over_segment(c.vertex(i0), c.vertex(i1))?;
    let trace = bypass_isotopy(&chart, &c, (i0, i1), &a.times)?;
    io::write_trace(&a.out, &trace)?;
    write_svg(&a.svg, || Ok(svg::plot_trace(&trace)))?;
    let chord = trace.reports.iter().filter_map(|r| r.chord_arc).fold(0.0, f64::max);
    Ok(Outcome::new(vec![Check::measured("max_moved_chord_arc", chord)]))
}

fn correct(a: &CorrectArgs) -> Result<Outcome> {
    input_file(&a.input)?;
    output_file(&a.out)?;
    positive("half", a.half)?;
    positive("step", a.step)?;
    let form = io::load_form(&a.form)?;
    let trace = io::read_trace::<2>(&a.input)?;
    let (cx, cy) = pair(&a.centre, "centre")?;
    let (u_minus, u_plus) = pair(&a.band, "band")?;
    let square = CorrectionSquare::axis_aligned(P2::new(cx, cy), a.half, u_minus, u_plus)?;
    let fixed = correct_trace(&trace, &square, &form, pair(&a.span, "span")?, a.step)?;
    io::write_trace(&a.out, &fixed)?;
    write_svg(&a.svg, || Ok(svg::plot_trace(&fixed)))?;
    let base = line_integral_beta(&form, &fixed.frames[0])?.total;
    let mut drift: f64 = 0.0;
    for f in &fixed.frames {
        drift = drift.max((line_integral_beta(&form, f)?.total - base).abs());
    }
    Ok(Outcome::new(vec![Check::le("max_integral_drift", drift, CORRECTION_TOL)]))
}

fn tb(a: &TbArgs, err: &mut dyn Write) -> Result<Outcome> {
    positive("tol", a.tol)?;
    let form = io::load_form(&a.form)?;
    let c = read_space(&a.input)?;
    if let Some(p) = &a.crossings {
        output_file(p)?;
    }
    let opts = TbOptions { require_legendrian: a.strict, tol: a.tol };
    let r = thurston_bennequin(&form, &c, opts)?;
    if r.relative_residual > a.tol {
        let _ = writeln!(
            err,
            "warning: relative Legendrian residual {:.3e} exceeds {:.1e}; tb is the writhe of the projection",
            r.relative_residual, a.tol
        );
    }
    if let Some(p) = &a.crossings {
        let file = std::fs::File::create(p).map_err(|source| Error::Io { path: p.clone(), source })?;
        write_crossings_csv(&r.crossings, file)?;
    }
    let mut o = Outcome::new(vec![
        Check::eq("tb", r.tb, r.pushoff_lk),
        Check::measured("crossings", r.crossings.len() as f64),
        Check::measured("relative_residual", r.relative_residual),
    ]);
    o.text = format!("{}\n", r.tb);
    Ok(o)
}

fn apply_map(a: &ApplyMapArgs) -> Result<Outcome> {
    output_file(&a.out)?;
    let c = read_space(&a.input)?;
    let img = match a.map {
        MapName::LogSpiral => map_curve(&c, log_spiral_contactomorphism)?,
        MapName::LogSpiralInverse => map_curve(&c, log_spiral_inverse)?,
        MapName::Cylinder => map_curve(&c, |p| cylinder_contact_isotopy(p, a.t))?,
    };
    io::write_curve(&a.out, &img)?;
    let form = ContactForm::rot();
    Ok(Outcome::new(vec![
        Check::measured("input_relative_residual", legendrian_residual(&form, &c)?.relative_residual),
        Check::measured("output_relative_residual", legendrian_residual(&form, &img)?.relative_residual),
    ]))
}

fn parse_hamiltonian(s: &str) -> Result<Hamiltonian> {
    let terms = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v: Vec<f64> = t
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Format(format!("bad number `{x}` in Hamiltonian"))))
                .collect::<Result<_>>()?;
            <[f64; 4]>::try_from(v).map_err(|_| Error::Format(format!("Hamiltonian term `{t}` needs c,i,j,k")))
        })
        .collect::<Result<Vec<_>>>()?;
    Hamiltonian::poly(&terms)
}

fn flow_cmd(a: &FlowArgs) -> Result<Outcome> {
    output_file(&a.out)?;
    positive("step", a.step)?;
    let form = io::load_form(&a.form)?;
    let h = parse_hamiltonian(&a.hamiltonian)?;
    let c = read_space(&a.input)?;
    let field = hamiltonian_field(&form, h);
    let moved = Curve::new(flow(&field, c.vertices(), a.t, a.step)?, c.is_closed())?;
    io::write_curve(&a.out, &moved)?;
    Ok(Outcome::new(vec![
        Check::measured("input_relative_residual", legendrian_residual(&form, &c)?.relative_residual),
        Check::measured("output_relative_residual", legendrian_residual(&form, &moved)?.relative_residual),
    ]))
}

fn suite_cmd(a: &SuiteArgs) -> Result<Outcome> {
    let SuiteName::Acceptance = a.name;
    let scale = suite::tolerance_scale()?;
    let reports = match a.only {
        Some(id) => vec![suite::run_criterion(id, scale)
            .ok_or_else(|| Error::InvalidArgument(format!("no criterion {id}")))?],
        None => suite::run_all(scale),
    };
    let mut checks = Vec::new();
    let mut text = String::new();
    for r in &reports {
        text.push_str(&r.summary());
        text.push('\n');
        if let Some(e) = &r.error {
            checks.push(Check { check: format!("{}/error: {e}", r.name), value: 1.0, bound: 0.0, pass: false });
        }
        checks.extend(r.checks.iter().map(|c| Check { check: format!("{}/{}", r.name, c.check), ..c.clone() }));
    }
    let all = reports.iter().all(|r| r.pass());
    let code = if all { 0 } else { EXIT_CHECKS_FAILED };
    Ok(Outcome { checks, text, code })
}
