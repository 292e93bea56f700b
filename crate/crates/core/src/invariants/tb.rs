use crate::contact::{legendrian_residual, ContactForm, LEGENDRIAN_TOL};
use crate::error::{Error, Result};
use crate::geometry::{SpaceCurve, P3};

use super::crossings::{crossings, CrossingRecord};
use super::linking::linking_number;

/// Crossings whose strands are closer than this fraction of the diagonal in
/// z are rejected as ambiguous.
const GAP_TOL: f64 = 1e-9;
/// Push-off distance, as a fraction of the diagonal, for curves whose
/// projection has no crossings.
const FREE_PUSHOFF: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TbOptions {
    /// Reject curves whose relative Legendrian residual exceeds `tol`.
    pub require_legendrian: bool,
    pub tol: f64,
}

impl Default for TbOptions {
    fn default() -> Self {
        TbOptions {
            require_legendrian: true,
            tol: LEGENDRIAN_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TbReport {
    pub tb: i64,
    /// Writhe of the xy-projection.
    pub writhe: i64,
    /// `lk(L, L + ε·ẑ)`.
    pub pushoff_lk: i64,
    pub epsilon: f64,
    pub relative_residual: f64,
    pub crossings: Vec<CrossingRecord>,
}

/// Thurston–Bennequin number of a closed Legendrian curve: the writhe of its
/// xy-projection, checked against the linking number with its Reeb push-off
/// `L + ε·ẑ`, `ε` a tenth of the smallest z-gap at a crossing.
pub fn thurston_bennequin(form: &ContactForm, curve: &SpaceCurve, opts: TbOptions) -> Result<TbReport> {
    if !curve.is_closed() {
        return Err(Error::InvalidArgument("tb needs a closed curve".into()));
    }
    let verdict = legendrian_residual(form, curve)?;
    if opts.require_legendrian && !verdict.is_legendrian(opts.tol) {
        return Err(Error::Precondition(format!(
            "curve is not Legendrian (relative residual {:.3e})",
            verdict.relative_residual
        )));
    }
    curve.check_embedded()?;
    let cs = crossings(curve, None, &P3::z())?;
    let writhe: i64 = cs.iter().map(|c| c.sign as i64).sum();
    let diag = curve.bbox_diagonal();
    let min_gap = cs.iter().map(|c| c.gap).fold(f64::INFINITY, f64::min);
    if min_gap <= GAP_TOL * diag {
        return Err(Error::CrossingAmbiguity(format!(
            "strands at a crossing are only {min_gap:.3e} apart in z"
        )));
    }
    let epsilon = if cs.is_empty() {
        FREE_PUSHOFF * diag
    } else {
        min_gap / 10.0
    };
    let pushed = curve.map(|p| p + P3::new(0.0, 0.0, epsilon))?;
    let pushoff_lk = linking_number(curve, &pushed)?.lk;
    if pushoff_lk != writhe {
        return Err(Error::NonGeneric(format!(
            "writhe {writhe} disagrees with push-off linking number {pushoff_lk}"
        )));
    }
    Ok(TbReport {
        tb: writhe,
        writhe,
        pushoff_lk,
        epsilon,
        relative_residual: verdict.relative_residual,
        crossings: cs,
    })
}
