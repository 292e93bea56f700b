use serde::{Deserialize, Serialize};

use crate::geometry::Curve;

/// Diagnostics attached to one frame of an isotopy. Fields that do not apply
/// to a trace are `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub time: f64,
    /// `∫ β` over the frame.
    pub beta_integral: Option<f64>,
    /// Chord-arc constant of the moved part of the frame.
    pub chord_arc: Option<f64>,
    pub relative_residual: Option<f64>,
    /// Largest displacement, relative to frame 0, of the vertices outside the
    /// moved span.
    pub fixed_drift: Option<f64>,
}

/// Frames of an isotopy sampled at increasing times in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotopyTrace<const D: usize> {
    pub times: Vec<f64>,
    pub frames: Vec<Curve<D>>,
    pub reports: Vec<FrameReport>,
}

impl<const D: usize> IsotopyTrace<D> {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn at(&self, t: f64) -> Option<&Curve<D>> {
        self.times.iter().position(|&s| s == t).map(|k| &self.frames[k])
    }
}
