//! Explicit curve moves: Möbius bypass isotopies, corner rounding,
//! integral-correction flows and Legendrian lifts of planar isotopies.

mod correction;
mod isotopy;
mod mobius;
mod smoothing;
mod trace;

pub use correction::{
    correct_frame, correct_trace, correction_field, solve_correction, CorrectionField,
    CorrectionSolution, CorrectionSquare, Side, CORRECTION_TOL, CUTOFF_MARGIN,
};
pub use isotopy::{legendrian_isotopy_lift, FRAME_CLOSURE_TOL};
pub use mobius::{bypass_isotopy, mobius_arc, mobius_arc_inverse, DiskChart, ATTACH_TOL};
pub use smoothing::corner_round;
pub use trace::{FrameReport, IsotopyTrace};
