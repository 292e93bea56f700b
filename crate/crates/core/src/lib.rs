//! Piecewise-linear Lavrentiev and Legendrian curves in contact 3-space.
//!
//! Curves are polylines in a planar chart ([`PlaneCurve`]) or in chart × ℝ
//! ([`SpaceCurve`]). Contact structures are kernels of `dz + β` where `β` is a
//! planar 1-form with `dβ ≠ 0` ([`ContactForm`]).
//!
//! The crate is organised by task:
//!
//! * [`geometry`]: arc length, chord-arc (Lavrentiev) constants, corner
//!   angles, bi-Lipschitz constants, resampling.
//! * [`contact`]: line integrals of `β` and `α = dz + β`, Legendrian
//!   verdicts, contact Hamiltonian fields and RK4 flows.
//! * [`lifting`]: Legendrian lifts of planar curves and projection bounds.
//! * [`moves`]: bypass isotopies, corner rounding, integral-correction
//!   squares and Legendrian lifts of planar isotopies.
//! * [`invariants`]: linking numbers, writhe, Thurston–Bennequin numbers and
//!   transverse push-offs.
//! * [`gallery`]: generators for the cusp, the logarithmic spiral leaf, the
//!   Lance–Thomas curve and its Legendrian unknot, and the explicit
//!   contactomorphisms of the cylinder.
//! * [`io`], [`svg`], [`suite`], [`cli`]: file formats, plotting, the
//!   acceptance checks and the command-line surface.

pub mod cli;
pub mod contact;
pub mod error;
pub mod gallery;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod lifting;
pub mod moves;
pub mod suite;
pub mod svg;

pub use contact::{ContactForm, Domain, LegendrianVerdict};
pub use error::{Error, Result};
pub use geometry::{ChordArcReport, Curve, CurvePoint, PlaneCurve, SpaceCurve, P2, P3};
