//! Linking numbers, writhe, Thurston–Bennequin numbers and transverse
//! push-offs of polygonal curves.
//!
//! Crossing sign convention: for a crossing in the projection along `d`
//! with over-strand direction `d₁` and under-strand direction `d₂`, the sign
//! is `sign det(d₁, d₂, d)`. Seen from the tip of `d`:
//!
//! ```text
//!   d₂ ↖   ↗ d₁           d₁ ↖   ↗ d₂
//!        ╲ ╱                   ╲ ╱
//!         ╱     +1              ╲      −1
//!        ╱ ╲                   ╱ ╲
//! ```
//!
//! (the unbroken stroke is the over strand).

mod crossings;
mod linking;
mod pushoff;
mod tb;

pub use crossings::{
    crossings, direction, projection_basis, write_crossings_csv, CrossingRecord, Over, DIRECTIONS,
};
pub use linking::{gauss_linking, linking_number, linking_number_along, segment_solid_angle, writhe, LinkReport, GAUSS_AGREEMENT};
pub use pushoff::{edge_alphas, transverse_pushoff, Collar};
pub use tb::{thurston_bennequin, TbOptions, TbReport};
