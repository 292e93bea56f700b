//! Explicit curves and maps: the cusp, the logarithmic spiral leaf, the
//! Lance–Thomas curve and its Legendrian unknot, the cylinder
//! contactomorphisms, and a few fixtures used by the tests and the suite.
//!
//! # Lance–Thomas squares
//!
//! Level `n` starts from the unit square `S₁`. A square of side `a_m` is split
//! by a cross of width `s_m a_m` into four squares of side
//! `a_{m+1} = (1 − s_m) a_m / 2`. The curve runs through the four subsquares
//! in the order bottom-left, bottom-right, top-left, top-right, always
//! entering a square at its bottom-left corner and leaving at its top-right
//! corner. The three connecting segments cross the arms of the cross:
//!
//! ```text
//!   +-----+   +-----+
//!   |  TL |   |  TR |
//!   |   --+-->+--   |      TR(TL) -> BL(TR)
//!   +-----+   +-----+
//!        ^-------.
//!   +-----+   +---\-+      TR(BR) -> BL(TL)
//!   |  BL |   |  BR |
//!   |   --+-->+--   |      TR(BL) -> BL(BR)
//!   +-----+   +-----+
//! ```
//!
//! The squares of `S_{n+1}` are crossed by their diagonals.

mod cusp;
mod lance_thomas;
mod maps;
mod shapes;
mod spiral;

pub use cusp::cusp_curve;
pub use lance_thomas::{
    default_s, fractal_bounds, lance_thomas_projection, lance_thomas_unknot, FractalBounds,
    LanceThomasLevel, LanceThomasUnknot, LevelBound, Square,
};
pub use maps::{
    cylinder_contact_isotopy, cylinder_inner_branch, cylinder_outer_branch, from_cylindrical,
    lift_homeomorphism, log_spiral_contactomorphism, log_spiral_inverse, map_curve,
    to_cylindrical, LiftedMap, PlaneMap,
};
pub use shapes::{
    figure_eight_fixture, hopf_pair, lemniscate_projection, lemniscate_unknot,
    random_star_polygon, BypassFixture, StarPolygon,
};
pub use spiral::{spiral_leaf, spiral_projection};
