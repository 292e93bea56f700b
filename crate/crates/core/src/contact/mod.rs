//! Contact forms `α = dz + β`, line integrals, Legendrian verdicts and
//! contact Hamiltonian flows.

mod form;
mod hamiltonian;
mod integrate;
mod legendrian;

pub use form::{ContactForm, Domain, FormKind, FormSpec, FormValue, Monomial};
pub use hamiltonian::{flow, hamiltonian_field, rk4_step, FnField, Hamiltonian, HamiltonianField, VectorField};
pub use integrate::{
    alpha_sup, beta_sup, edge_beta, gauss_params, line_integral_alpha, line_integral_beta,
    BetaIntegral,
};
pub use legendrian::{angle_profile, legendrian_residual, AngleSample, LegendrianVerdict, LEGENDRIAN_TOL};
