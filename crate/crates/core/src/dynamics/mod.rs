//! Master-equation models and their time integration.

pub mod integrate;
pub mod model;

pub use integrate::{integrate, IntegratorConfig, Trajectory, POSITIVITY_FLOOR};
pub use model::{
    bath_exponent, dephasing_model, exchange_unitary_model, gibbs_state, lindblad_rhs,
    planck_occupation, precession_model, thermal_bath_model, two_atom_model, JumpChannel,
    LindbladModel,
};
