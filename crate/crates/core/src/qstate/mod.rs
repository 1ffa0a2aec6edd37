//! State algebra for qubits and qubit pairs.

pub mod bloch;
pub mod matrix;
pub mod partial;
pub mod spectrum;

pub use bloch::{
    bloch_to_density, density_to_bloch, frame_around, internal_energy, l1_coherence, pauli_expectations,
    polar_angles, BlochState, EffectiveField, PolarAngles, Vec3,
};
pub use matrix::{ComplexMatrix, C64};
pub use partial::{partial_trace, product_state, Subsystem};
pub use spectrum::{
    eigendecompose, eigendecompose_along, jacobi_eigen, qubit_entropy, von_neumann_entropy,
    Spectrum,
};
