//! Qubit open-system dynamics with heat/work bookkeeping.
//!
//! * [`qstate`]: density matrices, Bloch vectors, spectra, partial traces.
//! * [`dynamics`]: Lindblad models and a fixed-step RK4 integrator.
//! * [`thermo`]: heat, work, temperatures and entropy production under the
//!   Alicki (fixed-Hamiltonian) and entropic conventions.
//!
//! Units: ħ = k_B = 1, energies in ε = |v⃗|, times in 1/γ₀.

pub mod dynamics;
pub mod error;
pub mod qstate;
pub mod thermo;
pub mod units;

pub use error::{Error, Result};
pub use qstate::{BlochState, ComplexMatrix, EffectiveField, Subsystem, Vec3};
pub use thermo::{ThermoLedger, ThermoValue};
