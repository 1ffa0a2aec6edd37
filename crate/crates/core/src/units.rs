//! Unit conventions.
//!
//! Everything in this crate is expressed with ħ = k_B = 1. Energies are
//! measured in units of the field modulus ε and times in units of 1/γ₀, so a
//! temperature value of 10 means k_B T / ε = 10.

/// Reduced Planck constant.
pub const HBAR: f64 = 1.0;

/// Boltzmann constant.
pub const K_B: f64 = 1.0;

/// Read-only record of the unit convention, for reports and plot labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub k_b: f64,
}

impl UnitSystem {
    pub const NATURAL: UnitSystem = UnitSystem { hbar: HBAR, k_b: K_B };

    pub const TIME_LABEL: &'static str = "γ₀t";
    pub const ENERGY_LABEL: &'static str = "energy / ε";
    pub const TEMPERATURE_LABEL: &'static str = "k_B T / ε";
    pub const ENTROPY_LABEL: &'static str = "S / k_B";
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::NATURAL
    }
}
