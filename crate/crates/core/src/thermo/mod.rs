//! Heat, work, temperature, heat capacity and entropy production of a qubit
//! under the two bookkeeping conventions, plus trajectory ledgers.

pub mod ledger;
pub mod rates;
pub mod state_functions;
pub mod value;

pub use ledger::{
    annotate_trajectory, Audit, Cumulative, ThermoLedger, ThermoSample, Verdict, AUDIT_CLAUSIUS_P2,
    AUDIT_ENTROPY_BALANCE_P1, AUDIT_FIRST_LAW_P1, AUDIT_FIRST_LAW_P2, CLAUSIUS_TOL, CUMULATIVE_TOL,
    ENTROPY_BALANCE_TOL, RATE_TOL,
};
pub use rates::{
    bloch_rate_to_matrix, boundary_entropy_rate, eigenvector_work_rate, entropy_production_p1_rate,
    p1_rates, p2_rates_bloch, p2_rates_spectral, polar_angle_rate, rotational_work_rate,
    torque_work_rate, P1Rates, P2Rates, SpectralRates,
};
pub use state_functions::{
    entropy_rate, equilibrium_bloch, equilibrium_heat_capacity, heat_capacity_fd, heat_capacity_p1,
    heat_capacity_p2, temperature_p1, temperature_p2, EnvironmentSpec, Paradigm, FD_STEP,
    PURE_THRESHOLD,
};
pub use value::ThermoValue;
