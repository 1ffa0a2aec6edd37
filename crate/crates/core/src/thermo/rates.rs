//! Instantaneous heat, work and entropy-production rates.
//!
//! Paradigm 1 splits dE = −dB⃗·v⃗ − B⃗·dv⃗ into heat (state change) and work
//! (field change). Paradigm 2 writes E = −B (B̂·v⃗) and calls heat only the
//! part carried by dB, which is the part that changes the entropy. The
//! difference between the two work rates is the rotational work
//! δW′ = −B dB̂·v⃗ = C_l1 ε dθ.

use crate::error::Result;
use crate::qstate::bloch::{pauli_combination, BlochState, EffectiveField, Vec3};
use crate::qstate::matrix::ComplexMatrix;
use crate::qstate::spectrum::eigendecompose_along;
use crate::thermo::state_functions::{infinite_with_sign, MIXED_THRESHOLD, PURE_THRESHOLD};
use crate::thermo::value::ThermoValue;
use crate::units::K_B;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P1Rates {
    pub heat: f64,
    pub work: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P2Rates {
    pub heat: f64,
    pub work: f64,
    /// w2 − w1.
    pub rotational: f64,
    /// Set when B⃗ = 0 and the rates came from the spectral form.
    pub spectral_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRates {
    pub heat: f64,
    pub work: f64,
    /// A degenerate eigenspace of ρ that ρ̇ does not split. The heat rate is
    /// still well defined there (all λ̇ in the block coincide), so this is
    /// informational.
    pub unresolved_degeneracy: bool,
}

/// q1 = −Ḃ⃗·v⃗, w1 = −B⃗·v̇⃗.
pub fn p1_rates(b: &BlochState, b_dot: Vec3, v: &EffectiveField, v_dot: Vec3) -> P1Rates {
    P1Rates {
        heat: -b_dot.dot(v.vector()),
        work: -b.vector().dot(v_dot),
    }
}

/// ρ̇ = ½ Ḃ⃗·σ⃗.
pub fn bloch_rate_to_matrix(b_dot: Vec3) -> ComplexMatrix {
    pauli_combination(b_dot).scale_real(0.5)
}

/// Paradigm-2 rates from the Bloch form: q2 = −(dB/dt)(B̂·v⃗) with
/// dB/dt = B⃗·Ḃ⃗/B and w2 = dE/dt − q2. At B⃗ = 0 the quotient is 0/0 and the
/// spectral form is used instead.
pub fn p2_rates_bloch(b: &BlochState, b_dot: Vec3, v: &EffectiveField, v_dot: Vec3) -> P2Rates {
    let p1 = p1_rates(b, b_dot, v, v_dot);
    let energy_rate = p1.heat + p1.work;
    let modulus = b.modulus();
    if modulus < MIXED_THRESHOLD {
        let rho = crate::qstate::bloch::bloch_to_density(b);
        let spectral = p2_rates_spectral(
            &rho,
            &bloch_rate_to_matrix(b_dot),
            &v.hamiltonian(),
            &pauli_combination(-v_dot),
        )
        .expect("qubit spectral rates are total");
        return P2Rates {
            heat: spectral.heat,
            work: spectral.work,
            rotational: spectral.work - p1.work,
            spectral_fallback: true,
        };
    }
    let dir = b.vector().scale(1.0 / modulus);
    let d_modulus = dir.dot(b_dot);
    let heat = -d_modulus * dir.dot(v.vector());
    let work = energy_rate - heat;
    P2Rates {
        heat,
        work,
        rotational: work - p1.work,
        spectral_fallback: false,
    }
}

/// Paradigm-2 rates from the instantaneous spectral decomposition:
/// q2 = Σⱼ λ̇ⱼ ⟨ψⱼ|H|ψⱼ⟩ with λ̇ⱼ = ⟨ψⱼ|ρ̇|ψⱼ⟩, and
/// w2 = tr(Ḣρ) + tr(Hρ̇) − q2. Works for any dimension.
pub fn p2_rates_spectral(
    rho: &ComplexMatrix,
    rho_dot: &ComplexMatrix,
    h: &ComplexMatrix,
    h_dot: &ComplexMatrix,
) -> Result<SpectralRates> {
    let spectrum = eigendecompose_along(rho, rho_dot)?;
    let heat = (0..spectrum.dim())
        .map(|j| {
            let psi = spectrum.vector(j);
            rho_dot.sandwich(&psi, &psi).re * h.sandwich(&psi, &psi).re
        })
        .sum::<f64>();
    let energy_rate = h_dot.trace_product(rho).re + h.trace_product(rho_dot).re;
    Ok(SpectralRates {
        heat,
        work: energy_rate - heat,
        unresolved_degeneracy: spectrum.degenerate,
    })
}

/// dB̂/dt for B⃗ ≠ 0.
fn direction_rate(b: &BlochState, b_dot: Vec3) -> Option<(Vec3, Vec3)> {
    let modulus = b.modulus();
    if modulus < MIXED_THRESHOLD {
        return None;
    }
    let dir = b.vector().scale(1.0 / modulus);
    Some((dir, (b_dot - dir.scale(dir.dot(b_dot))).scale(1.0 / modulus)))
}

/// dθ/dt from the motion of B̂ relative to v̂; `None` at B⃗ = 0 or the poles.
pub fn polar_angle_rate(b: &BlochState, b_dot: Vec3, v: &EffectiveField) -> Option<f64> {
    let (dir, d_dir) = direction_rate(b, b_dot)?;
    let axis = v.direction();
    let sin = dir.cross(axis).norm();
    if sin == 0.0 {
        return None;
    }
    Some(-d_dir.dot(axis) / sin)
}

/// Rotational work rate in lever-arm form, C_l1 ε dθ/dt with C_l1 = B sinθ.
/// Zero at the poles.
pub fn rotational_work_rate(b: &BlochState, b_dot: Vec3, v: &EffectiveField) -> f64 {
    let Some(theta_rate) = polar_angle_rate(b, b_dot, v) else {
        return 0.0;
    };
    let dir = b.direction().expect("nonzero modulus");
    let lever = b.modulus() * dir.cross(v.direction()).norm();
    lever * v.epsilon() * theta_rate
}

/// Rotational work rate as −B dB̂/dt · v⃗.
pub fn eigenvector_work_rate(b: &BlochState, b_dot: Vec3, v: &EffectiveField) -> f64 {
    match direction_rate(b, b_dot) {
        Some((_, d_dir)) => -b.modulus() * d_dir.dot(v.vector()),
        None => 0.0,
    }
}

/// Rotational work rate as −M⃗·(dθ/dt) ê_φ with torque M⃗ = B⃗ × v⃗ and
/// ê_φ = v̂ × B̂ / |v̂ × B̂|.
pub fn torque_work_rate(b: &BlochState, b_dot: Vec3, v: &EffectiveField) -> f64 {
    let Some(theta_rate) = polar_angle_rate(b, b_dot, v) else {
        return 0.0;
    };
    let dir = b.direction().expect("nonzero modulus");
    let e_phi = v.direction().cross(dir).normalized().expect("off-pole");
    let torque = b.vector().cross(v.vector());
    -torque.dot(e_phi.scale(theta_rate))
}

/// Paradigm-1 internal entropy production rate
/// −k_B artanh(B) [B̂ − (v̂·B̂)v̂]·Ḃ⃗.
pub fn entropy_production_p1_rate(b: &BlochState, b_dot: Vec3, v: &EffectiveField) -> ThermoValue {
    let modulus = b.modulus();
    let Some(dir) = b.direction() else {
        return ThermoValue::Finite(0.0);
    };
    let axis = v.direction();
    let transverse = dir - axis.scale(axis.dot(dir));
    let projection = transverse.dot(b_dot);
    if modulus >= PURE_THRESHOLD {
        return infinite_with_sign(-projection);
    }
    ThermoValue::Finite(-K_B * modulus.atanh() * projection)
}

/// Boundary entropy production δQ (1/T − 1/T_E). Markers, zero
/// temperatures and T_E = 0 all give `Undefined`.
pub fn boundary_entropy_rate(q_rate: f64, t_sys: ThermoValue, t_env: f64) -> ThermoValue {
    match t_sys {
        ThermoValue::Finite(t) if t != 0.0 && t_env > 0.0 && t_env.is_finite() => {
            ThermoValue::Finite(q_rate * (1.0 / t - 1.0 / t_env))
        }
        _ => ThermoValue::Undefined,
    }
}
