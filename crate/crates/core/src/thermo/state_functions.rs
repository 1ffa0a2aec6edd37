//! Temperatures, heat capacities and equilibrium states of a qubit.
//!
//! Both temperatures follow from dS/dB = −k_B artanh(B) taken along the
//! respective zero-work path:
//!
//! * Paradigm 1 (fixed Hamiltonian): 𝒯 = ε / (k_B (B̂·v̂) artanh B)
//! * Paradigm 2 (fixed B̂·v⃗):        T = ε (B̂·v̂) / (k_B artanh B)
//!
//! so T = 𝒯 cos²θ and the two always share a sign.

use crate::error::{Error, Result};
use crate::qstate::bloch::{BlochState, EffectiveField, Vec3};
use crate::thermo::value::ThermoValue;
use crate::units::K_B;

/// Bloch moduli above this are treated as pure (artanh taken as its limit).
pub const PURE_THRESHOLD: f64 = 1.0 - 1e-12;
/// Moduli below this are treated as the maximally mixed state.
pub const MIXED_THRESHOLD: f64 = 1e-15;
/// |cos θ| below this counts as orthogonal to the field.
pub const ORTHOGONAL_THRESHOLD: f64 = 1e-15;
/// Step in |B⃗| for the finite-difference heat capacity.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Paradigm {
    /// Heat = tr(H dρ), work = tr(dH ρ).
    Alicki,
    /// Heat = energy change carried by eigenvalue changes of ρ.
    Entropic,
}

/// Environment temperature T_E (energy units, k_B = 1). Zero is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentSpec {
    t_env: f64,
}

impl EnvironmentSpec {
    pub fn new(t_env: f64) -> Result<Self> {
        if !(t_env >= 0.0) || t_env.is_infinite() {
            return Err(Error::InvalidParameter {
                name: "T_env",
                value: t_env,
                reason: "environment temperature must be finite and non-negative",
            });
        }
        Ok(Self { t_env })
    }

    pub fn temperature(&self) -> f64 {
        self.t_env
    }

    /// β_E = 1/(k_B T_E); +∞ at T_E = 0.
    pub fn beta(&self) -> f64 {
        if self.t_env == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (K_B * self.t_env)
        }
    }
}

/// cos θ = B̂·v̂, or `None` for B⃗ = 0.
fn cos_theta(b: &BlochState, v: &EffectiveField) -> Option<f64> {
    b.direction().map(|d| d.dot(v.direction()).clamp(-1.0, 1.0))
}

pub fn temperature_p1(b: &BlochState, v: &EffectiveField) -> ThermoValue {
    let modulus = b.modulus();
    if modulus < MIXED_THRESHOLD {
        return ThermoValue::PosInfinity;
    }
    let cos = cos_theta(b, v).unwrap_or(0.0);
    if cos.abs() < ORTHOGONAL_THRESHOLD {
        return ThermoValue::Undefined;
    }
    if modulus >= PURE_THRESHOLD {
        return ThermoValue::Finite(0.0);
    }
    ThermoValue::Finite(v.epsilon() / (K_B * cos * modulus.atanh()))
}

pub fn temperature_p2(b: &BlochState, v: &EffectiveField) -> ThermoValue {
    let modulus = b.modulus();
    if modulus < MIXED_THRESHOLD {
        return ThermoValue::PosInfinity;
    }
    let cos = cos_theta(b, v).unwrap_or(0.0);
    if cos.abs() < ORTHOGONAL_THRESHOLD || modulus >= PURE_THRESHOLD {
        return ThermoValue::Finite(0.0);
    }
    ThermoValue::Finite(v.epsilon() * cos / (K_B * modulus.atanh()))
}

/// Paradigm-1 heat capacity 𝒞_ε, transcribed verbatim:
///
/// ```text
///            k_B B (1−B²) artanh²(B) (B⃗·v̂)²
/// 𝒞_ε = ─────────────────────────────────────────────
///        artanh(B) (B² − (B⃗·v̂)²)(1−B²) + B (B⃗·v̂)
/// ```
///
/// For incoherent states this evaluates to B·k_B(1−B²)artanh²B, i.e. B times
/// the equilibrium two-level capacity. [`heat_capacity_fd`] with
/// [`Paradigm::Alicki`] gives the path derivative for comparison.
pub fn heat_capacity_p1(b: &BlochState, v: &EffectiveField) -> ThermoValue {
    let modulus = b.modulus();
    if !(MIXED_THRESHOLD..PURE_THRESHOLD).contains(&modulus) {
        return ThermoValue::Finite(0.0);
    }
    let proj = b.vector().dot(v.direction());
    let a = modulus.atanh();
    let one_minus = 1.0 - modulus * modulus;
    let numerator = K_B * modulus * one_minus * a * a * proj * proj;
    let denominator = a * (modulus * modulus - proj * proj) * one_minus + modulus * proj;
    if denominator == 0.0 || !denominator.is_finite() {
        return ThermoValue::Undefined;
    }
    ThermoValue::Finite(numerator / denominator)
}

/// Paradigm-2 heat capacity k_B [x / cosh x]² with x = B̂·v⃗/(k_B T).
///
/// Substituting T gives x = artanh(B) for every state, so the capacity only
/// depends on the Bloch modulus; 1/cosh²(artanh B) = 1 − B².
pub fn heat_capacity_p2(b: &BlochState, _v: &EffectiveField) -> f64 {
    let modulus = b.modulus();
    if modulus >= PURE_THRESHOLD {
        return 0.0;
    }
    let x = modulus.atanh();
    K_B * x * x * (1.0 - modulus * modulus)
}

/// Central-difference dE/dT along the path that varies |B⃗| at fixed B̂ and
/// fixed v⃗ (which keeps B̂·v⃗ constant as well).
pub fn heat_capacity_fd(b: &BlochState, v: &EffectiveField, paradigm: Paradigm) -> ThermoValue {
    let Some(dir) = b.direction() else {
        return ThermoValue::Undefined;
    };
    let modulus = b.modulus();
    let (lo, hi) = (modulus - FD_STEP, modulus + FD_STEP);
    if lo <= 0.0 || hi >= 1.0 {
        return ThermoValue::Undefined;
    }
    let eval = |m: f64| -> Option<(f64, f64)> {
        let state = BlochState::unchecked(dir.scale(m));
        let energy = -state.vector().dot(v.vector());
        let t = match paradigm {
            Paradigm::Alicki => temperature_p1(&state, v),
            Paradigm::Entropic => temperature_p2(&state, v),
        };
        t.finite().map(|t| (energy, t))
    };
    match (eval(lo), eval(hi)) {
        (Some((e_lo, t_lo)), Some((e_hi, t_hi))) if t_hi != t_lo => {
            ThermoValue::Finite((e_hi - e_lo) / (t_hi - t_lo))
        }
        _ => ThermoValue::Undefined,
    }
}

/// Gibbs-state Bloch vector tanh(ε/k_B T_E) v̂.
pub fn equilibrium_bloch(t_env: f64, v: &EffectiveField) -> BlochState {
    let modulus = if t_env == 0.0 {
        1.0
    } else if t_env.is_infinite() {
        0.0
    } else {
        (v.epsilon() / (K_B * t_env)).tanh()
    };
    BlochState::unchecked(v.direction().scale(modulus))
}

/// Two-level equilibrium heat capacity k_B (ε/k_B T)² / cosh²(ε/k_B T).
pub fn equilibrium_heat_capacity(t: f64, eps: f64) -> f64 {
    let y = eps / (K_B * t);
    K_B * (y / y.cosh()).powi(2)
}

/// dS/dt = −k_B artanh(B) dB/dt.
pub fn entropy_rate(b: &BlochState, b_dot: Vec3) -> ThermoValue {
    let modulus = b.modulus();
    let Some(dir) = b.direction() else {
        return ThermoValue::Finite(0.0);
    };
    let d_modulus = dir.dot(b_dot);
    if modulus >= PURE_THRESHOLD {
        return infinite_with_sign(-d_modulus);
    }
    ThermoValue::Finite(-K_B * modulus.atanh() * d_modulus)
}

pub(crate) fn infinite_with_sign(x: f64) -> ThermoValue {
    if x > 0.0 {
        ThermoValue::PosInfinity
    } else if x < 0.0 {
        ThermoValue::NegInfinity
    } else {
        ThermoValue::Finite(0.0)
    }
}
