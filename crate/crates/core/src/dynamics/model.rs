//! Lindblad generators.
//!
//! The scenario models are written in the interaction picture, so their
//! Hamiltonian part is zero. Thermodynamic bookkeeping still uses the fixed
//! local field v⃗ = εẑ: precession about v̂ leaves Ḃ⃗·v⃗, |B⃗| and B̂·v⃗ unchanged,
//! so every heat and work rate is the same in either picture. Use
//! [`LindbladModel::with_hamiltonian`] to get the Schrödinger-picture model.

use crate::error::{Error, Result};
use crate::qstate::bloch::EffectiveField;
use crate::qstate::matrix::{lowering, pauli_z, raising, ComplexMatrix, I};
use crate::qstate::spectrum::eigendecompose;

/// One dissipation channel `rate · (LρL† − ½{L†L, ρ})`.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpChannel {
    pub operator: ComplexMatrix,
    pub rate: f64,
    l_dag_l: ComplexMatrix,
}

impl JumpChannel {
    pub fn new(operator: ComplexMatrix, rate: f64) -> Result<Self> {
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rate",
                value: rate,
                reason: "jump rates must be finite and non-negative",
            });
        }
        let l_dag_l = &operator.adjoint() * &operator;
        Ok(Self {
            operator,
            rate,
            l_dag_l,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LindbladModel {
    dim: usize,
    hamiltonian: ComplexMatrix,
    jumps: Vec<JumpChannel>,
    label: String,
}

impl LindbladModel {
    pub fn new(hamiltonian: ComplexMatrix, jumps: Vec<JumpChannel>, label: impl Into<String>) -> Result<Self> {
        let dim = hamiltonian.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedDimension(dim));
        }
        hamiltonian.check_hermitian()?;
        for j in &jumps {
            j.operator.expect_dim(dim)?;
        }
        Ok(Self {
            dim,
            hamiltonian,
            jumps,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[JumpChannel] {
        &self.jumps
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same dissipator with an added Hamiltonian term.
    pub fn with_hamiltonian(mut self, extra: &ComplexMatrix) -> Result<Self> {
        extra.expect_dim(self.dim)?;
        extra.check_hermitian()?;
        self.hamiltonian = &self.hamiltonian + extra;
        Ok(self)
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

/// Mean photon number 𝒩 = 1/(e^x − 1) for x = β_E ħω₀. `x = +∞` encodes a
/// zero-temperature bath.
pub fn planck_occupation(beta_h_omega0: f64) -> Result<f64> {
    if beta_h_omega0.is_nan() || beta_h_omega0 <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "beta_h_omega0",
            value: beta_h_omega0,
            reason: "must be positive (negative bath temperatures are not modeled)",
        });
    }
    if beta_h_omega0.is_infinite() {
        return Ok(0.0);
    }
    Ok(1.0 / beta_h_omega0.exp_m1())
}

/// β_E ħω₀ with ħω₀ = 2ε; +∞ at T_E = 0.
pub fn bath_exponent(t_env: f64, eps: f64) -> f64 {
    if t_env == 0.0 {
        f64::INFINITY
    } else {
        2.0 * eps / t_env
    }
}

/// Two-level atom in a thermal field: emission |e⟩→|g⟩ at γ₀(𝒩+1) and
/// absorption |g⟩→|e⟩ at γ₀𝒩.
///
/// The emission channel is fixed as the operator lowering the excited level
/// (index 1) to the ground level (index 0, the +v̂ pole). With this choice the
/// Gibbs state of H = −εσ_z is the fixed point.
pub fn thermal_bath_model(gamma0: f64, t_env: f64, eps: f64) -> Result<LindbladModel> {
    require_positive("gamma0", gamma0)?;
    require_positive("eps", eps)?;
    if !(t_env >= 0.0) || t_env.is_infinite() {
        return Err(Error::InvalidParameter {
            name: "T_env",
            value: t_env,
            reason: "bath temperature must be finite and non-negative",
        });
    }
    let n = planck_occupation(bath_exponent(t_env, eps))?;
    let mut jumps = vec![JumpChannel::new(lowering(), gamma0 * (n + 1.0))?];
    if n > 0.0 {
        jumps.push(JumpChannel::new(raising(), gamma0 * n)?);
    }
    LindbladModel::new(
        ComplexMatrix::zeros(2),
        jumps,
        format!("thermal_bath(gamma0={gamma0}, T_env={t_env}, eps={eps})"),
    )
}

/// Pure dephasing in the energy eigenbasis: L = σ_z at rate γ_φ/2, so that
/// coherences decay as e^{−γ_φ t}.
pub fn dephasing_model(gamma_phi: f64, eps: f64) -> Result<LindbladModel> {
    require_positive("gamma_phi", gamma_phi)?;
    require_positive("eps", eps)?;
    LindbladModel::new(
        ComplexMatrix::zeros(2),
        vec![JumpChannel::new(pauli_z(), 0.5 * gamma_phi)?],
        format!("dephasing(gamma_phi={gamma_phi}, eps={eps})"),
    )
}

fn on_a(op: &ComplexMatrix) -> ComplexMatrix {
    op.kron(&ComplexMatrix::identity(2))
}

fn on_b(op: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(op)
}

/// Two atoms sharing a zero-temperature environment with rate matrix
/// γ₀[[1, g], [g, 1]].
///
/// The double-sum dissipator is realized through the eigenchannels of the
/// rate matrix: (σ⁻_A ± σ⁻_B)/√2 at rates γ₀(1 ± g).
pub fn two_atom_model(gamma0: f64, g: f64, eps: f64) -> Result<LindbladModel> {
    require_positive("gamma0", gamma0)?;
    require_positive("eps", eps)?;
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            reason: "coupling ratio must lie in [0, 1]",
        });
    }
    let (la, lb) = (on_a(&lowering()), on_b(&lowering()));
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let symmetric = (&la + &lb).scale_real(s);
    let antisymmetric = (&la - &lb).scale_real(s);
    LindbladModel::new(
        ComplexMatrix::zeros(4),
        vec![
            JumpChannel::new(symmetric, gamma0 * (1.0 + g))?,
            JumpChannel::new(antisymmetric, gamma0 * (1.0 - g))?,
        ],
        format!("two_atom(gamma0={gamma0}, g={g}, eps={eps})"),
    )
}

/// Closed two-qubit exchange H = J(σ⁺_A σ⁻_B + σ⁻_A σ⁺_B).
pub fn exchange_unitary_model(j: f64) -> Result<LindbladModel> {
    if j == 0.0 || !j.is_finite() {
        return Err(Error::InvalidParameter {
            name: "J",
            value: j,
            reason: "exchange coupling must be finite and nonzero",
        });
    }
    let ab = &on_a(&raising()) * &on_b(&lowering());
    let h = (&ab + &ab.adjoint()).scale_real(j);
    LindbladModel::new(h, Vec::new(), format!("exchange_unitary(J={j})"))
}

/// Closed qubit precessing in the field: H = −v⃗·σ⃗.
pub fn precession_model(v: &EffectiveField) -> Result<LindbladModel> {
    LindbladModel::new(v.hamiltonian(), Vec::new(), "precession")
}

/// e^{−H/T}/Z for H = −v⃗·σ⃗; the ground-state projector at T = 0.
pub fn gibbs_state(v: &EffectiveField, t_env: f64) -> Result<ComplexMatrix> {
    if !(t_env >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "T_env",
            value: t_env,
            reason: "temperature must be non-negative",
        });
    }
    let spectrum = eigendecompose(&v.hamiltonian())?;
    // Boltzmann weights relative to the ground level keep large β finite.
    let ground = spectrum.min_value();
    let mut rho = ComplexMatrix::zeros(2);
    for (j, &energy) in spectrum.values.iter().enumerate() {
        let weight = if t_env == 0.0 {
            if energy == ground { 1.0 } else { 0.0 }
        } else {
            (-(energy - ground) / t_env).exp()
        };
        let psi = spectrum.vector(j);
        rho = rho.add_scaled(&ComplexMatrix::outer(&psi, &psi), weight);
    }
    let z = rho.trace().re;
    Ok(rho.scale_real(1.0 / z))
}

/// ρ̇ = −i[H, ρ] + Σ rate·(LρL† − ½{L†L, ρ}).
///
/// The result is projected onto its Hermitian part so that integration
/// preserves Hermiticity bit-for-bit.
pub fn lindblad_rhs(model: &LindbladModel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    rho.expect_dim(model.dim)?;
    let mut out = model.hamiltonian.commutator(rho).scale(-I);
    for ch in &model.jumps {
        if ch.rate == 0.0 {
            continue;
        }
        let l = &ch.operator;
        let sandwich = &(l * rho) * &l.adjoint();
        let anti = ch.l_dag_l.anticommutator(rho);
        let term = sandwich.add_scaled(&anti, -0.5);
        out = out.add_scaled(&term, ch.rate);
    }
    Ok(out.hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::bloch::{bloch_to_density, pauli_expectations, BlochState, Vec3};
    use crate::qstate::partial::product_state;
    use crate::qstate::matrix::C64;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bdot(model: &LindbladModel, b: [f64; 3]) -> Vec3 {
        let rho = bloch_to_density(&BlochState::from_array(b).unwrap());
        Vec3::from(pauli_expectations(&lindblad_rhs(model, &rho).unwrap()))
    }

    fn random_density(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let mut a = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let rho = &a * &a.adjoint();
        rho.scale_real(1.0 / rho.trace().re).hermitian_part()
    }

    #[test]
    fn planck_examples() {
        assert_eq!(planck_occupation(f64::INFINITY).unwrap(), 0.0);
        assert_abs_diff_eq!(planck_occupation(std::f64::consts::LN_2).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(planck_occupation(0.2).unwrap(), 4.516_655_566_126_995, epsilon = 1e-12);
        assert!(planck_occupation(0.0).is_err());
        assert!(planck_occupation(-1.0).is_err());
        assert!(planck_occupation(f64::NAN).is_err());
        let xs = [0.05, 0.2, 1.0, 3.0, 10.0];
        assert!(xs.windows(2).all(|w| planck_occupation(w[0]).unwrap() > planck_occupation(w[1]).unwrap()));
    }

    #[test]
    fn zero_temperature_bath_has_single_channel() {
        let m = thermal_bath_model(1.0, 0.0, 1.0).unwrap();
        assert_eq!(m.jumps().len(), 1);
        assert_eq!(m.jumps()[0].rate, 1.0);
        assert_eq!(m.jumps()[0].operator, lowering());
    }

    #[test]
    fn gibbs_state_is_fixed_point() {
        let v = EffectiveField::along_z(1.0).unwrap();
        for t in [0.0, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 50.0, 1e3] {
            let m = thermal_bath_model(1.3, t, 1.0).unwrap();
            let rhs = lindblad_rhs(&m, &gibbs_state(&v, t).unwrap()).unwrap();
            assert!(rhs.frobenius_norm() < 1e-12, "T = {t}: {rhs:?}");
        }
    }

    #[test]
    fn thermal_bath_bloch_rates() {
        let m = thermal_bath_model(1.0, 10.0, 1.0).unwrap();
        let d = bdot(&m, [0.2, 0.5, 0.4]);
        assert_abs_diff_eq!(d.x, -1.003_331_113_225_399, epsilon = 1e-12);
        assert_abs_diff_eq!(d.y, -2.508_327_783_063_497, epsilon = 1e-12);
        assert_abs_diff_eq!(d.z, -3.013_324_452_901_596, epsilon = 1e-12);
        // transverse decay coefficient γ₀(2𝒩+1)/2
        let d = bdot(&m, [1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(-d.x, 5.016_655_566_126_995, epsilon = 1e-12);
    }

    #[test]
    fn dephasing_examples() {
        let m = dephasing_model(0.7, 1.0).unwrap();
        let diag = ComplexMatrix::diagonal(&[0.8, 0.2]);
        assert_eq!(lindblad_rhs(&m, &diag).unwrap().frobenius_norm(), 0.0);
        let m = dephasing_model(1.0, 1.0).unwrap();
        let d = bdot(&m, [0.5, 0.0, 0.5]);
        assert_abs_diff_eq!(d.x, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.z, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn precession_about_field() {
        let v = EffectiveField::new(0.3, -0.2, 0.9).unwrap();
        let m = precession_model(&v).unwrap();
        let b = Vec3::new(0.2, 0.5, 0.4);
        let d = bdot(&m, b.to_array());
        let expected = b.cross(v.vector()).scale(2.0);
        assert!((d - expected).norm() < 1e-14);
        assert_abs_diff_eq!(d.dot(b), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn two_atom_ground_is_stationary() {
        let m = two_atom_model(1.0, 0.8, 1.0).unwrap();
        let gg = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lindblad_rhs(&m, &gg).unwrap().frobenius_norm(), 0.0);
        let rates: Vec<f64> = m.jumps().iter().map(|j| j.rate).collect();
        assert_abs_diff_eq!(rates[0], 1.8, epsilon = 1e-15);
        assert_abs_diff_eq!(rates[1], 0.2, epsilon = 1e-15);
    }

    /// Direct transcription of ½ Σ_kl γ_kl (2σ⁻ₖρσ⁺ₗ − σ⁺ₖσ⁻ₗρ − ρσ⁺ₖσ⁻ₗ).
    fn double_sum(gamma0: f64, g: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        let minus = [on_a(&lowering()), on_b(&lowering())];
        let gam = [[gamma0, g * gamma0], [g * gamma0, gamma0]];
        let mut out = ComplexMatrix::zeros(4);
        for k in 0..2 {
            for l in 0..2 {
                let sk = &minus[k];
                let sl_dag = minus[l].adjoint();
                let t1 = (&(sk * rho) * &sl_dag).scale_real(2.0);
                let pl = &sk.adjoint() * &minus[l];
                let t2 = &pl * rho;
                let t3 = rho * &pl;
                let term = &(&t1 - &t2) - &t3;
                out = out.add_scaled(&term, 0.5 * gam[k][l]);
            }
        }
        out
    }

    #[test]
    fn collective_channels_match_double_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for g in [0.0, 0.3, 0.8, 1.0] {
            let m = two_atom_model(1.0, g, 1.0).unwrap();
            for _ in 0..20 {
                let rho = random_density(&mut rng, 4);
                let diff = lindblad_rhs(&m, &rho).unwrap().max_abs_diff(&double_sum(1.0, g, &rho));
                assert!(diff < 1e-14, "g = {g}: {diff}");
            }
        }
    }

    #[test]
    fn decoupled_limit_is_two_independent_channels() {
        let m = two_atom_model(1.0, 0.0, 1.0).unwrap();
        let single = thermal_bath_model(1.0, 0.0, 1.0).unwrap();
        let a = BlochState::new(0.1, 0.4, -0.3).unwrap();
        let b = BlochState::new(-0.5, 0.2, 0.6).unwrap();
        let rho = product_state(&a, &b);
        let expected = &bloch_to_density(&a).kron(&lindblad_rhs(&single, &bloch_to_density(&b)).unwrap())
            + &lindblad_rhs(&single, &bloch_to_density(&a)).unwrap().kron(&bloch_to_density(&b));
        assert!(lindblad_rhs(&m, &rho).unwrap().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn exchange_model_basics() {
        let m = exchange_unitary_model(0.7).unwrap();
        assert!(m.jumps().is_empty());
        let gg = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lindblad_rhs(&m, &gg).unwrap().frobenius_norm(), 0.0);
        assert!(exchange_unitary_model(0.0).is_err());
    }

    #[test]
    fn output_is_traceless_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let v = EffectiveField::new(0.1, 0.2, 1.0).unwrap();
        let qubit_models = [
            thermal_bath_model(1.0, 2.5, 1.0).unwrap(),
            dephasing_model(0.4, 1.0).unwrap(),
            precession_model(&v).unwrap(),
            thermal_bath_model(1.0, 0.3, 1.0).unwrap().with_hamiltonian(&v.hamiltonian()).unwrap(),
        ];
        let pair_models = [two_atom_model(1.0, 0.8, 1.0).unwrap(), exchange_unitary_model(1.0).unwrap()];
        for _ in 0..50 {
            let rho = random_density(&mut rng, 2);
            for m in &qubit_models {
                let out = lindblad_rhs(m, &rho).unwrap();
                assert!(out.trace().norm() < 1e-12);
                assert_eq!(out.hermiticity_error(), 0.0);
            }
            let rho = random_density(&mut rng, 4);
            for m in &pair_models {
                let out = lindblad_rhs(m, &rho).unwrap();
                assert!(out.trace().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(thermal_bath_model(0.0, 1.0, 1.0).is_err());
        assert!(thermal_bath_model(1.0, -1.0, 1.0).is_err());
        assert!(dephasing_model(0.0, 1.0).is_err());
        assert!(two_atom_model(1.0, 1.2, 1.0).is_err());
        assert!(JumpChannel::new(lowering(), -0.1).is_err());
        assert!(lindblad_rhs(&two_atom_model(1.0, 0.5, 1.0).unwrap(), &ComplexMatrix::identity(2)).is_err());
    }
}
