use proptest::prelude::*;
use qthermo::dynamics::{gibbs_state, lindblad_rhs, thermal_bath_model, two_atom_model};
use qthermo::qstate::{bloch_to_density, partial_trace, pauli_expectations, product_state, qubit_entropy};
use qthermo::thermo::{
    bloch_rate_to_matrix, eigenvector_work_rate, entropy_production_p1_rate, entropy_rate,
    heat_capacity_fd, heat_capacity_p2, p1_rates, p2_rates_bloch, p2_rates_spectral,
    rotational_work_rate, temperature_p1, temperature_p2, torque_work_rate, Paradigm, ThermoValue,
};
use qthermo::{BlochState, ComplexMatrix, EffectiveField, Subsystem, Vec3};

const CASES: u32 = 1000;

fn vec3(range: f64) -> impl Strategy<Value = Vec3> {
    (-range..range, -range..range, -range..range).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

/// Uniform direction times a modulus in [lo, hi).
fn bloch_state(lo: f64, hi: f64) -> impl Strategy<Value = BlochState> {
    (-1.0f64..1.0, 0.0..std::f64::consts::TAU, lo..hi).prop_map(|(cos, phi, m)| {
        let sin = (1.0 - cos * cos).sqrt();
        BlochState::unchecked(Vec3::new(m * sin * phi.cos(), m * sin * phi.sin(), m * cos))
    })
}

fn field() -> impl Strategy<Value = EffectiveField> {
    (-1.0f64..1.0, 0.0..std::f64::consts::TAU, 0.2f64..3.0).prop_map(|(cos, phi, eps)| {
        let sin = (1.0 - cos * cos).sqrt();
        EffectiveField::new(eps * sin * phi.cos(), eps * sin * phi.sin(), eps * cos).unwrap()
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn rotational_work_forms_agree(b in bloch_state(0.01, 0.99), d in vec3(2.0), v in field()) {
        let w = p2_rates_bloch(&b, d, &v, Vec3::ZERO);
        let w1 = p1_rates(&b, d, &v, Vec3::ZERO).work;
        let forms = [
            w.work - w1,
            w.rotational,
            eigenvector_work_rate(&b, d, &v),
            torque_work_rate(&b, d, &v),
            rotational_work_rate(&b, d, &v),
        ];
        for x in &forms[1..] {
            prop_assert!(close(forms[0], *x, 1e-9), "{forms:?}");
        }
    }

    #[test]
    fn temperatures_related_by_cos_squared(b in bloch_state(0.001, 0.999), v in field()) {
        let cos = b.direction().unwrap().dot(v.direction());
        match (temperature_p1(&b, &v), temperature_p2(&b, &v)) {
            (ThermoValue::Finite(t1), ThermoValue::Finite(t2)) => {
                prop_assert!(close(t2, t1 * cos * cos, 1e-10));
                prop_assert!(t1.signum() == t2.signum() || t2 == 0.0);
            }
            (ThermoValue::Undefined, ThermoValue::Finite(t2)) => prop_assert_eq!(t2, 0.0),
            other => prop_assert!(false, "unexpected {other:?}"),
        }
    }

    #[test]
    fn spectral_and_bloch_heat_agree(b in bloch_state(0.0, 0.999), d in vec3(2.0), v in field()) {
        let bloch = p2_rates_bloch(&b, d, &v, Vec3::ZERO);
        let spectral = p2_rates_spectral(
            &bloch_to_density(&b),
            &bloch_rate_to_matrix(d),
            &v.hamiltonian(),
            &ComplexMatrix::zeros(2),
        ).unwrap();
        prop_assert!(close(bloch.heat, spectral.heat, 1e-9), "{} vs {}", bloch.heat, spectral.heat);
        prop_assert!(close(bloch.work, spectral.work, 1e-9));
    }

    #[test]
    fn first_law_per_sample(b in bloch_state(0.0, 0.999), d in vec3(2.0), v in field(), vd in vec3(1.0)) {
        let p1 = p1_rates(&b, d, &v, vd);
        let p2 = p2_rates_bloch(&b, d, &v, vd);
        let energy_rate = -d.dot(v.vector()) - b.vector().dot(vd);
        prop_assert!(close(p1.heat + p1.work, energy_rate, 1e-10));
        prop_assert!(close(p2.heat + p2.work, energy_rate, 1e-10));
        prop_assert!(close(p2.work - p1.work, p2.rotational, 1e-10));
    }

    #[test]
    fn incoherent_states_make_paradigms_equal(m in -0.999f64..0.999, dz in -2.0f64..2.0, v in field()) {
        prop_assume!(m.abs() > 1e-3);
        let b = BlochState::unchecked(v.direction().scale(m));
        let d = v.direction().scale(dz);
        let p1 = p1_rates(&b, d, &v, Vec3::ZERO);
        let p2 = p2_rates_bloch(&b, d, &v, Vec3::ZERO);
        prop_assert!(close(p1.heat, p2.heat, 1e-10));
        prop_assert!(close(p1.work, p2.work, 1e-10));
        let t1 = temperature_p1(&b, &v).finite().unwrap();
        let t2 = temperature_p2(&b, &v).finite().unwrap();
        prop_assert!(close(t1, t2, 1e-10));
    }

    #[test]
    fn p1_entropy_balance(b in bloch_state(0.01, 0.99), d in vec3(2.0), v in field()) {
        let ds = entropy_rate(&b, d).finite().unwrap();
        let q1 = p1_rates(&b, d, &v, Vec3::ZERO).heat;
        let sgen = entropy_production_p1_rate(&b, d, &v).finite().unwrap();
        if let Some(t1) = temperature_p1(&b, &v).finite() {
            let flux = q1 / t1;
            prop_assert!(close(ds, flux + sgen, 1e-9 * 1f64.max(flux.abs()).max(sgen.abs())));
        }
    }

    #[test]
    fn precession_produces_no_entropy(b in bloch_state(0.01, 0.99), v in field()) {
        let d = b.vector().cross(v.vector()).scale(2.0);
        let sgen = entropy_production_p1_rate(&b, d, &v).finite().unwrap();
        prop_assert!(sgen.abs() < 1e-12);
        prop_assert!(p1_rates(&b, d, &v, Vec3::ZERO).heat.abs() < 1e-12);
    }

    #[test]
    fn finite_difference_capacity_matches_p2(m in 0.05f64..0.95, cos in -0.95f64..0.95, v in field()) {
        let (e1, e2) = qthermo::qstate::frame_around(v.direction());
        let sin = (1.0 - cos * cos).sqrt();
        let dir = v.direction().scale(cos) + e1.scale(sin * 0.6) + e2.scale(sin * 0.8);
        let b = BlochState::unchecked(dir.scale(m));
        let fd = heat_capacity_fd(&b, &v, Paradigm::Entropic).finite().unwrap();
        prop_assert!(close(fd, heat_capacity_p2(&b, &v), 1e-4), "{fd} vs {}", heat_capacity_p2(&b, &v));
    }

    #[test]
    fn bath_generator_preserves_trace_and_hermiticity(b in bloch_state(0.0, 1.0), t_env in 0.0f64..20.0) {
        let m = thermal_bath_model(1.0, t_env, 1.0).unwrap();
        let out = lindblad_rhs(&m, &bloch_to_density(&b)).unwrap();
        prop_assert!(out.trace().norm() < 1e-12);
        prop_assert!(out.hermiticity_error() == 0.0);
    }

    #[test]
    fn reduced_rate_is_partial_trace_of_rate(a in bloch_state(0.0, 1.0), b in bloch_state(0.0, 1.0), g in 0.0f64..1.0) {
        let m = two_atom_model(1.0, g, 1.0).unwrap();
        let rho = product_state(&a, &b);
        let d = lindblad_rhs(&m, &rho).unwrap();
        let da = partial_trace(&d, Subsystem::A).unwrap();
        prop_assert!(da.trace().norm() < 1e-12);
        // at g = 0 each atom decays independently at γ₀ toward the ground state
        if g == 0.0 {
            let ba = Vec3::from(pauli_expectations(&da));
            let expected = Vec3::new(-0.5 * a.vector().x, -0.5 * a.vector().y, 1.0 - a.vector().z);
            prop_assert!((ba - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn gibbs_states_are_stationary() {
    let v = EffectiveField::along_z(1.0).unwrap();
    for t in [0.5, 1.0, 2.0, 10.0] {
        let model = thermal_bath_model(1.0, t, 1.0).unwrap();
        let rho = gibbs_state(&v, t).unwrap();
        let out = lindblad_rhs(&model, &rho).unwrap();
        assert!(out.frobenius_norm() < 1e-12);
        let b = pauli_expectations(&rho);
        assert!((b[2] - (1.0 / t).tanh()).abs() < 1e-12);
        assert!((qubit_entropy(b[2]) - qubit_entropy((1.0 / t).tanh())).abs() < 1e-12);
    }
}
