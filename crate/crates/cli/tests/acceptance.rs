//! Acceptance criteria. Each test prints one `criterion NN [PASS|FAIL]` line
//! straight to stdout (bypassing libtest capture) and then asserts.

use std::io::Write as _;
use std::time::{Duration, Instant};

use qthermo::dynamics::{
    integrate, lindblad_rhs, precession_model, thermal_bath_model, IntegratorConfig,
};
use qthermo::qstate::bloch_to_density;
use qthermo::thermo::{
    annotate_trajectory, bloch_rate_to_matrix, eigenvector_work_rate, equilibrium_bloch,
    equilibrium_heat_capacity, heat_capacity_fd, heat_capacity_p2, p1_rates, p2_rates_bloch,
    p2_rates_spectral, rotational_work_rate, temperature_p1, temperature_p2, torque_work_rate,
    Paradigm, ThermoLedger,
};
use qthermo::{BlochState, ComplexMatrix, EffectiveField, Vec3};
use qthermo_cli::registry::{builtin, builtins};
use qthermo_cli::{simulate, ModelKind, ScenarioConfig, Simulation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_SAMPLES: usize = 1000;
const RANDOM_SCENARIOS: usize = 50;

fn verdict(n: u32, name: &str, ok: bool, detail: String) {
    let line = format!("criterion {n:>2} [{}] {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn run(cfg: &ScenarioConfig) -> Simulation {
    let sim = simulate(cfg).unwrap_or_else(|e| panic!("{}: {e}", cfg.name));
    assert!(sim.trajectory.is_some(), "{}: {:?}", cfg.name, sim.report.error);
    sim
}

fn run_builtin(name: &str) -> Simulation {
    run(&builtin(name).unwrap())
}

fn random_bloch(rng: &mut ChaCha8Rng, max_modulus: f64) -> Vec3 {
    let cos: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let m = max_modulus * rng.gen::<f64>().cbrt();
    let sin = (1.0 - cos * cos).sqrt();
    Vec3::new(m * sin * phi.cos(), m * sin * phi.sin(), m * cos)
}

fn random_vec(rng: &mut ChaCha8Rng, range: f64) -> Vec3 {
    Vec3::new(rng.gen_range(-range..range), rng.gen_range(-range..range), rng.gen_range(-range..range))
}

fn random_field(rng: &mut ChaCha8Rng) -> EffectiveField {
    let d = random_bloch(rng, 1.0).normalized().unwrap_or(Vec3::Z);
    EffectiveField::from_vec(d.scale(rng.gen_range(0.2..3.0))).unwrap()
}

/// 50 dephasing/thermal-bath scenarios with random parameters and states,
/// k_B T_E ≤ 10 ε and default step.
fn random_scenarios() -> Vec<ScenarioConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    (0..RANDOM_SCENARIOS)
        .map(|k| {
            let b = random_bloch(&mut rng, 0.95).to_array();
            let mut cfg = builtin("fig2").unwrap();
            cfg.name = format!("random-{k}");
            cfg.bloch = Some(b);
            cfg.t_max = rng.gen_range(1.0..5.0);
            if rng.gen_bool(0.5) {
                cfg.gamma0 = Some(rng.gen_range(0.2..2.0));
                cfg.t_env = Some(if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.1..10.0) });
            } else {
                cfg.model = ModelKind::Dephasing;
                cfg.gamma0 = None;
                cfg.t_env = None;
                cfg.gamma_phi = Some(rng.gen_range(0.2..2.0));
            }
            cfg.validate().unwrap();
            cfg
        })
        .collect()
}

fn first_law_errors(ledger: &ThermoLedger) -> (f64, f64, f64) {
    let de = ledger.delta_energy();
    let t = ledger.totals();
    (de, (de - (t.q1 + t.w1)).abs(), (de - (t.q2 + t.w2)).abs())
}

#[test]
fn c01_gibbs_fixed_point() {
    let started = Instant::now();
    let v = EffectiveField::along_z(1.0).unwrap();
    let mut worst: f64 = 0.0;
    for t in [0.5f64, 1.0, 2.0, 10.0] {
        // e^{−βH}/Z for H = −σz
        let (up, down) = ((1.0 / t).exp(), (-1.0 / t).exp());
        let gibbs = ComplexMatrix::diagonal(&[up / (up + down), down / (up + down)]);
        let out = lindblad_rhs(&thermal_bath_model(1.0, t, v.epsilon()).unwrap(), &gibbs).unwrap();
        worst = worst.max(out.max_abs_diff(&ComplexMatrix::zeros(2)));
    }
    let elapsed = started.elapsed();
    verdict(
        1,
        "Gibbs state is a fixed point",
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max |L(ρ_G)| = {worst:.2e} (tol 1e-12), {:.3} s (limit 1 s)", elapsed.as_secs_f64()),
    );
}

#[test]
fn c02_thermalization_asymptote() {
    let started = Instant::now();
    let sim = run_builtin("fig2");
    let elapsed = started.elapsed();
    let ledger = sim.ledger("").unwrap();
    let last = ledger.last();
    let target = [0.0, 0.0, 0.1f64.tanh()];
    let dev = last
        .bloch
        .to_array()
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let t1 = last.temp1.finite().unwrap_or(f64::NAN);
    let t2 = last.temp2.finite().unwrap_or(f64::NAN);
    let rel1 = (t1 - 10.0).abs() / 10.0;
    let rel2 = (t2 - 10.0).abs() / 10.0;
    verdict(
        2,
        "fig2 thermalizes to tanh(0.1) ẑ",
        last.t == 8.0 && dev <= 1e-4 && rel1 <= 1e-3 && rel2 <= 1e-3 && elapsed < Duration::from_secs(5),
        format!(
            "t = {}, max component deviation {dev:.2e} (tol 1e-4), T1 = {t1:.6}, T2 = {t2:.6} (tol 0.1%), {:.3} s (limit 5 s)",
            last.t,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn c03_first_law_closure() {
    let mut worst_ratio: f64 = 0.0;
    let mut checked = 0;
    let scenarios: Vec<ScenarioConfig> = builtins().into_iter().chain(random_scenarios()).collect();
    for cfg in &scenarios {
        for l in &run(cfg).ledgers {
            let (de, e1, e2) = first_law_errors(&l.ledger);
            worst_ratio = worst_ratio.max(e1.max(e2) / (1e-5 * 1f64.max(de.abs())));
            checked += 1;
        }
    }
    verdict(
        3,
        "first law closes in both paradigms",
        worst_ratio <= 1.0 && checked >= 6 + RANDOM_SCENARIOS,
        format!("{checked} ledgers, worst |ΔE − (Q+W)| / (1e-5·max(1,|ΔE|)) = {worst_ratio:.3}"),
    );
}

#[test]
fn c04_clausius_equality() {
    let mut worst: f64 = 0.0;
    let (mut checked, mut skipped) = (0, 0);
    for cfg in builtins().into_iter().filter(|c| c.dim() == 2) {
        let sim = run(&cfg);
        let ledger = sim.ledger("").unwrap();
        match ledger.clausius_integral() {
            Some(integral) => {
                worst = worst.max((ledger.delta_entropy() - integral).abs());
                checked += 1;
            }
            None => skipped += 1,
        }
    }
    verdict(
        4,
        "∫q2/T dt reproduces ΔS",
        worst <= 1e-5 && checked == 3,
        format!("{checked} dim-2 ledgers ({skipped} with temperature markers skipped), worst |ΔS − ∫q2/T dt| = {worst:.2e} (tol 1e-5)"),
    );
}

#[test]
fn c05_rotational_work_identity_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst: f64 = 0.0;
    for _ in 0..RANDOM_SAMPLES {
        let b = BlochState::unchecked(random_bloch(&mut rng, 1.0));
        let d = random_vec(&mut rng, 2.0);
        let v = random_field(&mut rng);
        let w1 = p1_rates(&b, d, &v, Vec3::ZERO).work;
        let w2 = p2_rates_bloch(&b, d, &v, Vec3::ZERO).work;
        let forms = [
            w2 - w1,
            eigenvector_work_rate(&b, d, &v),
            torque_work_rate(&b, d, &v),
            rotational_work_rate(&b, d, &v),
        ];
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                worst = worst.max((forms[i] - forms[j]).abs());
            }
        }
    }
    verdict(
        5,
        "w2 − w1 = −B dB̂·v = torque form = C_l1 ε dθ/dt",
        worst <= 1e-9,
        format!("{RANDOM_SAMPLES} random triples, worst pairwise difference {worst:.2e} (tol 1e-9)"),
    );
}

#[test]
fn c06_temperature_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst: f64 = 0.0;
    let mut both_finite = 0;
    let mut sign_mismatch = 0;
    for _ in 0..RANDOM_SAMPLES {
        let b = BlochState::unchecked(random_bloch(&mut rng, 1.0));
        let v = random_field(&mut rng);
        let (Some(t1), Some(t2)) = (temperature_p1(&b, &v).finite(), temperature_p2(&b, &v).finite()) else {
            continue;
        };
        let cos = b.direction().unwrap().dot(v.direction());
        worst = worst.max((t2 - t1 * cos * cos).abs() / 1f64.max(t2.abs()));
        if t2 != 0.0 && t1.signum() != t2.signum() {
            sign_mismatch += 1;
        }
        both_finite += 1;
    }
    verdict(
        6,
        "T = 𝒯 cos²θ with equal signs",
        worst <= 1e-10 && sign_mismatch == 0 && both_finite > RANDOM_SAMPLES / 2,
        format!("{both_finite} states with both finite, worst |T − 𝒯cos²θ| / max(1,|T|) = {worst:.2e} (tol 1e-10), {sign_mismatch} sign mismatches"),
    );
}

#[test]
fn c07_spectral_bloch_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    for _ in 0..RANDOM_SAMPLES {
        let b = BlochState::unchecked(random_bloch(&mut rng, 1.0));
        let d = random_vec(&mut rng, 2.0);
        let v = random_field(&mut rng);
        let bloch = p2_rates_bloch(&b, d, &v, Vec3::ZERO);
        let spectral = p2_rates_spectral(
            &bloch_to_density(&b),
            &bloch_rate_to_matrix(d),
            &v.hamiltonian(),
            &ComplexMatrix::zeros(2),
        )
        .unwrap();
        worst = worst.max((bloch.heat - spectral.heat).abs()).max((bloch.work - spectral.work).abs());
    }
    verdict(
        7,
        "spectral and Bloch heat/work rates agree",
        worst <= 1e-9,
        format!("{RANDOM_SAMPLES} random samples, worst difference {worst:.2e} (tol 1e-9)"),
    );
}

#[test]
fn c08_fig2_work_signs() {
    let sim = run_builtin("fig2");
    let ledger = sim.ledger("").unwrap();
    let w1_max = ledger
        .samples
        .iter()
        .map(|s| s.w1_rate.abs())
        .chain(ledger.cumulative.iter().map(|c| c.w1.abs()))
        .fold(0.0, f64::max);
    let positive_until = ledger
        .samples
        .iter()
        .take_while(|s| s.w2_rate > 0.0)
        .last()
        .map(|s| s.t)
        .unwrap_or(-1.0);
    let w2 = ledger.totals().w2;
    verdict(
        8,
        "fig2: W1 ≡ 0, w2 > 0 initially, W2 < 0 at horizon",
        w1_max <= f64::EPSILON && positive_until > 0.0 && w2 < 0.0,
        format!("max |W1|, |w1_rate| = {w1_max:.1e}, w2_rate > 0 on [0, {positive_until}], W2(8) = {w2:.6}"),
    );
}

#[test]
fn c09_dephasing_narrative() {
    let sim = run_builtin("dephasing-demo");
    let t = sim.ledger("").unwrap().totals();
    verdict(
        9,
        "dephasing: Q1 = W1 = 0, Q2 = −W2 > 0",
        t.q1.abs() <= 1e-9 && t.w1.abs() <= 1e-9 && (t.q2 + t.w2).abs() <= 1e-9 && t.q2 > 0.0,
        format!("Q1 = {:.1e}, W1 = {:.1e}, Q2 = {:.6}, W2 = {:.6} (tol 1e-9)", t.q1, t.w1, t.q2, t.w2),
    );
}

#[test]
fn c10_two_atom_relaxation() {
    let mut cfg = builtin("fig4").unwrap();
    cfg.t_max = 40.0;
    let sim = run(&cfg);
    let rho = sim.trajectory.as_ref().unwrap().final_state();
    let ground = rho[(0, 0)].re;
    let w2_a = sim.ledger("A").unwrap().totals().w2;
    let b = sim.ledger("B").unwrap();
    let signs: Vec<f64> = b.samples.iter().map(|s| s.q2_rate).filter(|q| *q != 0.0).map(f64::signum).collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let crossing = b
        .samples
        .windows(2)
        .find(|w| w[0].q2_rate.signum() != w[1].q2_rate.signum())
        .map(|w| w[1].t);
    verdict(
        10,
        "fig4: relaxes to |gg⟩, W2(A) < 0, q2(B) changes sign once",
        ground >= 0.999 && w2_a < 0.0 && changes == 1,
        format!("⟨gg|ρ(40)|gg⟩ = {ground:.6} (min 0.999), W2(A) = {w2_a:.6}, q2(B) sign changes = {changes} (at t ≈ {crossing:?})"),
    );
}

#[test]
fn c11_schmidt_equal_entropies() {
    let sim = run_builtin("schmidt-demo");
    let (a, b) = (sim.ledger("A").unwrap(), sim.ledger("B").unwrap());
    let worst = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x.entropy - y.entropy).abs())
        .fold(0.0, f64::max);
    let spread = a.samples.iter().map(|s| s.entropy).fold(0.0, f64::max);
    verdict(
        11,
        "exchange unitary keeps S_A = S_B",
        worst <= 1e-8 && spread > 0.1,
        format!("{} samples, max |S_A − S_B| = {worst:.2e} (tol 1e-8), max S_A = {spread:.4}", a.len()),
    );
}

#[test]
fn c12_p1_entropy_balance() {
    let mut worst: f64 = 0.0;
    let mut defined = 0usize;
    let mut check = |ledger: &ThermoLedger| {
        for s in &ledger.samples {
            let (Some(ds), Some(t1), Some(sgen)) = (s.entropy_rate.finite(), s.temp1.finite(), s.sgen1_rate.finite()) else {
                continue;
            };
            if t1 == 0.0 {
                continue;
            }
            let flux = s.q1_rate / t1;
            let scale = 1f64.max(ds.abs()).max(flux.abs()).max(sgen.abs());
            worst = worst.max((ds - flux - sgen).abs() / scale);
            defined += 1;
        }
    };
    for cfg in builtins() {
        for l in &run(&cfg).ledgers {
            check(&l.ledger);
        }
    }

    let v = EffectiveField::along_z(1.0).unwrap();
    let rho0 = bloch_to_density(&BlochState::new(0.6, 0.0, 0.3).unwrap());
    let cfg = IntegratorConfig::new(1e-3, 10.0, 10).unwrap();
    let traj = integrate(&precession_model(&v).unwrap(), &rho0, &cfg).unwrap();
    let precession = annotate_trajectory(&traj, &v, None, None).unwrap();
    let sgen_max = precession
        .samples
        .iter()
        .map(|s| s.sgen1_rate.finite().unwrap().abs())
        .fold(0.0, f64::max);
    check(&precession);
    verdict(
        12,
        "dS/dt = q1/𝒯 + sgen1, sgen1 = 0 under precession",
        worst <= 1e-9 && sgen_max <= 1e-9,
        format!("{defined} defined samples, worst relative residual {worst:.2e} (tol 1e-9), max |sgen1| under precession {sgen_max:.2e}"),
    );
}

#[test]
fn c13_heat_capacities() {
    let v = EffectiveField::along_z(1.0).unwrap();
    let mut worst_eq: f64 = 0.0;
    for k in 1..=60 {
        let t = 0.1 * k as f64;
        let b = equilibrium_bloch(t, &v);
        worst_eq = worst_eq.max((heat_capacity_p2(&b, &v) - equilibrium_heat_capacity(t, 1.0)).abs());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0013);
    let mut worst_fd: f64 = 0.0;
    for _ in 0..RANDOM_SAMPLES {
        let dir = random_bloch(&mut rng, 1.0).normalized().unwrap();
        let v = random_field(&mut rng);
        let cos = dir.dot(v.direction());
        if cos.abs() < 0.05 {
            continue;
        }
        let b = BlochState::unchecked(dir.scale(rng.gen_range(0.05..0.95)));
        let fd = heat_capacity_fd(&b, &v, Paradigm::Entropic).finite().unwrap();
        let exact = heat_capacity_p2(&b, &v);
        worst_fd = worst_fd.max((fd - exact).abs() / exact);
    }
    verdict(
        13,
        "heat capacities: equilibrium form and finite differences",
        worst_eq <= 1e-10 && worst_fd <= 1e-4,
        format!("equilibrium max deviation {worst_eq:.2e} (tol 1e-10), finite-difference max relative deviation {worst_fd:.2e} (tol 1e-4)"),
    );
}

#[test]
fn c14_rk4_order() {
    let cfg = builtin("fig2").unwrap();
    let model = cfg.build_model().unwrap();
    let rho0 = cfg.initial_state().unwrap();
    // every run is sampled on the common grid of multiples of 4e-3
    let states = |dt: f64, stride: usize| -> Vec<ComplexMatrix> {
        integrate(&model, &rho0, &IntegratorConfig::new(dt, cfg.t_max, stride).unwrap())
            .unwrap()
            .states
    };
    let reference = states(1.25e-4, 32);
    let runs = [(4e-3, 1), (2e-3, 2), (1e-3, 4)];
    let errors: Vec<(f64, f64)> = runs
        .iter()
        .map(|&(dt, stride)| {
            let s = states(dt, stride);
            assert_eq!(s.len(), reference.len());
            let err = s.iter().zip(&reference).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
            (dt, err)
        })
        .collect();
    // least-squares slope of log(error) against log(dt)
    let pts: Vec<(f64, f64)> = errors.iter().map(|(dt, e)| (dt.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / pts.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    verdict(
        14,
        "RK4 self-convergence order",
        (slope - 4.0).abs() <= 0.2,
        format!(
            "errors {} against dt = 1.25e-4, fitted order {slope:.3} (target 4.0 ± 0.2)",
            errors.iter().map(|(dt, e)| format!("{dt:e}: {e:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    );
}

