//! Per-sample thermodynamic annotation of a trajectory, trapezoid
//! cumulatives and the first/second-law audits.

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::qstate::bloch::{l1_coherence, pauli_expectations, polar_angles, BlochState, EffectiveField, Vec3};
use crate::qstate::matrix::ComplexMatrix;
use crate::qstate::partial::{partial_trace, Subsystem};
use crate::qstate::spectrum::qubit_entropy;
use crate::thermo::rates::{boundary_entropy_rate, entropy_production_p1_rate, p1_rates, p2_rates_bloch};
use crate::thermo::state_functions::{
    entropy_rate, heat_capacity_p1, heat_capacity_p2, temperature_p1, temperature_p2, EnvironmentSpec,
};
use crate::thermo::value::ThermoValue;

/// Absolute tolerance (scaled by max(1, |terms|)) for rate-level identities.
pub const RATE_TOL: f64 = 1e-10;
/// Relative tolerance on cumulative first-law closure.
pub const CUMULATIVE_TOL: f64 = 1e-5;
/// Absolute tolerance on the Paradigm-2 Clausius equality.
pub const CLAUSIUS_TOL: f64 = 1e-5;
/// Tolerance on dS/dt = q1/𝒯 + sgen1.
pub const ENTROPY_BALANCE_TOL: f64 = 1e-9;

pub const AUDIT_FIRST_LAW_P1: &str = "first-law-p1";
pub const AUDIT_FIRST_LAW_P2: &str = "first-law-p2";
pub const AUDIT_CLAUSIUS_P2: &str = "clausius-p2";
pub const AUDIT_ENTROPY_BALANCE_P1: &str = "entropy-balance-p1";

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoSample {
    pub t: f64,
    pub bloch: Vec3,
    pub modulus: f64,
    /// Angle between B̂ and v̂; `None` at B⃗ = 0.
    pub theta: Option<f64>,
    pub energy: f64,
    pub entropy: f64,
    /// dE/dt = tr(Hρ̇), computed independently of the Bloch-form rates.
    pub energy_rate: f64,
    pub entropy_rate: ThermoValue,
    pub q1_rate: f64,
    pub w1_rate: f64,
    pub q2_rate: f64,
    pub w2_rate: f64,
    pub wprime_rate: f64,
    pub coherence: f64,
    pub temp1: ThermoValue,
    pub temp2: ThermoValue,
    pub cap1: ThermoValue,
    pub cap2: f64,
    pub sgen1_rate: ThermoValue,
    pub sgen_ht_rate: ThermoValue,
    /// The Paradigm-2 rates came from the spectral form (B⃗ = 0).
    pub spectral_fallback: bool,
}

impl ThermoSample {
    /// Annotate one qubit state ρ with generator output ρ̇ under a fixed field.
    pub fn from_qubit(
        t: f64,
        rho: &ComplexMatrix,
        rho_dot: &ComplexMatrix,
        v: &EffectiveField,
        env: Option<&EnvironmentSpec>,
    ) -> Result<Self> {
        rho.expect_dim(2)?;
        rho_dot.expect_dim(2)?;
        let h = v.hamiltonian();
        let b = BlochState::unchecked(Vec3::from(pauli_expectations(rho)));
        let b_dot = Vec3::from(pauli_expectations(rho_dot));

        let p1 = p1_rates(&b, b_dot, v, Vec3::ZERO);
        let p2 = p2_rates_bloch(&b, b_dot, v, Vec3::ZERO);
        let temp1 = temperature_p1(&b, v);
        let temp2 = temperature_p2(&b, v);
        let sgen_ht_rate = match env {
            Some(env) => boundary_entropy_rate(p2.heat, temp2, env.temperature()),
            None => ThermoValue::Undefined,
        };
        Ok(Self {
            t,
            bloch: b.vector(),
            modulus: b.modulus(),
            theta: polar_angles(&b, v).theta,
            energy: h.trace_product(rho).re,
            entropy: qubit_entropy(b.modulus().min(1.0)),
            energy_rate: h.trace_product(rho_dot).re,
            entropy_rate: entropy_rate(&b, b_dot),
            q1_rate: p1.heat,
            w1_rate: p1.work,
            q2_rate: p2.heat,
            w2_rate: p2.work,
            wprime_rate: p2.rotational,
            coherence: l1_coherence(rho, v)?,
            temp1,
            temp2,
            cap1: heat_capacity_p1(&b, v),
            cap2: heat_capacity_p2(&b, v),
            sgen1_rate: entropy_production_p1_rate(&b, b_dot, v),
            sgen_ht_rate,
            spectral_fallback: p2.spectral_fallback,
        })
    }
}

/// Running trapezoid integrals up to a sample. Intervals with a marker at
/// either end contribute nothing to `sgen1` and `sgen_ht`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Cumulative {
    pub q1: f64,
    pub w1: f64,
    pub q2: f64,
    pub w2: f64,
    pub wprime: f64,
    pub sgen1: f64,
    pub sgen_ht: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Audit {
    pub name: &'static str,
    pub verdict: Verdict,
    /// Largest absolute violation seen.
    pub worst_error: f64,
    /// Tolerance that applied to the worst violation.
    pub tolerance: f64,
    /// Time of the worst offending sample (cumulative checks report the end).
    pub worst_time: Option<f64>,
    pub note: Option<String>,
}

impl Audit {
    fn skipped(name: &'static str, tolerance: f64, note: String) -> Self {
        Self {
            name,
            verdict: Verdict::Skipped,
            worst_error: 0.0,
            tolerance,
            worst_time: None,
            note: Some(note),
        }
    }
}

/// Tracks the worst violation of `|err| ≤ tol·scale` over a set of checks.
struct Worst {
    ratio: f64,
    error: f64,
    tolerance: f64,
    time: Option<f64>,
}

impl Worst {
    fn new(tolerance: f64) -> Self {
        Self {
            ratio: 0.0,
            error: 0.0,
            tolerance,
            time: None,
        }
    }

    fn check(&mut self, err: f64, tolerance: f64, scale: f64, t: f64) {
        let ratio = if err.is_nan() { f64::INFINITY } else { err.abs() / (tolerance * scale) };
        if ratio > self.ratio || self.time.is_none() {
            self.ratio = ratio;
            self.error = err.abs();
            self.tolerance = tolerance * scale;
            self.time = Some(t);
        }
    }

    fn finish(self, name: &'static str) -> Audit {
        Audit {
            name,
            verdict: if self.ratio <= 1.0 { Verdict::Pass } else { Verdict::Fail },
            worst_error: self.error,
            tolerance: self.tolerance,
            worst_time: self.time,
            note: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ThermoLedger {
    pub samples: Vec<ThermoSample>,
    pub cumulative: Vec<Cumulative>,
    pub field: EffectiveField,
    pub environment: Option<EnvironmentSpec>,
    pub subsystem: Option<Subsystem>,
    pub audits: Vec<Audit>,
}

impl ThermoLedger {
    /// Build a ledger from already annotated samples (times increasing).
    pub fn from_samples(
        samples: Vec<ThermoSample>,
        field: EffectiveField,
        environment: Option<EnvironmentSpec>,
        subsystem: Option<Subsystem>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        let mut cumulative = Vec::with_capacity(samples.len());
        let mut acc = Cumulative::default();
        cumulative.push(acc);
        for w in samples.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let half = 0.5 * (b.t - a.t);
            acc.q1 += half * (a.q1_rate + b.q1_rate);
            acc.w1 += half * (a.w1_rate + b.w1_rate);
            acc.q2 += half * (a.q2_rate + b.q2_rate);
            acc.w2 += half * (a.w2_rate + b.w2_rate);
            acc.wprime += half * (a.wprime_rate + b.wprime_rate);
            if let (Some(x), Some(y)) = (a.sgen1_rate.finite(), b.sgen1_rate.finite()) {
                acc.sgen1 += half * (x + y);
            }
            if let (Some(x), Some(y)) = (a.sgen_ht_rate.finite(), b.sgen_ht_rate.finite()) {
                acc.sgen_ht += half * (x + y);
            }
            cumulative.push(acc);
        }
        let mut ledger = Self {
            samples,
            cumulative,
            field,
            environment,
            subsystem,
            audits: Vec::new(),
        };
        ledger.audits = vec![
            ledger.first_law_audit(AUDIT_FIRST_LAW_P1, |s| s.q1_rate + s.w1_rate, |c| c.q1 + c.w1),
            ledger.first_law_audit(AUDIT_FIRST_LAW_P2, |s| s.q2_rate + s.w2_rate, |c| c.q2 + c.w2),
            ledger.clausius_audit(),
            ledger.entropy_balance_audit(),
        ];
        Ok(ledger)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &ThermoSample {
        &self.samples[0]
    }

    pub fn last(&self) -> &ThermoSample {
        self.samples.last().expect("ledger is non-empty")
    }

    pub fn totals(&self) -> Cumulative {
        *self.cumulative.last().expect("ledger is non-empty")
    }

    pub fn delta_energy(&self) -> f64 {
        self.last().energy - self.first().energy
    }

    pub fn delta_entropy(&self) -> f64 {
        self.last().entropy - self.first().entropy
    }

    /// ∫ q2/T dt by trapezoid; `None` if any sample has a non-regular T.
    pub fn clausius_integral(&self) -> Option<f64> {
        let mut inverse = Vec::with_capacity(self.samples.len());
        for s in &self.samples {
            inverse.push(s.q2_rate / s.temp2.finite().filter(|t| *t != 0.0)?);
        }
        Some(
            self.samples
                .windows(2)
                .zip(inverse.windows(2))
                .map(|(s, r)| 0.5 * (s[1].t - s[0].t) * (r[0] + r[1]))
                .sum(),
        )
    }

    pub fn audit(&self, name: &str) -> Option<&Audit> {
        self.audits.iter().find(|a| a.name == name)
    }

    pub fn passed(&self) -> bool {
        self.audits.iter().all(|a| a.verdict != Verdict::Fail)
    }

    pub fn failed_audits(&self) -> impl Iterator<Item = &Audit> {
        self.audits.iter().filter(|a| a.verdict == Verdict::Fail)
    }

    fn first_law_audit(
        &self,
        name: &'static str,
        rate: impl Fn(&ThermoSample) -> f64,
        total: impl Fn(&Cumulative) -> f64,
    ) -> Audit {
        let mut worst = Worst::new(RATE_TOL);
        for s in &self.samples {
            let r = rate(s);
            let scale = 1f64.max(r.abs()).max(s.energy_rate.abs());
            worst.check(r - s.energy_rate, RATE_TOL, scale, s.t);
        }
        let delta = self.delta_energy();
        worst.check(delta - total(&self.totals()), CUMULATIVE_TOL, 1f64.max(delta.abs()), self.last().t);
        worst.finish(name)
    }

    fn clausius_audit(&self) -> Audit {
        let Some(integral) = self.clausius_integral() else {
            let marked = self
                .samples
                .iter()
                .find(|s| !s.temp2.is_regular())
                .map(|s| s.t)
                .unwrap_or(0.0);
            return Audit::skipped(
                AUDIT_CLAUSIUS_P2,
                CLAUSIUS_TOL,
                format!("temperature marker or zero temperature at t = {marked}"),
            );
        };
        let mut worst = Worst::new(CLAUSIUS_TOL);
        worst.check(self.delta_entropy() - integral, CLAUSIUS_TOL, 1.0, self.last().t);
        worst.finish(AUDIT_CLAUSIUS_P2)
    }

    fn entropy_balance_audit(&self) -> Audit {
        let mut worst = Worst::new(ENTROPY_BALANCE_TOL);
        let mut checked = 0usize;
        for s in &self.samples {
            let (Some(ds), Some(t1), Some(sgen)) = (s.entropy_rate.finite(), s.temp1.finite(), s.sgen1_rate.finite())
            else {
                continue;
            };
            if t1 == 0.0 {
                continue;
            }
            let flux = s.q1_rate / t1;
            let scale = 1f64.max(ds.abs()).max(flux.abs()).max(sgen.abs());
            worst.check(ds - flux - sgen, ENTROPY_BALANCE_TOL, scale, s.t);
            checked += 1;
        }
        if checked == 0 {
            return Audit::skipped(
                AUDIT_ENTROPY_BALANCE_P1,
                ENTROPY_BALANCE_TOL,
                "no sample with a defined temperature".to_string(),
            );
        }
        worst.finish(AUDIT_ENTROPY_BALANCE_P1)
    }
}

/// Annotate every sample of a trajectory under the fixed field `v`. A
/// dimension-4 trajectory needs `subsystem`; its reduced state and reduced
/// ρ̇ come from partial traces.
pub fn annotate_trajectory(
    traj: &Trajectory,
    v: &EffectiveField,
    env: Option<EnvironmentSpec>,
    subsystem: Option<Subsystem>,
) -> Result<ThermoLedger> {
    if traj.is_empty() {
        return Err(Error::EmptyTrajectory);
    }
    let reduce = |m: &ComplexMatrix| -> Result<ComplexMatrix> {
        match (m.dim(), subsystem) {
            (2, _) => Ok(m.clone()),
            (4, Some(keep)) => partial_trace(m, keep),
            (4, None) => Err(Error::MissingSubsystem),
            (d, _) => Err(Error::UnsupportedDimension(d)),
        }
    };
    let samples = traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.derivatives)
        .map(|((&t, rho), rho_dot)| {
            ThermoSample::from_qubit(t, &reduce(rho)?, &reduce(rho_dot)?, v, env.as_ref())
        })
        .collect::<Result<Vec<_>>>()?;
    let subsystem = if traj.dim() == 4 { subsystem } else { None };
    ThermoLedger::from_samples(samples, *v, env, subsystem)
}
