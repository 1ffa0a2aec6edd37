//! Fixed-step RK4 integration of the master equation.

use crate::dynamics::model::{lindblad_rhs, LindbladModel};
use crate::error::{Error, Result};
use crate::qstate::matrix::ComplexMatrix;
use crate::qstate::spectrum::eigendecompose;

/// Smallest eigenvalue tolerated along a trajectory before aborting.
pub const POSITIVITY_FLOOR: f64 = -1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    pub sample_stride: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_max: 10.0,
            sample_stride: 1,
        }
    }
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_max: f64, sample_stride: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            t_max,
            sample_stride,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: self.dt,
                reason: "time step must be positive",
            });
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "t_max",
                value: self.t_max,
                reason: "horizon must be positive",
            });
        }
        if self.sample_stride == 0 {
            return Err(Error::InvalidParameter {
                name: "sample_stride",
                value: 0.0,
                reason: "stride must be at least 1",
            });
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land exactly on `t_max`.
    pub fn steps(&self) -> usize {
        ((self.t_max / self.dt) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Sampled solution ρ(t) together with the generator output ρ̇(t) at each
/// sample.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix>,
    pub derivatives: Vec<ComplexMatrix>,
    pub model: LindbladModel,
    /// Smallest eigenvalue seen over all samples.
    pub min_eigenvalue: f64,
    /// Largest |tr ρ − 1| over all samples.
    pub max_trace_error: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn final_state(&self) -> &ComplexMatrix {
        self.states.last().expect("trajectory has at least one sample")
    }
}

fn min_eigenvalue(rho: &ComplexMatrix) -> Result<f64> {
    Ok(eigendecompose(rho)?.min_value())
}

fn rk4_step(model: &LindbladModel, rho: &ComplexMatrix, k1: &ComplexMatrix, h: f64) -> Result<ComplexMatrix> {
    let k2 = lindblad_rhs(model, &rho.add_scaled(k1, 0.5 * h))?;
    let k3 = lindblad_rhs(model, &rho.add_scaled(&k2, 0.5 * h))?;
    let k4 = lindblad_rhs(model, &rho.add_scaled(&k3, h))?;
    let sum = k1.add_scaled(&k2, 2.0).add_scaled(&k3, 2.0).add_scaled(&k4, 1.0);
    Ok(rho.add_scaled(&sum, h / 6.0))
}

/// Integrate with classic RK4 at fixed `dt`. No trace renormalization is
/// applied; drift is reported in [`Trajectory::max_trace_error`]. Aborts
/// with [`Error::PositivityBreach`] when a sample's smallest eigenvalue drops
/// below [`POSITIVITY_FLOOR`].
pub fn integrate(model: &LindbladModel, rho0: &ComplexMatrix, cfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    rho0.expect_dim(model.dim())?;
    rho0.check_density()?;

    let steps = cfg.steps();
    let capacity = steps / cfg.sample_stride + 2;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        states: Vec::with_capacity(capacity),
        derivatives: Vec::with_capacity(capacity),
        model: model.clone(),
        min_eigenvalue: f64::INFINITY,
        max_trace_error: 0.0,
    };

    let record = |traj: &mut Trajectory, t: f64, rho: &ComplexMatrix, rho_dot: &ComplexMatrix| -> Result<()> {
        let lowest = min_eigenvalue(rho)?;
        if lowest < POSITIVITY_FLOOR || !lowest.is_finite() {
            return Err(Error::PositivityBreach {
                t,
                min_eigenvalue: lowest,
            });
        }
        traj.min_eigenvalue = traj.min_eigenvalue.min(lowest);
        traj.max_trace_error = traj.max_trace_error.max((rho.trace().re - 1.0).abs());
        traj.times.push(t);
        traj.states.push(rho.clone());
        traj.derivatives.push(rho_dot.clone());
        Ok(())
    };

    let mut rho = rho0.hermitian_part();
    let mut rho_dot = lindblad_rhs(model, &rho)?;
    record(&mut traj, 0.0, &rho, &rho_dot)?;

    for step in 1..=steps {
        let t_prev = (step - 1) as f64 * cfg.dt;
        let t = if step == steps { cfg.t_max } else { step as f64 * cfg.dt };
        rho = rk4_step(model, &rho, &rho_dot, t - t_prev)?;
        rho_dot = lindblad_rhs(model, &rho)?;
        if step % cfg.sample_stride == 0 || step == steps {
            record(&mut traj, t, &rho, &rho_dot)?;
        }
    }
    Ok(traj)
}
