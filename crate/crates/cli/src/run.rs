//! Integrate, annotate and emit files for one scenario.

use std::path::{Path, PathBuf};
use std::time::Instant;

use qthermo::dynamics::{integrate, Trajectory, POSITIVITY_FLOOR};
use qthermo::qstate::Subsystem;
use qthermo::thermo::{annotate_trajectory, ThermoLedger, Verdict};
use qthermo::units::UnitSystem;
use thiserror::Error;

use crate::config::{ConfigError, ScenarioConfig};
use crate::csv::write_csv;
use crate::report::{AuditRow, RunReport, SubsystemSummary, AUDIT_POSITIVITY, AUDIT_TRACE};
use crate::svg::{bloch_chart, ledger_chart, write_chart, Chart};

/// Largest tolerated |tr ρ − 1| over a trajectory.
pub const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl From<qthermo::Error> for RunError {
    fn from(e: qthermo::Error) -> Self {
        RunError::Config(e.into())
    }
}

#[derive(Debug, Clone)]
pub struct SubsystemLedger {
    /// Empty for single-qubit scenarios.
    pub label: String,
    pub subsystem: Option<Subsystem>,
    pub ledger: ThermoLedger,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub config: ScenarioConfig,
    /// `None` when integration was aborted.
    pub trajectory: Option<Trajectory>,
    pub ledgers: Vec<SubsystemLedger>,
    pub report: RunReport,
}

impl Simulation {
    pub fn ledger(&self, label: &str) -> Option<&ThermoLedger> {
        self.ledgers.iter().find(|l| l.label == label).map(|l| &l.ledger)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the config's `out_dir`.
    pub out_dir: Option<PathBuf>,
    pub no_svg: bool,
}

fn summary(label: &str, ledger: &ThermoLedger) -> SubsystemSummary {
    let totals = ledger.totals();
    SubsystemSummary {
        label: label.to_string(),
        samples: ledger.len(),
        delta_e: ledger.delta_energy(),
        delta_s: ledger.delta_entropy(),
        q1: totals.q1,
        w1: totals.w1,
        q2: totals.q2,
        w2: totals.w2,
        wprime: totals.wprime,
        final_t1: ledger.last().temp1,
        final_t2: ledger.last().temp2,
    }
}

/// Integrate and annotate without touching the file system.
pub fn simulate(cfg: &ScenarioConfig) -> Result<Simulation, RunError> {
    let started = Instant::now();
    cfg.validate()?;
    let model = cfg.build_model()?;
    let rho0 = cfg.initial_state()?;
    let integrator = cfg.integrator()?;
    let field = cfg.effective_field()?;

    let mut report = RunReport {
        scenario: cfg.name.clone(),
        subsystems: Vec::new(),
        audits: Vec::new(),
        error: None,
        notes: Vec::new(),
        files: Vec::new(),
        wall_clock: Default::default(),
    };

    let trajectory = match integrate(&model, &rho0, &integrator) {
        Ok(traj) => traj,
        Err(e @ qthermo::Error::PositivityBreach { t, min_eigenvalue }) => {
            report.audits.push(AuditRow {
                subsystem: String::new(),
                name: AUDIT_POSITIVITY.into(),
                verdict: Verdict::Fail,
                worst_error: -min_eigenvalue,
                tolerance: -POSITIVITY_FLOOR,
                worst_time: Some(t),
                note: Some("integration aborted".into()),
            });
            report.error = Some(e.to_string());
            report.wall_clock = started.elapsed();
            return Ok(Simulation {
                config: cfg.clone(),
                trajectory: None,
                ledgers: Vec::new(),
                report,
            });
        }
        Err(e) => return Err(e.into()),
    };

    let parts: Vec<(&str, Option<Subsystem>)> = if trajectory.dim() == 4 {
        vec![("A", Some(Subsystem::A)), ("B", Some(Subsystem::B))]
    } else {
        vec![("", None)]
    };
    let mut ledgers = Vec::new();
    for (label, subsystem) in parts {
        let ledger = annotate_trajectory(&trajectory, &field, cfg.environment(), subsystem)?;
        report.subsystems.push(summary(label, &ledger));
        for a in &ledger.audits {
            report.audits.push(AuditRow {
                subsystem: label.to_string(),
                name: a.name.to_string(),
                verdict: a.verdict,
                worst_error: a.worst_error,
                tolerance: a.tolerance,
                worst_time: a.worst_time,
                note: a.note.clone(),
            });
            if let Some(note) = &a.note {
                let who = if label.is_empty() { String::new() } else { format!("atom {label} ") };
                report.notes.push(format!("{who}{}: {note}", a.name));
            }
        }
        ledgers.push(SubsystemLedger {
            label: label.to_string(),
            subsystem,
            ledger,
        });
    }

    let lowest = trajectory.min_eigenvalue;
    report.audits.push(AuditRow {
        subsystem: String::new(),
        name: AUDIT_POSITIVITY.into(),
        verdict: Verdict::Pass,
        worst_error: (-lowest).max(0.0),
        tolerance: -POSITIVITY_FLOOR,
        worst_time: None,
        note: None,
    });
    let trace_error = trajectory.max_trace_error;
    report.audits.push(AuditRow {
        subsystem: String::new(),
        name: AUDIT_TRACE.into(),
        verdict: if trace_error <= TRACE_TOL { Verdict::Pass } else { Verdict::Fail },
        worst_error: trace_error,
        tolerance: TRACE_TOL,
        worst_time: None,
        note: None,
    });
    report.wall_clock = started.elapsed();
    Ok(Simulation {
        config: cfg.clone(),
        trajectory: Some(trajectory),
        ledgers,
        report,
    })
}

fn file_name(cfg: &ScenarioConfig, stem: &str, label: &str, ext: &str) -> String {
    let mut name = cfg.name.clone();
    if !stem.is_empty() {
        name.push('_');
        name.push_str(stem);
    }
    if !label.is_empty() {
        name.push('_');
        name.push_str(label);
    }
    format!("{name}.{ext}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Charts for one panel name.
fn panel_charts(panel: &str, cfg: &ScenarioConfig, ledgers: &[SubsystemLedger]) -> Vec<(String, Chart, Vec<String>)> {
    let all: Vec<(&str, &ThermoLedger)> = ledgers.iter().map(|l| (l.label.as_str(), &l.ledger)).collect();
    let title = |label: &str| {
        if label.is_empty() {
            format!("{} {panel}", cfg.name)
        } else {
            format!("{} {panel}, atom {label}", cfg.name)
        }
    };
    match panel {
        "heat-work" => ledgers
            .iter()
            .map(|l| {
                let (chart, notes) = ledger_chart(&[("", &l.ledger)], &["Q1", "W1", "Q2", "W2"], &title(&l.label), UnitSystem::ENERGY_LABEL);
                (file_name(cfg, panel, &l.label, "svg"), chart, notes)
            })
            .collect(),
        "bloch" => vec![(file_name(cfg, panel, "", "svg"), bloch_chart(&all, &title("")), Vec::new())],
        _ => {
            let (columns, y_label): (&[&str], &str) = match panel {
                "temperature" => (&["T1", "T2"], UnitSystem::TEMPERATURE_LABEL),
                "entropy" => (&["S", "Sgen1"], UnitSystem::ENTROPY_LABEL),
                _ => (&["coherence", "Bmod"], "dimensionless"),
            };
            let (chart, notes) = ledger_chart(&all, columns, &title(""), y_label);
            vec![(file_name(cfg, panel, "", "svg"), chart, notes)]
        }
    }
}

/// Run a scenario and write its CSV files, charts and `report.txt`.
pub fn run_scenario(cfg: &ScenarioConfig, opts: &RunOptions) -> Result<Simulation, RunError> {
    let mut sim = simulate(cfg)?;
    let dir = cfg.output_dir(opts.out_dir.as_deref());
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;

    for l in &sim.ledgers {
        let path = dir.join(file_name(cfg, "", &l.label, "csv"));
        write_csv(&l.ledger, &path).map_err(io_err(&path))?;
        sim.report.files.push(path);
    }
    if cfg.plots && !opts.no_svg && !sim.ledgers.is_empty() {
        for panel in &cfg.panels {
            for (name, chart, notes) in panel_charts(panel, cfg, &sim.ledgers) {
                let path = dir.join(name);
                let outcome = write_chart(&chart, &path).map_err(io_err(&path))?;
                sim.report.notes.extend(notes);
                sim.report.notes.extend(outcome.notes);
                if outcome.written {
                    sim.report.files.push(path);
                }
            }
        }
    }
    let path = dir.join("report.txt");
    std::fs::write(&path, sim.report.text()).map_err(io_err(&path))?;
    sim.report.files.push(path);
    Ok(sim)
}
