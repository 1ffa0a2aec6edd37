use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qthermo_cli::config::resolve_scenario;
use qthermo_cli::registry::{builtin, builtin_names};
use qthermo_cli::report::{audit_report, exit_code};
use qthermo_cli::{run_scenario, simulate, RunOptions, ScenarioConfig};

#[derive(Parser)]
#[command(name = "qthermo", version, about = "Qubit heat/work ledgers under two thermodynamic paradigms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write CSV, SVG and report files.
    Run {
        /// Built-in scenario name or path to a JSON config.
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        tmax: Option<f64>,
        /// Output directory (default: the config's out_dir, else out/<name>).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_svg: bool,
    },
    /// List the built-in scenarios.
    List,
    /// Run scenarios without writing files and print the audit table.
    Audit {
        /// Scenario names or config paths (default: every built-in).
        names: Vec<String>,
    },
    /// Run a scenario once per value of a numeric parameter.
    Sweep {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        param: String,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_svg: bool,
    },
}

/// Usage or input problem: exit status 2.
fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn with_overrides(mut cfg: ScenarioConfig, dt: Option<f64>, tmax: Option<f64>) -> Result<ScenarioConfig, String> {
    if let Some(dt) = dt {
        cfg = cfg.with_param("dt", dt).map_err(|e| e.to_string())?;
    }
    if let Some(t) = tmax {
        cfg = cfg.with_param("t_max", t).map_err(|e| e.to_string())?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in builtin_names() {
                let cfg = builtin(name).expect("registered");
                println!("{name:<16} {}", cfg.description.unwrap_or_default());
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, dt, tmax, out, no_svg } => {
            let cfg = match resolve_scenario(&scenario).map_err(|e| e.to_string()).and_then(|c| with_overrides(c, dt, tmax)) {
                Ok(cfg) => cfg,
                Err(e) => return input_error(e),
            };
            match run_scenario(&cfg, &RunOptions { out_dir: out, no_svg }) {
                Ok(sim) => {
                    print!("{}", sim.report.text());
                    for f in &sim.report.files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::from(exit_code(std::slice::from_ref(&sim.report)) as u8)
                }
                Err(e) => input_error(e),
            }
        }
        Command::Audit { names } => {
            let names: Vec<String> = if names.is_empty() {
                builtin_names().map(String::from).collect()
            } else {
                names
            };
            let mut reports = Vec::new();
            for name in &names {
                let cfg = match resolve_scenario(name) {
                    Ok(cfg) => cfg,
                    Err(e) => return input_error(e),
                };
                match simulate(&cfg) {
                    Ok(sim) => reports.push(sim.report),
                    Err(e) => return input_error(format!("{name}: {e}")),
                }
            }
            print!("{}", audit_report(&reports));
            ExitCode::from(exit_code(&reports) as u8)
        }
        Command::Sweep { scenario, param, values, out, no_svg } => {
            let base = match resolve_scenario(&scenario) {
                Ok(cfg) => cfg,
                Err(e) => return input_error(e),
            };
            let root = base.output_dir(out.as_deref());
            let mut reports = Vec::new();
            for value in values {
                let mut cfg = match base.with_param(&param, value) {
                    Ok(cfg) => cfg,
                    Err(e) => return input_error(e),
                };
                cfg.name = format!("{}-{param}={value}", base.name);
                let opts = RunOptions {
                    out_dir: Some(root.join(&cfg.name)),
                    no_svg,
                };
                match run_scenario(&cfg, &opts) {
                    Ok(sim) => {
                        for s in &sim.report.subsystems {
                            let who = if s.label.is_empty() { String::new() } else { format!(" atom {}", s.label) };
                            println!(
                                "{}{who}: ΔE = {:+.6}  Q1 = {:+.6}  W1 = {:+.6}  Q2 = {:+.6}  W2 = {:+.6}",
                                cfg.name, s.delta_e, s.q1, s.w1, s.q2, s.w2
                            );
                        }
                        reports.push(sim.report);
                    }
                    Err(e) => return input_error(e),
                }
            }
            println!();
            print!("{}", audit_report(&reports));
            ExitCode::from(exit_code(&reports) as u8)
        }
    }
}
