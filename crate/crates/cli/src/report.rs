//! Run summaries and the scenario × audit verdict table.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use qthermo::thermo::{
    Verdict, AUDIT_CLAUSIUS_P2, AUDIT_ENTROPY_BALANCE_P1, AUDIT_FIRST_LAW_P1, AUDIT_FIRST_LAW_P2,
};
use qthermo::ThermoValue;

use crate::csv::format_value;

pub const AUDIT_POSITIVITY: &str = "positivity";
pub const AUDIT_TRACE: &str = "trace";

/// Column order of the audit table.
pub const AUDIT_COLUMNS: [&str; 6] = [
    AUDIT_FIRST_LAW_P1,
    AUDIT_FIRST_LAW_P2,
    AUDIT_CLAUSIUS_P2,
    AUDIT_ENTROPY_BALANCE_P1,
    AUDIT_POSITIVITY,
    AUDIT_TRACE,
];

#[derive(Debug, Clone, PartialEq)]
pub struct SubsystemSummary {
    /// Empty for single-qubit scenarios, `A`/`B` for atom pairs.
    pub label: String,
    pub samples: usize,
    pub delta_e: f64,
    pub delta_s: f64,
    pub q1: f64,
    pub w1: f64,
    pub q2: f64,
    pub w2: f64,
    pub wprime: f64,
    pub final_t1: ThermoValue,
    pub final_t2: ThermoValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub subsystem: String,
    pub name: String,
    pub verdict: Verdict,
    pub worst_error: f64,
    pub tolerance: f64,
    pub worst_time: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub scenario: String,
    pub subsystems: Vec<SubsystemSummary>,
    pub audits: Vec<AuditRow>,
    /// Integration failure that stopped the run early.
    pub error: Option<String>,
    pub notes: Vec<String>,
    pub files: Vec<PathBuf>,
    pub wall_clock: Duration,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.audits.iter().all(|a| a.verdict != Verdict::Fail)
    }

    pub fn failed(&self) -> impl Iterator<Item = &AuditRow> {
        self.audits.iter().filter(|a| a.verdict == Verdict::Fail)
    }

    pub fn audit(&self, name: &str, subsystem: &str) -> Option<&AuditRow> {
        self.audits.iter().find(|a| a.name == name && a.subsystem == subsystem)
    }

    /// Table cell: verdicts of every subsystem joined by `/`, `n/a` if the
    /// audit never ran.
    fn cell(&self, name: &str) -> String {
        let verdicts: Vec<&str> = self
            .audits
            .iter()
            .filter(|a| a.name == name)
            .map(|a| a.verdict.label())
            .collect();
        if verdicts.is_empty() {
            "n/a".into()
        } else {
            verdicts.join("/")
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        let _ = writeln!(out, "wall clock: {:.3} s", self.wall_clock.as_secs_f64());
        if let Some(err) = &self.error {
            let _ = writeln!(out, "error: {err}");
        }
        for s in &self.subsystems {
            let title = if s.label.is_empty() { "qubit".to_string() } else { format!("atom {}", s.label) };
            let _ = writeln!(out, "\n[{title}] {} samples", s.samples);
            let _ = writeln!(out, "  ΔE = {:+.9}  ΔS = {:+.9}", s.delta_e, s.delta_s);
            let _ = writeln!(out, "  Q1 = {:+.9}  W1 = {:+.9}", s.q1, s.w1);
            let _ = writeln!(out, "  Q2 = {:+.9}  W2 = {:+.9}  W' = {:+.9}", s.q2, s.w2, s.wprime);
            let _ = writeln!(
                out,
                "  final T1 = {}  final T2 = {}",
                format_value(s.final_t1),
                format_value(s.final_t2)
            );
        }
        let _ = writeln!(out);
        out.push_str(&audit_report(std::slice::from_ref(self)));
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes:");
            for n in &self.notes {
                let _ = writeln!(out, "  {n}");
            }
        }
        out
    }
}

/// Scenario × audit table followed by details of every failing audit.
pub fn audit_report(reports: &[RunReport]) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("scenario".to_string())
        .chain(AUDIT_COLUMNS.iter().map(|s| s.to_string()))
        .collect()];
    for r in reports {
        rows.push(
            std::iter::once(r.scenario.clone())
                .chain(AUDIT_COLUMNS.iter().map(|name| r.cell(name)))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}", w = *w))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
        if i == 0 {
            let total = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }
    let failures: Vec<(&RunReport, &AuditRow)> = reports.iter().flat_map(|r| r.failed().map(move |a| (r, a))).collect();
    if !failures.is_empty() {
        let _ = writeln!(out, "\nfailures:");
        for (r, a) in failures {
            let who = if a.subsystem.is_empty() { r.scenario.clone() } else { format!("{} atom {}", r.scenario, a.subsystem) };
            let at = a.worst_time.map(|t| format!(" at t = {t}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "  {who}: {} FAIL{at}: error {:e} exceeds tolerance {:e}",
                a.name, a.worst_error, a.tolerance
            );
        }
    }
    out
}

/// 0 when every audit passed or was skipped, 1 otherwise.
pub fn exit_code(reports: &[RunReport]) -> i32 {
    if reports.iter().all(RunReport::passed) {
        0
    } else {
        1
    }
}
