//! Ledger CSV output.

use std::fmt::Write as _;
use std::path::Path;

use qthermo::thermo::{Cumulative, ThermoLedger, ThermoSample};
use qthermo::ThermoValue;

/// CSV column order; stable.
pub const COLUMNS: [&str; 25] = [
    "t", "bx", "by", "bz", "Bmod", "theta", "E", "S", "q1_rate", "w1_rate", "q2_rate", "w2_rate",
    "wprime_rate", "Q1", "W1", "Q2", "W2", "T1", "T2", "C1", "C2", "sgen1_rate", "Sgen1",
    "sgen_ht_rate", "coherence",
];

/// Value of a named column at one sample, or `None` for an unknown name.
pub fn column_value(name: &str, s: &ThermoSample, c: &Cumulative) -> Option<ThermoValue> {
    let finite = ThermoValue::from_f64;
    Some(match name {
        "t" => finite(s.t),
        "bx" => finite(s.bloch.x),
        "by" => finite(s.bloch.y),
        "bz" => finite(s.bloch.z),
        "Bmod" => finite(s.modulus),
        "theta" => s.theta.map_or(ThermoValue::Undefined, finite),
        "E" => finite(s.energy),
        "S" => finite(s.entropy),
        "q1_rate" => finite(s.q1_rate),
        "w1_rate" => finite(s.w1_rate),
        "q2_rate" => finite(s.q2_rate),
        "w2_rate" => finite(s.w2_rate),
        "wprime_rate" => finite(s.wprime_rate),
        "Q1" => finite(c.q1),
        "W1" => finite(c.w1),
        "Q2" => finite(c.q2),
        "W2" => finite(c.w2),
        "Wprime" => finite(c.wprime),
        "T1" => s.temp1,
        "T2" => s.temp2,
        "C1" => s.cap1,
        "C2" => finite(s.cap2),
        "sgen1_rate" => s.sgen1_rate,
        "Sgen1" => finite(c.sgen1),
        "sgen_ht_rate" => s.sgen_ht_rate,
        "Sgen_ht" => finite(c.sgen_ht),
        "coherence" => finite(s.coherence),
        _ => return None,
    })
}

/// 17 significant digits; markers as `inf`, `-inf`, `undef`. Negative
/// zero prints as zero.
pub fn format_value(v: ThermoValue) -> String {
    match v {
        ThermoValue::Finite(x) => format!("{:.16e}", if x == 0.0 { 0.0 } else { x }),
        marker => marker.to_string(),
    }
}

pub fn csv_string(ledger: &ThermoLedger) -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for (s, c) in ledger.samples.iter().zip(&ledger.cumulative) {
        for (i, name) in COLUMNS.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let v = column_value(name, s, c).expect("CSV columns are known");
            write!(out, "{}", format_value(v)).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(ledger: &ThermoLedger, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, csv_string(ledger))
}
