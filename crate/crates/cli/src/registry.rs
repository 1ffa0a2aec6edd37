//! Built-in scenarios, embedded from `scenarios/*.json`.

use crate::config::{parse_config, ScenarioConfig};

const BUILTINS: [(&str, &str); 6] = [
    ("fig2", include_str!("../scenarios/fig2.json")),
    ("fig3", include_str!("../scenarios/fig3.json")),
    ("fig4", include_str!("../scenarios/fig4.json")),
    ("fig5", include_str!("../scenarios/fig5.json")),
    ("dephasing-demo", include_str!("../scenarios/dephasing-demo.json")),
    ("schmidt-demo", include_str!("../scenarios/schmidt-demo.json")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(name, _)| *name)
}

pub fn builtin(name: &str) -> Option<ScenarioConfig> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_config(text).expect("built-in scenarios are valid"))
}

pub fn builtins() -> Vec<ScenarioConfig> {
    builtin_names().filter_map(builtin).collect()
}
