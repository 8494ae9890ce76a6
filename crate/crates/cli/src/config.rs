use std::path::Path;

use hypzeta_core::EvalOptions;
use serde::Deserialize;

/// Keys accepted in the config file; flags override them.
#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rel_tol: Option<f64>,
    pub gamma2_cutoff: Option<usize>,
    pub euler_max_trace: Option<u32>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }
}

/// Defaults, then the file, then flags.
pub fn resolve(
    file: &FileConfig,
    rel_tol: Option<f64>,
    gamma2_cutoff: Option<usize>,
    euler_max_trace: Option<u32>,
) -> Result<EvalOptions, String> {
    let d = EvalOptions::default();
    EvalOptions::new(
        gamma2_cutoff
            .or(file.gamma2_cutoff)
            .unwrap_or(d.gamma2_cutoff()),
        rel_tol.or(file.rel_tol).unwrap_or(d.rel_tol()),
        euler_max_trace
            .or(file.euler_max_trace)
            .unwrap_or(d.euler_max_trace()),
    )
    .map_err(|e| e.to_string())
}
