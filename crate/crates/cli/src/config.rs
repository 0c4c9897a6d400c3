//! Optional key=value settings file. CLI flags win over file values, file
//! values win over the built-in defaults.

use std::path::Path;

use qsandor::{DiagnosticConfig, Precision};

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub diag: DiagnosticConfig,
}

impl Default for Settings {
    fn default() -> Self {
        let p = Precision::default();
        Self {
            rel_tol: p.rel_tol(),
            max_terms: p.max_terms(),
            diag: DiagnosticConfig::default(),
        }
    }
}

impl Settings {
    /// Parse `key = value` lines; `#` starts a comment. Recognized keys:
    /// rel_tol, max_terms, shrink_factor, persist_band, floor_factor, window.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", idx + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "rel_tol" => s.rel_tol = parse(key, value)?,
                "max_terms" => s.max_terms = parse(key, value)?,
                "shrink_factor" => s.diag.shrink_factor = parse(key, value)?,
                "persist_band" => s.diag.persist_band = parse(key, value)?,
                "floor_factor" => s.diag.floor_factor = parse(key, value)?,
                "window" => s.diag.window = parse(key, value)?,
                _ => return Err(format!("unknown config key `{key}`")),
            }
        }
        Ok(s)
    }

    /// Effective precision; an explicit --precision flag overrides the file.
    pub fn precision(&self, flag_rel_tol: Option<f64>) -> qsandor::Result<Precision> {
        Precision::new(flag_rel_tol.unwrap_or(self.rel_tol), self.max_terms)
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value for `{key}`: {value}"))
}
