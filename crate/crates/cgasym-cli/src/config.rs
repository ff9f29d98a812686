//! key=value runtime configuration.
//!
//! Read from ./cgasym.conf when that file exists, or from an explicit
//! --config path (which must exist). Lines are `key = value`, `#` starts
//! a comment, unknown keys are errors.

use std::path::Path;

#[derive(Clone, Debug)]
pub struct Config {
    /// The near-caustic quality flag trips when |beta^2| is below
    /// scale x (j1+j2+j)^3.
    pub near_caustic_scale: f64,
    /// Sweeps emit exact values only while every doubled j is at most this.
    pub exact_cap: i64,
    /// Random-sample count per verify check at --level quick.
    pub verify_quick_samples: usize,
    /// Random-sample count per verify check at --level full.
    pub verify_full_samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            near_caustic_scale: 1.0,
            exact_cap: 1200,
            verify_quick_samples: 25,
            verify_full_samples: 200,
        }
    }
}

impl Config {
    pub fn load(explicit: Option<&Path>) -> Result<Config, String> {
        let text = match explicit {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?,
            None => match std::fs::read_to_string("cgasym.conf") {
                Ok(t) => t,
                Err(_) => return Ok(Config::default()),
            },
        };
        Config::parse(&text)
    }

    fn parse(text: &str) -> Result<Config, String> {
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {lineno}: expected key=value, got '{raw}'"))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| {
                format!("config line {lineno}: bad value '{value}' for {key}: {e}")
            };
            match key {
                "near_caustic_scale" => {
                    cfg.near_caustic_scale = value.parse().map_err(|e| bad(&e))?
                }
                "exact_cap" => cfg.exact_cap = value.parse().map_err(|e| bad(&e))?,
                "verify_quick_samples" => {
                    cfg.verify_quick_samples = value.parse().map_err(|e| bad(&e))?
                }
                "verify_full_samples" => {
                    cfg.verify_full_samples = value.parse().map_err(|e| bad(&e))?
                }
                other => return Err(format!("config line {lineno}: unknown key '{other}'")),
            }
        }
        if !(cfg.near_caustic_scale > 0.0 && cfg.near_caustic_scale.is_finite()) {
            return Err("near_caustic_scale must be a positive finite number".into());
        }
        if cfg.exact_cap < 0 {
            return Err("exact_cap must be nonnegative".into());
        }
        Ok(cfg)
    }
}
