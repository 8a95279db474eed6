//! Run defaults, optionally overridden by a `key = value` file and then by
//! command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use dumont_core::numcheck::{elliptic::Jacobi, NumOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            _ => Err(format!("unknown format `{s}` (json, csv, pretty)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub triangle_nmax: usize,
    /// None keeps each identity case's own default range.
    pub identity_nmax: Option<usize>,
    pub series_order: usize,
    pub stats_n: usize,
    pub order: usize,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub rk_min_steps: usize,
    pub rk_steps_per_unit: f64,
    pub rk_settle: f64,
    pub timeout: Duration,
    pub threads: Option<usize>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let num = NumOptions::default();
        RunConfig {
            triangle_nmax: 12,
            identity_nmax: None,
            series_order: 12,
            stats_n: 8,
            order: num.order,
            samples: num.samples,
            tol: num.tol,
            seed: num.seed,
            rk_min_steps: num.jacobi.min_steps,
            rk_steps_per_unit: num.jacobi.steps_per_unit,
            rk_settle: num.jacobi.settle,
            timeout: Duration::from_secs(300),
            threads: None,
            format: Format::Pretty,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError(format!("bad value `{v}` for `{key}`")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        match key {
            "triangle_nmax" => self.triangle_nmax = parse(key, v)?,
            "nmax" | "identity_nmax" => self.identity_nmax = Some(parse(key, v)?),
            "series_order" => self.series_order = parse(key, v)?,
            "stats_n" => self.stats_n = parse(key, v)?,
            "order" => self.order = parse(key, v)?,
            "samples" => self.samples = parse(key, v)?,
            "tol" => self.tol = parse(key, v)?,
            "seed" => self.seed = parse(key, v)?,
            "rk_min_steps" => self.rk_min_steps = parse(key, v)?,
            "rk_steps_per_unit" => self.rk_steps_per_unit = parse(key, v)?,
            "rk_settle" => self.rk_settle = parse(key, v)?,
            "timeout" => self.timeout = Duration::from_secs_f64(parse(key, v)?),
            "threads" => self.threads = Some(parse(key, v)?),
            "format" => self.format = v.parse().map_err(ConfigError)?,
            _ => return Err(ConfigError(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Lines are `key = value`; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", k + 1)))?;
            self.set(key.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(ConfigError(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.rk_min_steps < 64 {
            return Err(ConfigError(format!("rk_min_steps must be at least 64, got {}", self.rk_min_steps)));
        }
        if self.samples == 0 {
            return Err(ConfigError("samples must be positive".into()));
        }
        Ok(())
    }

    pub fn num_options(&self) -> NumOptions {
        NumOptions {
            order: self.order,
            samples: self.samples,
            tol: self.tol,
            seed: self.seed,
            jacobi: Jacobi {
                min_steps: self.rk_min_steps,
                steps_per_unit: self.rk_steps_per_unit,
                settle: self.rk_settle,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = RunConfig::default();
        c.apply_text("# run settings\ntol = 1e-9\nseed=7  # fixed\n\nformat = json\nnmax = 6\n").unwrap();
        assert_eq!(c.tol, 1e-9);
        assert_eq!(c.seed, 7);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.identity_nmax, Some(6));
        assert_eq!(c.samples, 20);
    }

    #[test]
    fn rejects_bad_lines() {
        let mut c = RunConfig::default();
        assert!(c.apply_text("tol").is_err());
        assert!(c.apply_text("colour = red").is_err());
        assert!(c.apply_text("seed = -1").is_err());
        c.tol = 0.0;
        assert!(c.validate().is_err());
    }
}
