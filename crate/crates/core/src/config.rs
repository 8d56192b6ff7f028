//! Command-line configuration: defaults, `key=value` files and environment overrides.

use crate::error::{Error, Result};
use crate::reciprocity::{RetryPolicy, DEFAULT_PRECISION, DEFAULT_RETRY_CAP};

pub const PRECISION_ENV: &str = "TAME_PRECISION";
pub const MIN_PRECISION: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!(
                "output must be text or json, not {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub field: Option<String>,
    pub precision: i64,
    pub retry_cap: i64,
    pub seed: u64,
    pub output: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            field: None,
            precision: DEFAULT_PRECISION,
            retry_cap: DEFAULT_RETRY_CAP,
            seed: 0,
            output: OutputFormat::Text,
        }
    }
}

fn int<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: expected an integer, found {v:?}")))
}

impl CliConfig {
    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "field" => self.field = Some(value.to_string()),
                "precision" => self.precision = int(key, value)?,
                "retry_cap" => self.retry_cap = int(key, value)?,
                "seed" => self.seed = int(key, value)?,
                "output" => self.output = value.parse()?,
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {key:?}",
                        n + 1
                    )))
                }
            }
        }
        Ok(())
    }

    /// Reads the precision override from the environment lookup.
    pub fn apply_env(&mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(v) = lookup(PRECISION_ENV) {
            self.precision = int(PRECISION_ENV, v.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < MIN_PRECISION {
            return Err(Error::Config(format!(
                "precision {} is below {MIN_PRECISION}",
                self.precision
            )));
        }
        if self.retry_cap < self.precision || self.retry_cap.count_ones() != 1 {
            return Err(Error::Config(format!(
                "retry_cap {} must be a power of two at least the precision",
                self.retry_cap
            )));
        }
        Ok(())
    }

    pub fn retry_policy(&self) -> RetryPolicy {
        RetryPolicy::new(self.precision, self.retry_cap)
    }
}

/// Parses and validates a configuration file on top of the defaults.
pub fn parse_config(text: &str) -> Result<CliConfig> {
    let mut c = CliConfig::default();
    c.apply_file(text)?;
    c.validate()?;
    Ok(c)
}
