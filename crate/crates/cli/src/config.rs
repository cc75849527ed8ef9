//! Run configuration: `key = value` files overridden by command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use gsp4_core::exactnum::is_prime;

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv or text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u64,
    /// q-expansion precision.
    pub n_q: usize,
    /// Reporting precision for reductions mod `p^Np`.
    pub n_p: u32,
    /// Largest `r1` used by the weight sweeps.
    pub r_max: i64,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: 5, n_q: 100, n_p: 10, r_max: 6, format: Format::Json, seed: 0 }
    }
}

/// Values given on the command line; `None` keeps the configured value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<u64>,
    pub n_q: Option<usize>,
    pub n_p: Option<u32>,
    pub r_max: Option<i64>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| UsageError(format!("config line {line}: bad value for `{key}`: {e}")).into())
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(UsageError(format!("config line {}: expected `key = value`", i + 1)).into());
            };
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            match key {
                "p" => cfg.p = parse_value(key, value, i + 1)?,
                "Nq" => cfg.n_q = parse_value(key, value, i + 1)?,
                "Np" => cfg.n_p = parse_value(key, value, i + 1)?,
                "r-max" => cfg.r_max = parse_value(key, value, i + 1)?,
                "format" => cfg.format = parse_value(key, value, i + 1)?,
                "seed" => cfg.seed = parse_value(key, value, i + 1)?,
                _ => return Err(UsageError(format!("config line {}: unknown key `{key}`", i + 1)).into()),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))
            .map_err(|e| UsageError(format!("--config: {e:#}")))?;
        Self::parse(&text)
    }

    pub fn apply(mut self, o: &Overrides) -> Result<RunConfig> {
        if let Some(p) = o.p {
            self.p = p;
        }
        if let Some(n) = o.n_q {
            self.n_q = n;
        }
        if let Some(n) = o.n_p {
            self.n_p = n;
        }
        if let Some(r) = o.r_max {
            self.r_max = r;
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            bail!(UsageError(format!("--p: {} is not prime", self.p)));
        }
        if self.n_q == 0 {
            bail!(UsageError("--Nq: precision must be positive".into()));
        }
        if self.n_p == 0 {
            bail!(UsageError("--Np: precision must be positive".into()));
        }
        if self.r_max < 0 {
            bail!(UsageError("--r-max: must be non-negative".into()));
        }
        Ok(())
    }
}
