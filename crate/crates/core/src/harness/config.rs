use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use crate::error::{QcfError, Result};
use crate::qseries::{Precision, DEFAULT_MAX_TERMS};

/// Per-verification limits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Budget {
    pub max_terms: usize,
    pub max_quotients: usize,
    #[serde(serialize_with = "secs")]
    pub wall: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: DEFAULT_MAX_TERMS,
            max_quotients: crate::cfengine::DEFAULT_MAX_QUOTIENTS,
            wall: Duration::from_secs(30),
        }
    }
}

/// Defaults for tolerance, precision and budget; read from `key = value` text.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub precision: Precision,
    pub budget: Budget,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: 1e-15,
            precision: Precision::DEFAULT,
            budget: Budget::default(),
        }
    }
}

pub const PRECISION_ENV: &str = "QCF_PRECISION";

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| QcfError::Parse(format!("bad value for {key}: '{v}'")))
}

/// Digits of working precision; at least [`Precision::MIN_DIGITS`].
pub fn precision(key: &str, v: &str) -> Result<Precision> {
    let d: u32 = num(key, v)?;
    if d < Precision::MIN_DIGITS {
        return Err(QcfError::Parse(format!(
            "{key}: precision must be at least {} digits",
            Precision::MIN_DIGITS
        )));
    }
    Ok(Precision::digits(d))
}

impl Config {
    /// Keys: `tol`, `precision`, `max_terms`, `max_quotients`, `wall_seconds`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| QcfError::Parse(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "tol" => c.tol = num(k, v)?,
                "precision" => c.precision = precision(k, v)?,
                "max_terms" => c.budget.max_terms = num(k, v)?,
                "max_quotients" => c.budget.max_quotients = num(k, v)?,
                "wall_seconds" => c.budget.wall = Duration::from_secs_f64(num(k, v)?),
                other => return Err(QcfError::Parse(format!("line {}: unknown key '{other}'", i + 1))),
            }
        }
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| QcfError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies a precision given as the text of [`PRECISION_ENV`].
    pub fn with_precision_text(mut self, v: Option<&str>) -> Result<Self> {
        if let Some(v) = v {
            self.precision = precision(PRECISION_ENV, v.trim())?;
        }
        Ok(self)
    }
}
