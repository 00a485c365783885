use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Complex, Precision};
use crate::error::{QcfError, Result};

/// Parameter symbols used by the identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Q,
    A,
    B,
    Lambda,
    C,
    Z,
    X,
}

impl Sym {
    pub const ALL: [Sym; 7] = [Sym::Q, Sym::A, Sym::B, Sym::Lambda, Sym::C, Sym::Z, Sym::X];

    pub fn name(self) -> &'static str {
        match self {
            Sym::Q => "q",
            Sym::A => "a",
            Sym::B => "b",
            Sym::Lambda => "lambda",
            Sym::C => "c",
            Sym::Z => "z",
            Sym::X => "x",
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sym {
    type Err = QcfError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "q" => Sym::Q,
            "a" => Sym::A,
            "b" => Sym::B,
            "lambda" | "l" | "λ" => Sym::Lambda,
            "c" => Sym::C,
            "z" => Sym::Z,
            "x" => Sym::X,
            other => return Err(QcfError::Parse(format!("unknown parameter symbol '{other}'"))),
        })
    }
}

/// Named parameter values. Only the symbols an identity needs are present.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParameterPoint {
    values: BTreeMap<Sym, Complex>,
}

impl ParameterPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Sym, v: Complex) -> Self {
        self.values.insert(sym, v);
        self
    }

    /// Builder shortcut for real f64 values.
    pub fn with_f64(self, sym: Sym, v: f64, prec: Precision) -> Self {
        self.with(sym, Complex::from_f64(v, prec))
    }

    pub fn set(&mut self, sym: Sym, v: Complex) {
        self.values.insert(sym, v);
    }

    pub fn get(&self, sym: Sym) -> Result<&Complex> {
        self.values
            .get(&sym)
            .ok_or_else(|| QcfError::domain(format!("parameter '{sym}' is missing")))
    }

    pub fn try_get(&self, sym: Sym) -> Option<&Complex> {
        self.values.get(&sym)
    }

    pub fn contains(&self, sym: Sym) -> bool {
        self.values.contains_key(&sym)
    }

    pub fn q(&self) -> Result<&Complex> {
        self.get(Sym::Q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, &Complex)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    pub fn symbols(&self) -> Vec<Sym> {
        self.values.keys().copied().collect()
    }

    /// Largest precision among the stored values, or the default when empty.
    pub fn precision(&self) -> Precision {
        self.values.values().map(Complex::precision).max().unwrap_or_default()
    }

    /// Re-rounds every value to `prec`.
    pub fn with_precision(&self, prec: Precision) -> Self {
        ParameterPoint {
            values: self.values.iter().map(|(k, v)| (*k, v.with_precision(prec))).collect(),
        }
    }

    /// Checks the global requirement |q| < 1 (when q is present).
    pub fn check_q(&self) -> Result<()> {
        if let Some(q) = self.try_get(Sym::Q) {
            if q.abs_f64() >= 1.0 {
                return Err(QcfError::domain(format!("|q| = {} is not < 1", q.abs_f64())));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.values {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}={}", v.to_short_string(6))?;
        }
        Ok(())
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.values.len()))?;
        for (k, v) in &self.values {
            m.serialize_entry(k.name(), v)?;
        }
        m.end()
    }
}
