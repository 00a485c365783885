//! Machine-readable reports. Numbers are written as decimal strings so no
//! digits are lost to binary floating point.

use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::error::{QcfError, Result};
use crate::qseries::{Complex, ParameterPoint, Precision};

pub const REPORT_SCHEMA_VERSION: &str = "qcf-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    DomainViolation,
    Diverged,
    SeparateLimitsFound,
    TerminatedCf,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Flag::DomainViolation => "domain-violation",
            Flag::Diverged => "diverged",
            Flag::SeparateLimitsFound => "separate-limits-found",
            Flag::TerminatedCf => "terminated-cf",
        }
    }

    /// Flags that forbid a pass.
    pub fn is_error(self) -> bool {
        matches!(self, Flag::DomainViolation | Flag::Diverged)
    }
}

fn dec<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:e}"))
}

fn dec_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&format!("{v:e}")),
        None => s.serialize_none(),
    }
}

fn digits<S: Serializer>(p: &Precision, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u32(p.get())
}

fn json<T: Serialize>(x: &T) -> Result<String> {
    serde_json::to_string_pretty(x).map_err(|e| QcfError::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(serialize_with = "digits")]
    pub precision: Precision,
    pub point: ParameterPoint,
    pub lhs: Option<Complex>,
    pub rhs: Option<Complex>,
    #[serde(serialize_with = "dec_opt")]
    pub abs_diff: Option<f64>,
    #[serde(serialize_with = "dec_opt")]
    pub rel_diff: Option<f64>,
    #[serde(serialize_with = "dec")]
    pub tolerance: f64,
    pub n_terms: usize,
    pub n_quotients: usize,
    pub pass: bool,
    pub flags: Vec<Flag>,
    pub error: Option<String>,
}

impl VerificationReport {
    pub(crate) fn new(id: &str, point: &ParameterPoint, tol: f64) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA_VERSION,
            id: id.to_string(),
            seed: None,
            precision: point.precision(),
            point: point.clone(),
            lhs: None,
            rhs: None,
            abs_diff: None,
            rel_diff: None,
            tolerance: tol,
            n_terms: 0,
            n_quotients: 0,
            pass: false,
            flags: Vec::new(),
            error: None,
        }
    }

    pub(crate) fn finish(&mut self) {
        self.pass = self.error.is_none()
            && !self.flags.iter().any(|f| f.is_error())
            && self.rel_diff.is_some_and(|d| d < self.tolerance);
    }

    pub fn has_flag(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }

    pub fn to_json(&self) -> Result<String> {
        json(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub id: String,
    #[serde(serialize_with = "digits")]
    pub precision: Precision,
    #[serde(serialize_with = "dec")]
    pub tolerance: f64,
    pub n_seeds: usize,
    pub n_pass: usize,
    #[serde(serialize_with = "dec")]
    pub pass_rate: f64,
    #[serde(serialize_with = "dec_opt")]
    pub worst_rel_diff: Option<f64>,
    #[serde(serialize_with = "dec")]
    pub wall_seconds: f64,
    pub reports: Vec<VerificationReport>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    seed: Option<u64>,
    pass: bool,
    rel_diff: String,
    abs_diff: String,
    n_terms: usize,
    n_quotients: usize,
    flags: String,
    point: String,
    error: &'a str,
}

impl SweepReport {
    pub(crate) fn aggregate(
        id: &str,
        tol: f64,
        prec: Precision,
        reports: Vec<VerificationReport>,
        wall: Duration,
    ) -> Self {
        let n_pass = reports.iter().filter(|r| r.pass).count();
        let worst = reports
            .iter()
            .filter_map(|r| r.rel_diff)
            .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
        let n = reports.len();
        SweepReport {
            schema: REPORT_SCHEMA_VERSION,
            id: id.to_string(),
            precision: prec,
            tolerance: tol,
            n_seeds: n,
            n_pass,
            pass_rate: if n == 0 { 1.0 } else { n_pass as f64 / n as f64 },
            worst_rel_diff: worst,
            wall_seconds: wall.as_secs_f64(),
            reports,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.n_pass == self.n_seeds
    }

    pub fn to_json(&self) -> Result<String> {
        json(self)
    }

    /// One row per seed, with a header.
    pub fn to_csv(sweeps: &[SweepReport]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for s in sweeps {
            for r in &s.reports {
                let flags: Vec<_> = r.flags.iter().map(|f| f.name()).collect();
                w.serialize(CsvRow {
                    id: &r.id,
                    seed: r.seed,
                    pass: r.pass,
                    rel_diff: r.rel_diff.map(|d| format!("{d:e}")).unwrap_or_default(),
                    abs_diff: r.abs_diff.map(|d| format!("{d:e}")).unwrap_or_default(),
                    n_terms: r.n_terms,
                    n_quotients: r.n_quotients,
                    flags: flags.join(";"),
                    point: r.point.to_string(),
                    error: r.error.as_deref().unwrap_or(""),
                })
                .map_err(|e| QcfError::Parse(e.to_string()))?;
            }
        }
        let bytes = w.into_inner().map_err(|e| QcfError::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| QcfError::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub schema: &'static str,
    pub ids: Vec<String>,
    pub point: ParameterPoint,
    pub values: Vec<Option<Complex>>,
    pub n_quotients: Vec<usize>,
    #[serde(serialize_with = "dec")]
    pub max_deviation: f64,
    #[serde(serialize_with = "dec")]
    pub tolerance: f64,
    pub pass: bool,
    pub flags: Vec<Flag>,
}

impl CrosscheckReport {
    pub(crate) fn new(ids: &[&str], point: &ParameterPoint, tol: f64) -> Self {
        CrosscheckReport {
            schema: REPORT_SCHEMA_VERSION,
            ids: ids.iter().map(|s| s.to_string()).collect(),
            point: point.clone(),
            values: Vec::new(),
            n_quotients: Vec::new(),
            max_deviation: 0.0,
            tolerance: tol,
            pass: false,
            flags: Vec::new(),
        }
    }

    pub(crate) fn push_flag(&mut self, f: Flag) {
        if !self.flags.contains(&f) {
            self.flags.push(f);
        }
    }

    pub(crate) fn finish(&mut self) {
        self.pass = !self.flags.iter().any(|f| f.is_error()) && self.max_deviation < self.tolerance;
    }

    pub fn to_json(&self) -> Result<String> {
        json(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepCheck {
    pub step: usize,
    #[serde(serialize_with = "dec")]
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BmReport {
    pub schema: &'static str,
    pub preset: String,
    pub point: ParameterPoint,
    pub steps: usize,
    pub check_n: usize,
    #[serde(serialize_with = "digits")]
    pub working_precision: Precision,
    #[serde(serialize_with = "dec")]
    pub tolerance: f64,
    pub approximant: Vec<StepCheck>,
    #[serde(serialize_with = "dec")]
    pub prefix_deviation: f64,
    pub pass: bool,
    pub flags: Vec<Flag>,
}

impl BmReport {
    pub(crate) fn new(preset: &str, point: &ParameterPoint, steps: usize, check_n: usize, tol: f64) -> Self {
        BmReport {
            schema: REPORT_SCHEMA_VERSION,
            preset: preset.to_string(),
            point: point.clone(),
            steps,
            check_n,
            working_precision: point.precision(),
            tolerance: tol,
            approximant: Vec::new(),
            prefix_deviation: 0.0,
            pass: false,
            flags: Vec::new(),
        }
    }

    pub(crate) fn finish(&mut self) {
        self.pass = !self.flags.iter().any(|f| f.is_error())
            && self.approximant.iter().all(|c| c.pass)
            && self.prefix_deviation < self.tolerance;
    }

    pub fn to_json(&self) -> Result<String> {
        json(self)
    }
}
