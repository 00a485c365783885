//! Registry of identities: each record pairs a series/product side with a
//! continued fraction (or a second series), a domain predicate and a sampler.

pub mod families;
mod registry;
mod sample;

use std::fmt::Write as _;

use serde::Serialize;

use crate::cfengine::{evaluate, modified_limit, CfFlag, CfSpec};
use crate::error::{QcfError, Result};
use crate::qseries::{Complex, ParameterPoint, Precision, SeriesResult, Sym};

pub use sample::{sample_point, sample_point_with, SAMPLE_ATTEMPTS, SAMPLE_MARGIN};

pub type Evaluator = fn(&ParameterPoint, &EvalOptions) -> Result<SeriesResult>;
pub type CfBuilder = fn(&ParameterPoint) -> Result<CfSpec>;
pub type Modifier = fn(&ParameterPoint) -> Result<Complex>;
pub type DomainFn = fn(&ParameterPoint, f64) -> Result<bool>;

/// Series tolerance and term budget handed to evaluators.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub tol: f64,
    pub max_terms: usize,
}

/// One side of an identity.
#[derive(Clone, Copy)]
pub enum Side {
    /// Closed form: series, products or a combination.
    Series(Evaluator),
    /// Value of `b0 + K(a_n/b_n)`.
    Cf(CfBuilder),
    /// Limit of `S_n(w)` with a constant modification `w`.
    ModifiedCf { cf: CfBuilder, w: Modifier },
}

impl Side {
    pub fn kind(&self) -> &'static str {
        match self {
            Side::Series(_) => "series",
            Side::Cf(_) => "cf",
            Side::ModifiedCf { .. } => "modified-cf",
        }
    }

    pub fn cf(&self, p: &ParameterPoint) -> Option<Result<CfSpec>> {
        match self {
            Side::Series(_) => None,
            Side::Cf(b) | Side::ModifiedCf { cf: b, .. } => Some(b(p)),
        }
    }

    /// Evaluates the side; `value == None` when a continued fraction diverged.
    pub fn value(
        &self,
        p: &ParameterPoint,
        opts: &EvalOptions,
        cf_tol: f64,
        max_quotients: usize,
    ) -> Result<SideValue> {
        match self {
            Side::Series(f) => {
                let r = f(p, opts)?;
                Ok(SideValue {
                    value: Some(r.value),
                    terms: r.terms_used,
                    quotients: 0,
                    error_bound: r.tail_bound,
                    flags: Vec::new(),
                })
            }
            Side::Cf(b) => {
                let r = evaluate(&b(p)?, cf_tol, max_quotients)?;
                Ok(SideValue::from_report(r.value, r.n_used, r.residual, r.flags))
            }
            Side::ModifiedCf { cf, w } => {
                let w = w(p)?;
                let r = modified_limit(&cf(p)?, move |_| Ok(w.clone()), cf_tol, max_quotients)?;
                Ok(SideValue::from_report(r.value, r.n_used, r.residual, r.flags))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SideValue {
    pub value: Option<Complex>,
    pub terms: usize,
    pub quotients: usize,
    pub error_bound: f64,
    pub flags: Vec<CfFlag>,
}

impl SideValue {
    fn from_report(value: Option<Complex>, n: usize, residual: f64, flags: Vec<CfFlag>) -> Self {
        SideValue {
            value,
            terms: 0,
            quotients: n,
            error_bound: residual,
            flags,
        }
    }
}

/// How [`sample_point`] draws parameters for a record.
#[derive(Clone, Copy)]
pub(crate) enum Sampler {
    /// Every parameter complex with random phase.
    Complex,
    /// Real `q` (or `x`) in `(0, 1/2]`, the rest complex.
    RealQ,
    Custom(fn(&mut sample::Draw) -> Result<ParameterPoint>),
}

pub struct IdentityRecord {
    pub id: &'static str,
    pub params: &'static [Sym],
    /// The identity in plain text.
    pub statement: &'static str,
    /// Human-readable domain.
    pub domain_text: &'static str,
    pub notes: &'static str,
    pub lhs: Side,
    pub rhs: Side,
    domain: DomainFn,
    pub(crate) sampler: Sampler,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    /// Whether `p` lies in the domain with every strict inequality and pole
    /// exclusion satisfied by at least `margin`.
    pub fn in_domain(&self, p: &ParameterPoint, margin: f64) -> Result<bool> {
        for s in self.params {
            if !p.contains(*s) {
                return Err(QcfError::domain(format!("{} needs parameter {}", self.id, s)));
            }
        }
        (self.domain)(p, margin)
    }

    pub fn summary(&self) -> IdentitySummary {
        IdentitySummary {
            id: self.id,
            statement: self.statement,
            params: self.params.iter().map(|s| s.name()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySummary {
    pub id: &'static str,
    pub statement: &'static str,
    pub params: Vec<&'static str>,
}

/// The full registry in stable order.
pub fn list_identities() -> Vec<IdentitySummary> {
    registry::RECORDS.iter().map(IdentityRecord::summary).collect()
}

pub fn records() -> &'static [IdentityRecord] {
    registry::RECORDS
}

pub fn get(id: &str) -> Result<&'static IdentityRecord> {
    registry::RECORDS
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| QcfError::UnknownIdentity(id.to_string()))
}

/// Plain-text export, one block per identity.
pub fn export_text() -> String {
    let mut out = String::new();
    for r in registry::RECORDS.iter() {
        let params: Vec<_> = r.params.iter().map(|s| s.name()).collect();
        let _ = writeln!(out, "[{}]", r.id);
        let _ = writeln!(out, "params: {}", params.join(", "));
        let _ = writeln!(out, "statement: {}", r.statement);
        let _ = writeln!(out, "domain: {}", r.domain_text);
        let _ = writeln!(out, "lhs: {}", r.lhs.kind());
        let _ = writeln!(out, "rhs: {}", r.rhs.kind());
        if !r.notes.is_empty() {
            let _ = writeln!(out, "notes: {}", r.notes);
        }
        out.push('\n');
    }
    out
}

/// Evaluation options for a target precision.
pub fn default_options(prec: Precision) -> EvalOptions {
    EvalOptions {
        tol: prec.structural_tol(),
        max_terms: crate::qseries::DEFAULT_MAX_TERMS,
    }
}
