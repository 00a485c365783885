use serde::Serialize;

use super::Complex;
use crate::error::{QcfError, Result};

pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// How many recent term ratios feed the geometric tail estimate.
const RATIO_WINDOW: usize = 4;

/// A truncated series or product together with an estimate of the truncation error.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesResult {
    pub value: Complex,
    pub terms_used: usize,
    pub tail_bound: f64,
}

impl SeriesResult {
    /// A value with no truncation error.
    pub fn exact(value: Complex) -> Self {
        SeriesResult {
            value,
            terms_used: 0,
            tail_bound: 0.0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (x, y) = (self.value.abs_f64(), other.value.abs_f64());
        SeriesResult {
            value: &self.value * &other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_bound: x * other.tail_bound + y * self.tail_bound + self.tail_bound * other.tail_bound,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let value = self.value.checked_div(&other.value)?;
        let y = other.value.abs_f64();
        let slack = y - other.tail_bound;
        let tail_bound = if slack > 0.0 {
            (self.tail_bound + value.abs_f64() * other.tail_bound) / slack
        } else {
            f64::INFINITY
        };
        Ok(SeriesResult {
            value,
            terms_used: self.terms_used + other.terms_used,
            tail_bound,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        SeriesResult {
            value: &self.value + &other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SeriesResult {
            value: &self.value - &other.value,
            terms_used: self.terms_used + other.terms_used,
            tail_bound: self.tail_bound + other.tail_bound,
        }
    }

    /// Multiplies by an exact constant.
    pub fn scale(&self, k: &Complex) -> Self {
        SeriesResult {
            value: &self.value * k,
            terms_used: self.terms_used,
            tail_bound: self.tail_bound * k.abs_f64(),
        }
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        SeriesResult::exact(self.value.one_like()).div(self)
    }
}

/// Sums `t_0 + t_1 + ...` where `t_{n+1} = t_n * num(n) / den(n)`.
///
/// `ratio(n)` returns `(num, den)`. A denominator inside the exclusion radius
/// while the running term is nonzero is a pole and raises a domain error; an
/// exactly zero numerator terminates the series.
pub(crate) fn sum_by_ratio<F>(first: Complex, mut ratio: F, tol: f64, max_terms: usize) -> Result<SeriesResult>
where
    F: FnMut(usize) -> (Complex, Complex),
{
    let radius = first.precision().exclusion_radius();
    let mut sum = first.zero_like();
    let mut term = first;
    let mut recent = [0.0f64; RATIO_WINDOW];
    let mut last_bound = f64::INFINITY;
    for n in 0..max_terms {
        sum = &sum + &term;
        if term.is_zero() {
            return Ok(SeriesResult {
                value: sum,
                terms_used: n + 1,
                tail_bound: 0.0,
            });
        }
        let (num, den) = ratio(n);
        if num.is_zero() {
            return Ok(SeriesResult {
                value: sum,
                terms_used: n + 1,
                tail_bound: 0.0,
            });
        }
        if den.abs_f64() <= radius {
            return Err(QcfError::domain(format!(
                "pole in series denominator at index {}",
                n + 1
            )));
        }
        let r = &num / &den;
        term = &term * &r;
        recent[n % RATIO_WINDOW] = r.abs_f64();
        if n + 1 < RATIO_WINDOW {
            continue;
        }
        let rmax = recent.iter().copied().fold(0.0, f64::max);
        let t = term.abs_f64();
        if rmax < 1.0 {
            // the next term plus a geometric majorant for everything after it
            last_bound = t / (1.0 - rmax);
            if t < tol * sum.abs_f64().max(1.0) && last_bound < tol {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: n + 1,
                    tail_bound: last_bound,
                });
            }
        }
        if !sum.is_finite() {
            return Err(QcfError::domain("series overflowed"));
        }
    }
    Err(QcfError::NoConvergence {
        terms: max_terms,
        tail_bound: last_bound,
    })
}
