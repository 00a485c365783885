use serde::Serialize;

use super::spec::CfSpec;
use crate::error::{QcfError, Result};
use crate::qseries::Complex;

/// `(n, A_n, B_n)` from the three-term recurrence.
#[derive(Clone, Debug)]
pub struct ConvergentPair {
    pub n: usize,
    pub a: Complex,
    pub b: Complex,
}

impl ConvergentPair {
    /// `f_n = A_n / B_n`.
    pub fn value(&self) -> Result<Complex> {
        self.a.checked_div(&self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CfFlag {
    /// Successive approximants alternate between two clusters.
    Oscillation,
    /// Some `B_n` fell inside the zero-exclusion radius and was skipped.
    BNearZero,
    /// The fraction is finite and was evaluated exactly.
    Terminated,
    /// No limit was detected within the index budget.
    Diverged,
    /// The approximants grow without bound (a limit at infinity).
    ApparentInfinity,
}

/// Result of [`evaluate`]. `value == None` means DIVERGED.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub value: Option<Complex>,
    pub n_used: usize,
    /// `|f_n - f_{n-1}| / max(1, |f_n|)` at the last index examined.
    pub residual: f64,
    pub separate: Option<(Complex, Complex)>,
    pub flags: Vec<CfFlag>,
}

impl ConvergenceReport {
    pub fn converged(&self) -> bool {
        self.value.is_some()
    }

    pub fn has_flag(&self, f: CfFlag) -> bool {
        self.flags.contains(&f)
    }

    /// The value, or an error describing why there is none.
    pub fn require(&self) -> Result<Complex> {
        self.value.clone().ok_or(QcfError::NoConvergence {
            terms: self.n_used,
            tail_bound: self.residual,
        })
    }

    fn push(&mut self, f: CfFlag) {
        if !self.flags.contains(&f) {
            self.flags.push(f);
        }
    }
}

/// Streaming forward recurrence `A_n = b_n A_{n-1} + a_n A_{n-2}` (same for B).
pub(crate) struct Convergents<'a> {
    cf: &'a CfSpec,
    pub n: usize,
    pub a_prev: Complex,
    pub a_cur: Complex,
    pub b_prev: Complex,
    pub b_cur: Complex,
    renormalize: bool,
    limit: f64,
}

impl<'a> Convergents<'a> {
    pub fn new(cf: &'a CfSpec, renormalize: bool) -> Self {
        let one = cf.b0.one_like();
        let digits = cf.precision().get() as i32;
        Convergents {
            cf,
            n: 0,
            a_prev: one.clone(),
            a_cur: cf.b0.clone(),
            b_prev: one.zero_like(),
            b_cur: one,
            renormalize,
            limit: 10f64.powi(digits / 2),
        }
    }

    pub fn exhausted(&self) -> bool {
        self.cf.len().is_some_and(|m| self.n >= m)
    }

    pub fn advance(&mut self) -> Result<()> {
        let n = self.n + 1;
        let an = self.cf.a(n)?;
        let bn = self.cf.b(n)?;
        let a_next = &(&bn * &self.a_cur) + &(&an * &self.a_prev);
        let b_next = &(&bn * &self.b_cur) + &(&an * &self.b_prev);
        self.a_prev = std::mem::replace(&mut self.a_cur, a_next);
        self.b_prev = std::mem::replace(&mut self.b_cur, b_next);
        self.n = n;
        if self.renormalize {
            self.rescale();
        }
        Ok(())
    }

    /// Multiplies all four numbers by a power of two, which is exact and leaves
    /// every ratio unchanged.
    fn rescale(&mut self) {
        let m = self
            .a_cur
            .abs_f64()
            .max(self.b_cur.abs_f64())
            .max(self.a_prev.abs_f64())
            .max(self.b_prev.abs_f64());
        if !(m > self.limit || (m > 0.0 && m < 1.0 / self.limit)) || !m.is_finite() {
            return;
        }
        let k = -(m.log2().round() as i32);
        let s = Complex::from_f64(2f64.powi(k), self.cf.precision());
        self.a_cur = &self.a_cur * &s;
        self.a_prev = &self.a_prev * &s;
        self.b_cur = &self.b_cur * &s;
        self.b_prev = &self.b_prev * &s;
    }

    /// `B_n` lies within the exclusion radius relative to its neighbours.
    pub fn b_near_zero(&self) -> bool {
        let scale = self
            .a_cur
            .abs_f64()
            .max(self.a_prev.abs_f64())
            .max(self.b_prev.abs_f64());
        self.b_cur.abs_f64() <= self.cf.precision().exclusion_radius() * scale
    }
}

/// Convergents `(n, A_n, B_n)` for `n = 0..=n_max` (up to the length of a
/// terminating fraction). No renormalization is applied.
pub fn convergents(cf: &CfSpec, n_max: usize) -> Result<Vec<ConvergentPair>> {
    let mut s = Convergents::new(cf, false);
    let mut out = vec![ConvergentPair {
        n: 0,
        a: s.a_cur.clone(),
        b: s.b_cur.clone(),
    }];
    while s.n < n_max && !s.exhausted() {
        s.advance()?;
        out.push(ConvergentPair {
            n: s.n,
            a: s.a_cur.clone(),
            b: s.b_cur.clone(),
        });
    }
    Ok(out)
}

/// Largest deviation from `A_n B_{n-1} - A_{n-1} B_n = (-1)^{n-1} a_1 ... a_n` over
/// `n = 1..=n_max`, relative to `max(|A_n B_{n-1}|, |A_{n-1} B_n|, |rhs|)`.
pub fn determinant_deviation(cf: &CfSpec, n_max: usize) -> Result<f64> {
    let pairs = convergents(cf, n_max)?;
    let mut prod = cf.b0.one_like();
    let mut worst = 0.0f64;
    let mut prev_a = cf.b0.one_like();
    let mut prev_b = cf.b0.zero_like();
    for (i, p) in pairs.iter().enumerate() {
        if i > 0 {
            prod = &prod * &cf.a(p.n)?;
            let rhs = if p.n % 2 == 1 { prod.clone() } else { -&prod };
            let x = &p.a * &prev_b;
            let y = &prev_a * &p.b;
            let lhs = &x - &y;
            let scale = x.abs_f64().max(y.abs_f64()).max(rhs.abs_f64());
            if scale > 0.0 {
                worst = worst.max((&lhs - &rhs).abs_f64() / scale);
            }
        }
        prev_a = p.a.clone();
        prev_b = p.b.clone();
    }
    Ok(worst)
}

/// Scaled residual `|x - y| / max(1, |x|)`.
fn resid(x: &Complex, y: &Complex) -> f64 {
    (x - y).abs_f64() / x.abs_f64().max(1.0)
}

/// Shared limit detector for ordinary and modified approximants.
fn detect<W>(cf: &CfSpec, w: Option<W>, tol: f64, n_max: usize) -> Result<ConvergenceReport>
where
    W: Fn(usize) -> Result<Complex>,
{
    let mut s = Convergents::new(cf, true);
    let mut report = ConvergenceReport {
        value: None,
        n_used: 0,
        residual: f64::INFINITY,
        separate: None,
        flags: Vec::new(),
    };
    // the two most recent finite approximants (n, f_n)
    let mut hist: Vec<(usize, Complex)> = Vec::with_capacity(3);
    let mut last_big = 0usize;
    let mut oscillating = 0usize;
    loop {
        let current = match &w {
            None => {
                if s.b_near_zero() {
                    report.push(CfFlag::BNearZero);
                    None
                } else {
                    Some(&s.a_cur / &s.b_cur)
                }
            }
            Some(w) => {
                let wn = w(s.n)?;
                let num = &s.a_cur + &(&wn * &s.a_prev);
                let den = &s.b_cur + &(&wn * &s.b_prev);
                let scale = s.b_cur.abs_f64().max((&wn * &s.b_prev).abs_f64()).max(num.abs_f64());
                if den.abs_f64() <= cf.precision().exclusion_radius() * scale {
                    report.push(CfFlag::BNearZero);
                    None
                } else {
                    Some(&num / &den)
                }
            }
        };
        if let Some(f) = current {
            if s.exhausted() {
                report.value = Some(f);
                report.n_used = s.n;
                report.residual = 0.0;
                report.push(CfFlag::Terminated);
                return Ok(report);
            }
            if f.abs_f64() > 1.0 / cf.precision().exclusion_radius() {
                last_big = s.n;
            }
            if hist.len() == 2 {
                let r1 = resid(&f, &hist[1].1);
                let r2 = resid(&f, &hist[0].1);
                report.residual = r1;
                report.n_used = s.n;
                if r1 < tol && r2 < tol {
                    report.value = Some(f);
                    if oscillating > 4 {
                        report.push(CfFlag::Oscillation);
                    }
                    return Ok(report);
                }
                if r2 < tol && r1 >= tol {
                    oscillating += 1;
                }
                hist.remove(0);
            }
            hist.push((s.n, f));
        } else if s.exhausted() {
            return Err(QcfError::SingularModification { n: s.n });
        }
        if s.n >= n_max {
            break;
        }
        s.advance()?;
    }
    report.n_used = s.n;
    report.push(CfFlag::Diverged);
    if oscillating > 4 {
        report.push(CfFlag::Oscillation);
    }
    if last_big + 3 >= s.n && last_big > 0 {
        report.push(CfFlag::ApparentInfinity);
    }
    Ok(report)
}

/// Value of the fraction: the first approximant that agrees with both of its two
/// predecessors to `tol` (relative to `max(1, |f_n|)`). Indices whose `B_n` is
/// near zero are skipped. DIVERGED (`value == None`) only after `n_max`.
pub fn evaluate(cf: &CfSpec, tol: f64, n_max: usize) -> Result<ConvergenceReport> {
    detect::<fn(usize) -> Result<Complex>>(cf, None, tol, n_max)
}

/// Limit of the modified approximants `S_n(w_n)` with the same detector as [`evaluate`].
pub fn modified_limit<W>(cf: &CfSpec, w: W, tol: f64, n_max: usize) -> Result<ConvergenceReport>
where
    W: Fn(usize) -> Result<Complex>,
{
    detect(cf, Some(w), tol, n_max)
}

/// `S_n(w) = (A_n + w A_{n-1}) / (B_n + w B_{n-1})`.
pub fn modified_approximant(cf: &CfSpec, n: usize, w: &Complex) -> Result<Complex> {
    let mut s = Convergents::new(cf, true);
    while s.n < n {
        s.advance()?;
    }
    let num = &s.a_cur + &(w * &s.a_prev);
    let den = &s.b_cur + &(w * &s.b_prev);
    let scale = s.b_cur.abs_f64().max((w * &s.b_prev).abs_f64());
    if den.is_zero() || den.abs_f64() <= cf.precision().exclusion_radius() * scale {
        return Err(QcfError::SingularModification { n });
    }
    Ok(&num / &den)
}

/// Outcome of [`check_tail_sequence`].
#[derive(Clone, Debug)]
pub struct TailCheck {
    pub ok: bool,
    /// First index where `g_n = a_{n+1} / (b_{n+1} + g_{n+1})` fails.
    pub first_violation: Option<usize>,
    pub max_deviation: f64,
}

/// Checks the tail recurrence `g_n = a_{n+1} / (b_{n+1} + g_{n+1})` for `n < big_n`.
pub fn check_tail_sequence<G>(cf: &CfSpec, g: G, big_n: usize, tol: f64) -> TailCheck
where
    G: Fn(usize) -> Result<Complex>,
{
    let mut out = TailCheck {
        ok: true,
        first_violation: None,
        max_deviation: 0.0,
    };
    for n in 0..big_n {
        let dev = (|| -> Result<f64> {
            let gn = g(n)?;
            let rhs = cf.a(n + 1)?.checked_div(&(&cf.b(n + 1)? + &g(n + 1)?))?;
            Ok(resid(&gn, &rhs))
        })()
        .unwrap_or(f64::INFINITY);
        if dev.is_nan() || dev >= tol {
            out.ok = false;
            out.first_violation.get_or_insert(n);
        }
        out.max_deviation = out.max_deviation.max(dev);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotSeparate {
    /// `A_n` or `B_n` left the bounded region.
    Unbounded,
    /// No Cauchy stabilization within the index budget.
    NoLimit,
    /// Both limits are zero; the ratio still may converge.
    BothZero,
}

/// Outcome of [`separate_limits`].
#[derive(Clone, Debug)]
pub enum SeparateLimits {
    Limits { a: Complex, b: Complex, n_used: usize },
    NotSeparate(NotSeparate),
}

/// Limits of `A_n` and `B_n` individually, detected by the same two-step
/// Cauchy test as [`evaluate`], without renormalization.
pub fn separate_limits(cf: &CfSpec, tol: f64, n_max: usize) -> Result<SeparateLimits> {
    let mut s = Convergents::new(cf, false);
    let bound = 10f64.powi(cf.precision().get() as i32 / 2);
    let mut hist: Vec<(Complex, Complex)> = Vec::with_capacity(3);
    loop {
        let (a, b) = (s.a_cur.clone(), s.b_cur.clone());
        if a.abs_f64() > bound || b.abs_f64() > bound {
            return Ok(SeparateLimits::NotSeparate(NotSeparate::Unbounded));
        }
        let done = s.exhausted()
            || (hist.len() == 2
                && resid(&a, &hist[1].0) < tol
                && resid(&a, &hist[0].0) < tol
                && resid(&b, &hist[1].1) < tol
                && resid(&b, &hist[0].1) < tol);
        if done {
            let r = cf.precision().exclusion_radius();
            if a.abs_f64() <= r && b.abs_f64() <= r {
                return Ok(SeparateLimits::NotSeparate(NotSeparate::BothZero));
            }
            return Ok(SeparateLimits::Limits { a, b, n_used: s.n });
        }
        if hist.len() == 2 {
            hist.remove(0);
        }
        hist.push((a, b));
        if s.n >= n_max {
            return Ok(SeparateLimits::NotSeparate(NotSeparate::NoLimit));
        }
        s.advance()?;
    }
}
