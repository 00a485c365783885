//! The Bauer-Muir transformation and chains of it.
//!
//! For a modifying sequence `w_n`, the transformed fraction has
//! `n`-th approximant `S_n(w_n) = (A_n + w_n A_{n-1}) / (B_n + w_n B_{n-1})`
//! of the original, provided `lambda_n = a_n - w_{n-1}(b_n + w_n)` never vanishes.

mod presets;

pub use presets::{chain_preset, list_presets, thm41_admissible, ChainPreset, PresetFamily};

use std::sync::Arc;

use serde::Serialize;

use crate::cfengine::{evaluate, memoize, tail_cf, CfSpec, CoeffRule};
use crate::error::{QcfError, Result};
use crate::qseries::{rel_diff, Complex, Precision};

/// Rule `n -> w_n` for `n >= 0`.
#[derive(Clone)]
pub struct ModifyingSequence {
    pub name: String,
    rule: CoeffRule,
}

impl std::fmt::Debug for ModifyingSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModifyingSequence({})", self.name)
    }
}

impl ModifyingSequence {
    pub fn new<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(usize) -> Result<Complex> + Send + Sync + 'static,
    {
        ModifyingSequence {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn zero(prec: Precision) -> Self {
        let z = Complex::zero(prec);
        Self::new("zero", move |_| Ok(z.clone()))
    }

    pub fn constant(w: Complex) -> Self {
        Self::new("constant", move |_| Ok(w.clone()))
    }

    pub fn w(&self, n: usize) -> Result<Complex> {
        (self.rule)(n)
    }
}

/// Threshold below which `|lambda_n|`, relative to the size of the terms it is
/// computed from, counts as zero.
fn degeneracy_threshold(prec: Precision) -> f64 {
    prec.structural_tol()
}

fn lambda_checked(cf: &CfSpec, w: &ModifyingSequence, n: usize) -> Result<Complex> {
    let an = cf.a(n)?;
    let prod = &w.w(n - 1)? * &(&cf.b(n)? + &w.w(n)?);
    let l = &an - &prod;
    let scale = an.abs_f64().max(prod.abs_f64());
    if l.is_zero() || l.abs_f64() <= degeneracy_threshold(cf.precision()) * scale {
        return Err(QcfError::BmDegenerate { n, step: None });
    }
    Ok(l)
}

/// `lambda_n = a_n - w_{n-1}(b_n + w_n)` for `n = 1..=big_n`. Zero values are
/// returned, not raised.
pub fn lambda_sequence(cf: &CfSpec, w: &ModifyingSequence, big_n: usize) -> Result<Vec<Complex>> {
    (1..=big_n)
        .map(|n| Ok(&cf.a(n)? - &(&w.w(n - 1)? * &(&cf.b(n)? + &w.w(n)?))))
        .collect()
}

/// A transformed fraction together with what produced it.
#[derive(Clone, Debug)]
pub struct BmResult {
    pub transformed: CfSpec,
    pub source: CfSpec,
    pub w: ModifyingSequence,
}

impl BmResult {
    /// `lambda_n` of the transformation (raises on degeneracy).
    pub fn lambda(&self, n: usize) -> Result<Complex> {
        lambda_checked(&self.source, &self.w, n)
    }
}

/// Bauer-Muir transform of `cf` with respect to `w`:
/// `b0' = b0 + w_0`, `a_1' = lambda_1`, `b_1' = b_1 + w_1`, and for `n >= 2`
/// `a_n' = a_{n-1} lambda_n / lambda_{n-1}`,
/// `b_n' = b_n + w_n - w_{n-2} lambda_n / lambda_{n-1}`.
///
/// Coefficients are produced lazily and memoized; `lambda_1` is checked
/// eagerly, later degeneracies surface when the coefficient is first used.
pub fn bauer_muir(cf: &CfSpec, w: &ModifyingSequence) -> Result<BmResult> {
    let src = cf.cached();
    let w = ModifyingSequence {
        name: w.name.clone(),
        rule: memoize(w.rule.clone()),
    };
    let lam: CoeffRule = {
        let (src, w) = (src.clone(), w.clone());
        memoize(Arc::new(move |n| lambda_checked(&src, &w, n)))
    };
    if src.len() != Some(0) {
        lam(1)?;
    }
    let num: CoeffRule = {
        let (src, lam) = (src.clone(), lam.clone());
        Arc::new(move |n| {
            if n == 1 {
                return lam(1);
            }
            // a_{n-1}/lambda_{n-1} first: it is exactly 1 when w_{n-2} = 0
            let r = src.a(n - 1)?.checked_div(&lam(n - 1)?)?;
            Ok(&r * &lam(n)?)
        })
    };
    let den: CoeffRule = {
        let (src, lam, w) = (src.clone(), lam.clone(), w.clone());
        Arc::new(move |n| {
            let base = &src.b(n)? + &w.w(n)?;
            if n == 1 {
                return Ok(base);
            }
            let wn2 = w.w(n - 2)?;
            if wn2.is_zero() {
                return Ok(base);
            }
            let ratio = lam(n)?.checked_div(&lam(n - 1)?)?;
            Ok(&base - &(&wn2 * &ratio))
        })
    };
    let transformed = CfSpec::from_rules(
        format!("bm({}, {})", cf.name, w.name),
        &src.b0 + &w.w(0)?,
        num,
        den,
        cf.params.clone(),
    )
    .with_len(cf.len())
    .cached();
    Ok(BmResult {
        transformed,
        source: src,
        w,
    })
}

/// Per-index comparison of the transformed approximants with `S_n(w_n)`.
#[derive(Clone, Debug, Serialize)]
pub struct ApproximantCheck {
    pub pass: bool,
    pub max_deviation: f64,
    pub deviations: Vec<f64>,
}

/// Verifies that the `n`-th approximant of the transformed fraction equals
/// `S_n(w_n)` of the original for `n = 0..=big_n`.
pub fn bm_approximant_check(cf: &CfSpec, w: &ModifyingSequence, big_n: usize, tol: f64) -> Result<ApproximantCheck> {
    let bm = bauer_muir(cf, w)?;
    approximant_check(&bm, big_n, tol)
}

pub fn approximant_check(bm: &BmResult, big_n: usize, tol: f64) -> Result<ApproximantCheck> {
    let src = &bm.source;
    let tr = &bm.transformed;
    let one = src.b0.one_like();
    let (mut a0, mut a1, mut b0, mut b1) = (one.clone(), src.b0.clone(), one.zero_like(), one.clone());
    let (mut c0, mut c1, mut d0, mut d1) = (one.clone(), tr.b0.clone(), one.zero_like(), one.clone());
    let top = src.len().map_or(big_n, |m| m.min(big_n));
    let mut deviations = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n > 0 {
            let (an, bn) = (src.a(n)?, src.b(n)?);
            let a2 = &(&bn * &a1) + &(&an * &a0);
            let b2 = &(&bn * &b1) + &(&an * &b0);
            a0 = std::mem::replace(&mut a1, a2);
            b0 = std::mem::replace(&mut b1, b2);
            let (cn, dn) = (tr.a(n)?, tr.b(n)?);
            let c2 = &(&dn * &c1) + &(&cn * &c0);
            let d2 = &(&dn * &d1) + &(&cn * &d0);
            c0 = std::mem::replace(&mut c1, c2);
            d0 = std::mem::replace(&mut d1, d2);
        }
        let wn = bm.w.w(n)?;
        let den = &b1 + &(&wn * &b0);
        let scale = b1.abs_f64().max((&wn * &b0).abs_f64());
        if den.is_zero() || den.abs_f64() <= src.precision().exclusion_radius() * scale {
            return Err(QcfError::SingularModification { n });
        }
        let s = &(&a1 + &(&wn * &a0)) / &den;
        let f = c1.checked_div(&d1).map_err(|_| QcfError::SingularModification { n })?;
        deviations.push(rel_diff(&s, &f));
    }
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(ApproximantCheck {
        pass: max_deviation < tol,
        max_deviation,
        deviations,
    })
}

/// How many leading partial quotients each chain step freezes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeadExtractor {
    pub quotients_per_step: usize,
}

impl Default for HeadExtractor {
    fn default() -> Self {
        HeadExtractor { quotients_per_step: 1 }
    }
}

/// Output of [`bm_chain`].
#[derive(Clone, Debug)]
pub struct ChainResult {
    /// Frozen prefix followed by the current (not yet final) tail.
    pub cf: CfSpec,
    /// Frozen partial denominators `d_0, d_1, ...`.
    pub frozen_b: Vec<Complex>,
    /// Frozen partial numerators `c_1, c_2, ...`.
    pub frozen_a: Vec<Complex>,
    /// Tail entering each step, `T^(0) = cf`, ..., `T^(steps)`.
    pub tails: Vec<CfSpec>,
    /// The transformation performed at each step.
    pub steps: Vec<BmResult>,
    pub head: HeadExtractor,
}

impl ChainResult {
    /// `f_i = value(T^(i)) - d_i`: the remaining correction to the frozen
    /// partial denominator at step `i`.
    pub fn tail_corrections(&self, tol: f64, n_max: usize) -> Result<Vec<Complex>> {
        let k = self.head.quotients_per_step;
        (0..self.steps.len())
            .map(|i| {
                let v = evaluate(&self.tails[i], tol, n_max)?.require()?;
                Ok(&v - &self.frozen_b[i * k])
            })
            .collect()
    }
}

/// Applies `steps` Bauer-Muir transformations: at step `i` the current tail is
/// transformed with `w_family(i)` and its leading partial quotients (per `head`)
/// become final.
pub fn bm_chain<F>(cf: &CfSpec, w_family: F, steps: usize, head: HeadExtractor) -> Result<ChainResult>
where
    F: Fn(usize) -> ModifyingSequence,
{
    let k = head.quotients_per_step.max(1);
    let mut tail = cf.cached();
    let mut tails = vec![tail.clone()];
    let mut results = Vec::with_capacity(steps);
    let mut frozen_b = Vec::new();
    let mut frozen_a = Vec::new();
    for i in 0..steps {
        let r = bauer_muir(&tail, &w_family(i)).map_err(|e| e.at_step(i))?;
        let t = &r.transformed;
        frozen_b.push(t.b0.clone());
        for j in 1..=k {
            frozen_a.push(t.a(j).map_err(|e| e.at_step(i))?);
            if j < k {
                frozen_b.push(t.b(j).map_err(|e| e.at_step(i))?);
            }
        }
        let b_next = t.b(k).map_err(|e| e.at_step(i))?;
        tail = tail_cf(t, k)
            .with_b0(b_next)
            .with_name(format!("{}^[{}]", cf.name, i + 1));
        tails.push(tail.clone());
        results.push(r);
    }
    let assembled = if steps == 0 {
        cf.clone()
    } else {
        assemble(cf, &frozen_b, &frozen_a, &tail)
    };
    Ok(ChainResult {
        cf: assembled,
        frozen_b,
        frozen_a,
        tails,
        steps: results,
        head: HeadExtractor { quotients_per_step: k },
    })
}

fn assemble(cf: &CfSpec, frozen_b: &[Complex], frozen_a: &[Complex], tail: &CfSpec) -> CfSpec {
    let m = frozen_a.len();
    let (fa, fb) = (Arc::new(frozen_a.to_vec()), Arc::new(frozen_b.to_vec()));
    let (t1, t2) = (tail.clone(), tail.clone());
    let len = tail.len().map(|l| l + m);
    CfSpec::new(
        format!("chain({})", cf.name),
        fb[0].clone(),
        move |n| if n <= m { Ok(fa[n - 1].clone()) } else { t1.a(n - m) },
        move |n| match n.cmp(&m) {
            std::cmp::Ordering::Less => Ok(fb[n].clone()),
            std::cmp::Ordering::Equal => Ok(t2.b0.clone()),
            std::cmp::Ordering::Greater => t2.b(n - m),
        },
        cf.params.clone(),
    )
    .with_len(len)
}
