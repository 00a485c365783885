use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{QcfError, Result};
use crate::qseries::{Complex, ParameterPoint, Precision};

/// Coefficient rule `n -> value` for `n >= 1`.
pub type CoeffRule = Arc<dyn Fn(usize) -> Result<Complex> + Send + Sync>;

/// A continued fraction `b0 + K(a_n / b_n)` given by coefficient rules.
///
/// `len = Some(m)` declares a terminating fraction with partial quotients
/// `1..=m` only; otherwise the fraction is infinite.
#[derive(Clone)]
pub struct CfSpec {
    pub name: String,
    pub b0: Complex,
    num: CoeffRule,
    den: CoeffRule,
    pub params: ParameterPoint,
    len: Option<usize>,
}

impl fmt::Debug for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CfSpec")
            .field("name", &self.name)
            .field("b0", &self.b0)
            .field("len", &self.len)
            .finish_non_exhaustive()
    }
}

/// Wraps a rule so each index is computed once.
pub(crate) fn memoize(rule: CoeffRule) -> CoeffRule {
    let cache: Arc<Mutex<Vec<Option<Complex>>>> = Arc::new(Mutex::new(Vec::new()));
    Arc::new(move |n| {
        if let Some(Some(v)) = cache.lock().expect("coefficient cache").get(n) {
            return Ok(v.clone());
        }
        // the lock is not held while the rule runs; rules may call other cached rules
        let v = rule(n)?;
        let mut c = cache.lock().expect("coefficient cache");
        if c.len() <= n {
            c.resize(n + 1, None);
        }
        c[n] = Some(v.clone());
        Ok(v)
    })
}

impl CfSpec {
    pub fn new<FA, FB>(name: impl Into<String>, b0: Complex, num: FA, den: FB, params: ParameterPoint) -> Self
    where
        FA: Fn(usize) -> Result<Complex> + Send + Sync + 'static,
        FB: Fn(usize) -> Result<Complex> + Send + Sync + 'static,
    {
        CfSpec {
            name: name.into(),
            b0,
            num: Arc::new(num),
            den: Arc::new(den),
            params,
            len: None,
        }
    }

    pub fn from_rules(
        name: impl Into<String>,
        b0: Complex,
        num: CoeffRule,
        den: CoeffRule,
        params: ParameterPoint,
    ) -> Self {
        CfSpec {
            name: name.into(),
            b0,
            num,
            den,
            params,
            len: None,
        }
    }

    /// A terminating fraction `b0 + a_1/(b_1 + ... + a_m/b_m)` from explicit lists.
    pub fn finite(name: impl Into<String>, b0: Complex, a: Vec<Complex>, b: Vec<Complex>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(QcfError::Spec {
                name: name.into(),
                reason: "numerator and denominator lists differ in length".into(),
            });
        }
        let m = a.len();
        let a = Arc::new(a);
        let b = Arc::new(b);
        let nm: String = name.into();
        let (n1, n2) = (nm.clone(), nm.clone());
        Ok(CfSpec::new(
            nm,
            b0,
            move |n| a.get(n.wrapping_sub(1)).cloned().ok_or_else(|| out_of_range(&n1, n)),
            move |n| b.get(n.wrapping_sub(1)).cloned().ok_or_else(|| out_of_range(&n2, n)),
            ParameterPoint::new(),
        )
        .with_len(Some(m)))
    }

    pub fn with_len(mut self, len: Option<usize>) -> Self {
        self.len = len;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_b0(mut self, b0: Complex) -> Self {
        self.b0 = b0;
        self
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        self.len
    }

    pub fn is_terminating(&self) -> bool {
        self.len.is_some()
    }

    pub fn precision(&self) -> Precision {
        self.b0.precision()
    }

    pub fn num_rule(&self) -> CoeffRule {
        self.num.clone()
    }

    pub fn den_rule(&self) -> CoeffRule {
        self.den.clone()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(QcfError::Spec {
                name: self.name.clone(),
                reason: "partial quotients are indexed from 1".into(),
            });
        }
        if let Some(m) = self.len {
            if n > m {
                return Err(out_of_range(&self.name, n));
            }
        }
        Ok(())
    }

    /// Partial numerator `a_n`; an exactly vanishing `a_n` is a specification error.
    pub fn a(&self, n: usize) -> Result<Complex> {
        self.check_index(n)?;
        let v = (self.num)(n)?;
        if v.is_zero() {
            return Err(QcfError::Spec {
                name: self.name.clone(),
                reason: format!("a_{n} = 0"),
            });
        }
        if !v.is_finite() {
            return Err(QcfError::Spec {
                name: self.name.clone(),
                reason: format!("a_{n} is not finite"),
            });
        }
        Ok(v)
    }

    /// Partial denominator `b_n`.
    pub fn b(&self, n: usize) -> Result<Complex> {
        self.check_index(n)?;
        let v = (self.den)(n)?;
        if !v.is_finite() {
            return Err(QcfError::Spec {
                name: self.name.clone(),
                reason: format!("b_{n} is not finite"),
            });
        }
        Ok(v)
    }

    /// `(a_n, b_n)` for `n = 1..=n_max` (fewer if the fraction terminates).
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<(Complex, Complex)>> {
        let top = self.len.map_or(n_max, |m| m.min(n_max));
        (1..=top).map(|n| Ok((self.a(n)?, self.b(n)?))).collect()
    }

    /// Same fraction with both coefficient rules memoized.
    pub fn cached(&self) -> Self {
        CfSpec {
            num: memoize(self.num.clone()),
            den: memoize(self.den.clone()),
            ..self.clone()
        }
    }

    /// `c * (b0 + K(a_n/b_n)) = c b0 + K(a_n'/b_n)` with `a_1' = c a_1`.
    pub fn scale(&self, c: &Complex) -> Self {
        let num = self.num.clone();
        let c2 = c.clone();
        CfSpec {
            name: format!("{}*c", self.name),
            b0: &self.b0 * c,
            num: Arc::new(move |n| if n == 1 { Ok(&num(1)? * &c2) } else { num(n) }),
            ..self.clone()
        }
    }

    /// `1 / (b0 + K(a_n/b_n)) = 0 + 1/(b0 + K(a_n/b_n))`.
    pub fn reciprocal(&self) -> Self {
        let num = self.num.clone();
        let den = self.den.clone();
        let b0 = self.b0.clone();
        let one = self.b0.one_like();
        CfSpec {
            name: format!("1/{}", self.name),
            b0: self.b0.zero_like(),
            num: Arc::new(move |n| if n == 1 { Ok(one.clone()) } else { num(n - 1) }),
            den: Arc::new(move |n| if n == 1 { Ok(b0.clone()) } else { den(n - 1) }),
            params: self.params.clone(),
            len: self.len.map(|m| m + 1),
        }
    }
}

fn out_of_range(name: &str, n: usize) -> QcfError {
    QcfError::Spec {
        name: name.to_string(),
        reason: format!("index {n} is outside the terminating fraction"),
    }
}

/// Right tail starting after the `n`-th partial quotient: `b0' = 0`,
/// `a_k' = a_{n+k}`, `b_k' = b_{n+k}`.
pub fn tail_cf(cf: &CfSpec, n: usize) -> CfSpec {
    let num = cf.num.clone();
    let den = cf.den.clone();
    CfSpec {
        name: format!("{}^({n})", cf.name),
        b0: cf.b0.zero_like(),
        num: Arc::new(move |k| num(k + n)),
        den: Arc::new(move |k| den(k + n)),
        params: cf.params.clone(),
        len: cf.len.map(|m| m.saturating_sub(n)),
    }
}

/// Equivalence transformation `a_n' = r_n r_{n-1} a_n` (`r_0 = 1`), `b_n' = r_n b_n`.
/// Every approximant is unchanged; `r_n = 0` surfaces as a specification error.
pub fn equivalence_transform<F>(cf: &CfSpec, r: F) -> CfSpec
where
    F: Fn(usize) -> Result<Complex> + Send + Sync + 'static,
{
    let name = format!("{}~", cf.name);
    let checked: CoeffRule = {
        let name = name.clone();
        Arc::new(move |n| {
            let v = r(n)?;
            if v.is_zero() {
                Err(QcfError::Spec {
                    name: name.clone(),
                    reason: format!("equivalence factor r_{n} = 0"),
                })
            } else {
                Ok(v)
            }
        })
    };
    let r = memoize(checked);
    let (num, den) = (cf.num.clone(), cf.den.clone());
    let r2 = r.clone();
    CfSpec {
        name,
        b0: cf.b0.clone(),
        num: Arc::new(move |n| {
            let prev = if n == 1 { Ok(r(1)?.one_like()) } else { r(n - 1) }?;
            Ok(&(&r(n)? * &prev) * &num(n)?)
        }),
        den: Arc::new(move |n| Ok(&r2(n)? * &den(n)?)),
        params: cf.params.clone(),
        len: cf.len,
    }
}
