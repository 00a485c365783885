//! Extended-precision scalars and the q-series building blocks: q-Pochhammer
//! symbols, basic hypergeometric 2phi1, Ramanujan's G, Hirschhorn's H and a
//! few closed-form product evaluations.

mod complex;
mod point;
mod series;

pub use complex::{rel_diff, Complex, Precision};
pub use point::{ParameterPoint, Sym};
pub use series::{SeriesResult, DEFAULT_MAX_TERMS};

pub(crate) use series::sum_by_ratio;

use crate::error::{QcfError, Result};

/// Length of a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLen {
    Finite(usize),
    Infinite,
}

fn require_unit_disk(q: &Complex) -> Result<()> {
    let m = q.abs_f64();
    if m < 1.0 {
        Ok(())
    } else {
        Err(QcfError::domain(format!("|q| = {m} is not < 1")))
    }
}

/// `(a;q)_n = (1 - a)(1 - aq)...(1 - aq^{n-1})`.
pub fn qpoch_finite(a: &Complex, q: &Complex, n: usize) -> Complex {
    let mut p = a.one_like();
    let mut aqk = a.clone();
    for k in 0..n {
        p = &p * &(&a.one_like() - &aqk);
        if k + 1 < n {
            aqk = &aqk * q;
        }
    }
    p
}

/// `(a;q)_inf` by partial products.
///
/// After N factors the remaining log-product is bounded by `2x` with
/// `x = |a||q|^N / (1 - |q|)` (valid once `x <= 1/2`), so the absolute error is at
/// most `|P_N| (e^{2x} - 1)`.
pub fn qpoch_infinite(a: &Complex, q: &Complex, tol: f64) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    let mq = q.abs_f64();
    let ma = a.abs_f64();
    let one = a.one_like();
    let mut p = one.clone();
    let mut aqk = a.clone();
    let mut qn = 1.0f64;
    for n in 0..=DEFAULT_MAX_TERMS {
        let x = ma * qn / (1.0 - mq);
        if x <= 0.5 {
            let bound = p.abs_f64() * (2.0 * x).exp_m1();
            if bound <= tol {
                return Ok(SeriesResult {
                    value: p,
                    terms_used: n,
                    tail_bound: bound,
                });
            }
        }
        p = &p * &(&one - &aqk);
        aqk = &aqk * q;
        qn *= mq;
    }
    Err(QcfError::NoConvergence {
        terms: DEFAULT_MAX_TERMS,
        tail_bound: ma * qn / (1.0 - mq),
    })
}

/// `(a_1, ..., a_k; q)_n = (a_1;q)_n ... (a_k;q)_n`.
pub fn qpoch_multi(values: &[Complex], q: &Complex, len: PochLen, tol: f64) -> Result<SeriesResult> {
    let mut acc = SeriesResult::exact(q.one_like());
    match len {
        PochLen::Finite(n) => {
            for a in values {
                acc.value = &acc.value * &qpoch_finite(a, q, n);
            }
        }
        PochLen::Infinite => {
            require_unit_disk(q)?;
            // split the budget so the combined bound stays below tol
            let each = tol / values.len().max(1) as f64 / 4.0;
            for a in values {
                acc = acc.mul(&qpoch_infinite(a, q, each)?);
            }
        }
    }
    Ok(acc)
}

/// Quotient of two infinite q-Pochhammer products,
/// `(num_1, ..., num_k; q)_inf / (den_1, ..., den_m; q)_inf`.
pub fn qpoch_ratio(num: &[Complex], den: &[Complex], q: &Complex, tol: f64) -> Result<SeriesResult> {
    let top = qpoch_multi(num, q, PochLen::Infinite, tol / 4.0)?;
    let bottom = qpoch_multi(den, q, PochLen::Infinite, tol / 4.0)?;
    let radius = q.precision().exclusion_radius();
    if bottom.value.abs_f64() <= radius {
        return Err(QcfError::domain("denominator product vanishes"));
    }
    top.div(&bottom)
}

/// Basic hypergeometric series
/// `2phi1(a, b; c; q; z) = sum_n (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n) z^n`.
pub fn phi21(
    a: &Complex,
    b: &Complex,
    c: &Complex,
    q: &Complex,
    z: &Complex,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    let one = q.one_like();
    let mut qn = one.clone();
    sum_by_ratio(
        one.clone(),
        |_| {
            let num = &(&(&one - &(a * &qn)) * &(&one - &(b * &qn))) * z;
            let qn1 = &qn * q;
            let den = &(&one - &(c * &qn)) * &(&one - &qn1);
            qn = qn1;
            (num, den)
        },
        tol,
        max_terms,
    )
}

/// Ramanujan's
/// `G(a, lambda; b; q) = sum_n q^{n(n+1)/2} (a + lambda)(a + lambda q)...(a + lambda q^{n-1})
///  / ((q;q)_n (1 + bq)...(1 + bq^n))`.
pub fn g_fn(
    a: &Complex,
    lambda: &Complex,
    b: &Complex,
    q: &Complex,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    let one = q.one_like();
    // q^{n-1} at step n
    let mut qprev = one.clone();
    sum_by_ratio(
        one.clone(),
        |_| {
            let qn = &qprev * q;
            let num = &qn * &(a + &(lambda * &qprev));
            let den = &(&one - &qn) * &(&one + &(b * &qn));
            qprev = qn;
            (num, den)
        },
        tol,
        max_terms,
    )
}

/// Hirschhorn's
/// `H(a, b, c, x) = sum_r x^{r(r-1)/2} (b + cx)...(b + cx^r) / ((x;x)_r (a;x)_{r+1})`.
pub fn hirschhorn_h(
    a: &Complex,
    b: &Complex,
    c: &Complex,
    x: &Complex,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    require_unit_disk(x)?;
    if a.abs_f64() >= 1.0 {
        return Err(QcfError::domain("H(a, b, c, x) needs |a| < 1"));
    }
    let one = x.one_like();
    let first = one.checked_div(&(&one - a))?;
    let mut xprev = one.clone();
    sum_by_ratio(
        first,
        |_| {
            let xr = &xprev * x;
            let num = &xprev * &(b + &(c * &xr));
            let den = &(&one - &xr) * &(&one - &(a * &xr));
            xprev = xr;
            (num, den)
        },
        tol,
        max_terms,
    )
}

/// Right side of Jackson's transformation of 2phi1:
/// `(az;q)_inf / (z;q)_inf * sum_k (a, c/b; q)_k / (c, az, q; q)_k (-bz)^k q^{k(k-1)/2}`.
pub fn jackson_rhs(a: &Complex, b: &Complex, c: &Complex, q: &Complex, z: &Complex, tol: f64) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    if b.is_zero() {
        return Err(QcfError::domain("Jackson transform needs b != 0"));
    }
    let one = q.one_like();
    let az = a * z;
    let cb = c.checked_div(b)?;
    let mbz = -(b * z);
    let prefactor = qpoch_ratio(std::slice::from_ref(&az), std::slice::from_ref(z), q, tol / 4.0)?;
    let mut qk = one.clone();
    let sum = sum_by_ratio(
        one.clone(),
        |_| {
            let num = &(&(&(&one - &(a * &qk)) * &(&one - &(&cb * &qk))) * &mbz) * &qk;
            let qk1 = &qk * q;
            let den = &(&(&one - &(c * &qk)) * &(&one - &(&az * &qk))) * &(&one - &qk1);
            qk = qk1;
            (num, den)
        },
        tol / 4.0,
        DEFAULT_MAX_TERMS,
    )?;
    Ok(prefactor.mul(&sum))
}

/// Product side of the Bailey-Daum summation:
/// `(-q;q)_inf (aq, aq^2/b^2; q^2)_inf / (aq/b, -q/b; q)_inf`.
pub fn bailey_daum_rhs(a: &Complex, b: &Complex, q: &Complex, tol: f64) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    let qb = q.checked_div(b)?;
    if qb.abs_f64() >= 1.0 {
        return Err(QcfError::domain("Bailey-Daum needs |q/b| < 1"));
    }
    let q2 = q * q;
    let aq = a * q;
    let t = tol / 4.0;
    let minus_q = qpoch_infinite(&(-q), q, t)?;
    let even = qpoch_multi(&[aq.clone(), &(&aq * q) / &(b * b)], &q2, PochLen::Infinite, t)?;
    let den = qpoch_multi(&[&aq / b, -&qb], q, PochLen::Infinite, t)?;
    if den.value.abs_f64() <= q.precision().exclusion_radius() {
        return Err(QcfError::domain("Bailey-Daum denominator vanishes"));
    }
    minus_q.mul(&even).div(&den)
}

/// Series side of the Bailey-Daum summation, `2phi1(a, b; aq/b; q; -q/b)`.
pub fn bailey_daum_lhs(a: &Complex, b: &Complex, q: &Complex, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    let qb = q.checked_div(b)?;
    phi21(a, b, &(a * &qb), q, &(-&qb), tol, max_terms)
}

/// Product side of the q-binomial theorem, `(sb;q)_inf / (sa;q)_inf` with `s = sign`.
pub fn qbinomial_ratio(a: &Complex, b: &Complex, q: &Complex, sign: i8, tol: f64) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    if a.abs_f64() >= 1.0 {
        return Err(QcfError::domain("q-binomial evaluation needs |a| < 1"));
    }
    let (sa, sb) = if sign < 0 { (-a, -b) } else { (a.clone(), b.clone()) };
    qpoch_ratio(&[sb], &[sa], q, tol)
}

/// Series side of the q-binomial theorem,
/// `sum_n (b/a;q)_n / (q;q)_n (sa)^n = sum_n prod_{k<n} (a - bq^k) s^n / (q;q)_n`.
pub fn qbinomial_series(
    a: &Complex,
    b: &Complex,
    q: &Complex,
    sign: i8,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    require_unit_disk(q)?;
    let one = q.one_like();
    let s = if sign < 0 { -&one } else { one.clone() };
    let mut qn = one.clone();
    sum_by_ratio(
        one.clone(),
        |_| {
            let num = &s * &(a - &(b * &qn));
            qn = &qn * q;
            (num, &one - &qn)
        },
        tol,
        max_terms,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision::DEFAULT;

    fn c(x: f64) -> Complex {
        Complex::from_f64(x, P)
    }

    fn cx(s: &str) -> Complex {
        Complex::parse(s, P).unwrap()
    }

    fn close(x: &Complex, y: &Complex, tol: f64) -> bool {
        rel_diff(x, y) < tol
    }

    /// Naive product with a fixed, generous number of factors.
    fn oracle_qpoch_inf(a: &Complex, q: &Complex) -> Complex {
        qpoch_finite(a, q, 600)
    }

    #[test]
    fn qpoch_finite_examples() {
        assert_eq!(qpoch_finite(&c(0.7), &c(0.3), 0), c(1.0));
        assert!(qpoch_finite(&c(1.0), &c(0.3), 3).is_zero());
        assert!(close(&qpoch_finite(&cx("0.5"), &cx("0.1"), 2), &cx("0.475"), 1e-45));
    }

    #[test]
    fn qpoch_infinite_examples() {
        let r = qpoch_infinite(&c(0.0), &c(0.5), 1e-30).unwrap();
        assert_eq!(r.value, c(1.0));
        let r = qpoch_infinite(&cx("0.4"), &c(0.0), 1e-30).unwrap();
        assert!(close(&r.value, &cx("0.6"), 1e-45));
        let r = qpoch_infinite(&c(0.5), &c(0.5), 1e-30).unwrap();
        assert!((r.value.re_f64() - 0.2887880951).abs() < 1e-10);
        assert!(r.tail_bound <= 1e-30);
        assert!((&r.value - &oracle_qpoch_inf(&c(0.5), &c(0.5))).abs_f64() <= r.tail_bound);
        assert!(matches!(
            qpoch_infinite(&c(0.5), &c(1.0), 1e-30),
            Err(QcfError::Domain(_))
        ));
    }

    #[test]
    fn qpoch_multi_examples() {
        let q = c(0.3);
        let r = qpoch_multi(&[c(0.2), cx("0.1+0.4i")], &q, PochLen::Finite(0), 1e-30).unwrap();
        assert_eq!(r.value, c(1.0));
        let single = qpoch_multi(&[c(0.2)], &q, PochLen::Infinite, 1e-30).unwrap();
        let direct = qpoch_infinite(&c(0.2), &q, 1e-30).unwrap();
        assert!(close(&single.value, &direct.value, 1e-30));
        let q = c(0.25);
        let two = qpoch_multi(&[c(0.2), c(0.3)], &q, PochLen::Infinite, 1e-35).unwrap();
        let oracle = &oracle_qpoch_inf(&c(0.2), &q) * &oracle_qpoch_inf(&c(0.3), &q);
        assert!(close(&two.value, &oracle, 1e-35));
    }

    #[test]
    fn phi21_examples() {
        let (q, a, b, cc) = (c(0.3), c(0.2), c(0.5), c(0.7));
        let r = phi21(&a, &b, &cc, &q, &c(0.0), 1e-40, 100).unwrap();
        assert_eq!(r.value, c(1.0));
        let r = phi21(&q, &q, &q, &q, &c(0.5), 1e-40, 1000).unwrap();
        assert!(close(&r.value, &c(2.0), 1e-39));
        // q-binomial theorem
        let z = c(0.4);
        let r = phi21(&a, &cc, &cc, &q, &z, 1e-40, 1000).unwrap();
        let oracle = &oracle_qpoch_inf(&(&a * &z), &q) / &oracle_qpoch_inf(&z, &q);
        assert!(close(&r.value, &oracle, 1e-38));
    }

    #[test]
    fn phi21_pole_in_c() {
        let q = c(0.5);
        // c = q^{-2}
        let cc = q.powi(-2).unwrap();
        let e = phi21(&c(0.3), &c(0.2), &cc, &q, &c(0.3), 1e-30, 100).unwrap_err();
        assert!(matches!(e, QcfError::Domain(_)));
    }

    #[test]
    fn phi21_terminates_for_negative_integer_power() {
        let q = c(0.5);
        let a = q.powi(-3).unwrap();
        let r = phi21(&a, &c(0.2), &c(0.1), &q, &c(3.0), 1e-30, 100).unwrap();
        assert_eq!(r.tail_bound, 0.0);
        assert_eq!(r.terms_used, 4);
    }

    #[test]
    fn g_fn_examples() {
        let r = g_fn(&c(0.0), &c(0.0), &c(0.9), &c(0.3), 1e-40, 100).unwrap();
        assert_eq!(r.value, c(1.0));
        let r = g_fn(&c(0.2), &c(0.4), &c(0.9), &c(0.0), 1e-40, 100).unwrap();
        assert_eq!(r.value, c(1.0));
        // term-by-term oracle at doubled precision
        let p2 = P.doubled();
        let (a, l, b, q) = (
            Complex::parse("0.2", p2).unwrap(),
            Complex::parse("0.1", p2).unwrap(),
            Complex::parse("0.3", p2).unwrap(),
            Complex::parse("0.1", p2).unwrap(),
        );
        let mut sum = Complex::zero(p2);
        for n in 0..40u64 {
            let mut num = q.pow(n * (n + 1) / 2);
            let mut den = qpoch_finite(&q, &q, n as usize);
            for k in 0..n {
                num = &num * &(&a + &(&l * &q.pow(k)));
                den = &den * &(&Complex::one(p2) + &(&b * &q.pow(k + 1)));
            }
            sum = &sum + &(&num / &den);
        }
        let r = g_fn(&cx("0.2"), &cx("0.1"), &cx("0.3"), &cx("0.1"), 1e-40, 100).unwrap();
        assert!(rel_diff(&r.value, &sum.with_precision(P)) < 1e-40);
        assert!(r.tail_bound < 1e-40);
    }

    #[test]
    fn g_fn_pole_in_b() {
        let q = c(0.5);
        let b = -&q.powi(-2).unwrap();
        assert!(g_fn(&c(0.3), &c(0.2), &b, &q, 1e-30, 100).is_err());
    }

    #[test]
    fn hirschhorn_examples() {
        let r = hirschhorn_h(&cx("0.3+0.2i"), &c(0.0), &c(0.0), &c(0.4), 1e-40, 100).unwrap();
        let one = c(1.0);
        assert!(close(&r.value, &(&one / &(&one - &cx("0.3+0.2i"))), 1e-45));
        // a = 0, b = 1, c = 0: sum x^{r(r-1)/2} / (x;x)_r
        let x = c(0.3);
        let mut s = c(0.0);
        for rr in 0..60u64 {
            s = &s + &(&x.pow(rr * (rr.saturating_sub(1)) / 2) / &qpoch_finite(&x, &x, rr as usize));
        }
        let r = hirschhorn_h(&c(0.0), &c(1.0), &c(0.0), &x, 1e-40, 1000).unwrap();
        assert!(close(&r.value, &s, 1e-40));
        assert!(hirschhorn_h(&c(1.5), &c(1.0), &c(0.0), &x, 1e-40, 1000).is_err());
    }

    #[test]
    fn hirschhorn_general_point_matches_direct_sum() {
        let p2 = P.doubled();
        let (a, b, cc, x) = (
            Complex::parse("0.2", p2).unwrap(),
            Complex::parse("0.3", p2).unwrap(),
            Complex::parse("0.1", p2).unwrap(),
            Complex::parse("0.25", p2).unwrap(),
        );
        let mut s = Complex::zero(p2);
        for r in 0..60u64 {
            let mut num = x.pow(r * r.saturating_sub(1) / 2);
            for k in 1..=r {
                num = &num * &(&b + &(&cc * &x.pow(k)));
            }
            let den = &qpoch_finite(&x, &x, r as usize) * &qpoch_finite(&a, &x, r as usize + 1);
            s = &s + &(&num / &den);
        }
        let h = hirschhorn_h(&cx("0.2"), &cx("0.3"), &cx("0.1"), &cx("0.25"), 1e-40, 1000).unwrap();
        assert!(rel_diff(&h.value, &s.with_precision(P)) < 1e-40);
    }

    #[test]
    fn jackson_examples() {
        let q = c(0.3);
        let r = jackson_rhs(&c(0.2), &c(0.5), &c(0.7), &q, &c(0.0), 1e-40).unwrap();
        assert!(close(&r.value, &c(1.0), 1e-45));
        let (a, b, cc, z) = (cx("0.2"), cx("0.5"), cx("0.7"), cx("0.4"));
        let j = jackson_rhs(&a, &b, &cc, &q, &z, 1e-40).unwrap();
        let d = phi21(&a, &b, &cc, &q, &z, 1e-40, 1000).unwrap();
        assert!((&j.value - &d.value).abs_f64() <= j.tail_bound + d.tail_bound + 1e-45);
        let j = jackson_rhs(&a, &b, &b, &q, &z, 1e-40).unwrap();
        let oracle = &oracle_qpoch_inf(&(&a * &z), &q) / &oracle_qpoch_inf(&z, &q);
        assert!(close(&j.value, &oracle, 1e-38));
        assert!(jackson_rhs(&a, &c(0.0), &cc, &q, &z, 1e-40).is_err());
    }

    #[test]
    fn bailey_daum_examples() {
        let q = c(0.3);
        let r = bailey_daum_rhs(&c(0.0), &c(2.0), &q, 1e-40).unwrap();
        let oracle = &oracle_qpoch_inf(&c(-0.3), &q) / &oracle_qpoch_inf(&c(-0.15), &q);
        assert!(close(&r.value, &oracle, 1e-40));
        let r = bailey_daum_rhs(&c(0.4), &c(2.0), &c(0.0), 1e-40).unwrap();
        assert_eq!(r.value, c(1.0));
        let (a, b, q) = (cx("0.3"), c(3.0), cx("0.2"));
        let lhs = bailey_daum_lhs(&a, &b, &q, 1e-40, 1000).unwrap();
        let rhs = bailey_daum_rhs(&a, &b, &q, 1e-40).unwrap();
        assert!(close(&lhs.value, &rhs.value, 1e-38));
        assert!(bailey_daum_rhs(&a, &c(0.1), &q, 1e-40).is_err());
    }

    #[test]
    fn qbinomial_examples() {
        let q = c(0.3);
        let a = cx("0.4");
        let r = qbinomial_ratio(&a, &a, &q, 1, 1e-40).unwrap();
        assert!(close(&r.value, &c(1.0), 1e-45));
        let r = qbinomial_ratio(&a, &c(0.0), &q, 1, 1e-40).unwrap();
        assert!(close(&r.value, &(&c(1.0) / &oracle_qpoch_inf(&a, &q)), 1e-40));
        let (a, b, q) = (cx("0.3"), cx("0.5"), cx("0.25"));
        let s = qbinomial_series(&a, &b, &q, -1, 1e-40, 1000).unwrap();
        let p = qbinomial_ratio(&a, &b, &q, -1, 1e-40).unwrap();
        assert!(close(&s.value, &p.value, 1e-38));
    }

    fn polar(r: f64, t: f64) -> Complex {
        Complex::from_polar_f64(r, t, P)
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(50))]

        #[test]
        fn pochhammer_splits(r in 0.0f64..2.0, t in 0.0f64..6.3, rq in 0.05f64..0.95, tq in 0.0f64..6.3, m in 0usize..40, n in 0usize..40) {
            let (a, q) = (polar(r, t), polar(rq, tq));
            let whole = qpoch_finite(&a, &q, m + n);
            let split = &qpoch_finite(&a, &q, m) * &qpoch_finite(&(&a * &q.pow(m as u64)), &q, n);
            let scale = whole.abs_f64().max(split.abs_f64()).max(1e-300);
            let d = (&whole - &split).abs_f64() / scale;
            proptest::prop_assert!(d < P.structural_tol(), "deviation {d:e}");
        }

        #[test]
        fn jackson_agrees_with_direct_sum(
            ra in 0.05f64..0.9, ta in 0.0f64..6.3,
            rb in 0.2f64..0.9, tb in 0.0f64..6.3,
            rc in 0.05f64..0.9, tc in 0.0f64..6.3,
            rq in 0.05f64..0.6, tq in 0.0f64..6.3,
            rz in 0.05f64..0.6, tz in 0.0f64..6.3,
        ) {
            let (a, b, cc, q, z) = (polar(ra, ta), polar(rb, tb), polar(rc, tc), polar(rq, tq), polar(rz, tz));
            let j = jackson_rhs(&a, &b, &cc, &q, &z, 1e-45).unwrap();
            let d = phi21(&a, &b, &cc, &q, &z, 1e-45, 5000).unwrap();
            let dev = rel_diff(&j.value, &d.value);
            proptest::prop_assert!(dev < P.structural_tol(), "deviation {dev:e}");
        }
    }
}
