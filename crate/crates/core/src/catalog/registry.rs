use std::f64::consts::TAU;

use super::families;
use super::sample::Draw;
use super::{EvalOptions, IdentityRecord, Sampler, Side};
use crate::bauermuir::thm41_admissible;
use crate::cfengine::CfSpec;
use crate::error::{QcfError, Result};
use crate::qseries::{
    g_fn, hirschhorn_h, jackson_rhs, phi21, qbinomial_ratio, qpoch_infinite, qpoch_multi, qpoch_ratio, sum_by_ratio,
    Complex, ParameterPoint, PochLen, SeriesResult, Sym,
};

use Sym::{Lambda as L, A, B, C, Q, X, Z};

fn vals<const N: usize>(p: &ParameterPoint, syms: [Sym; N]) -> Result<[Complex; N]> {
    for s in syms {
        p.get(s)?;
    }
    Ok(syms.map(|s| p.get(s).unwrap().clone()))
}

fn exact(v: Complex) -> SeriesResult {
    SeriesResult::exact(v)
}

// ---- domain helpers ----

fn lt(x: &Complex, r: f64, m: f64) -> bool {
    x.abs_f64() < r - m
}

fn gt(x: &Complex, r: f64, m: f64) -> bool {
    x.abs_f64() > r + m
}

/// Every factor `1 - x q^k` of `(x;q)_inf` is at least `m` away from zero.
fn poch_clear(x: &Complex, q: &Complex, m: f64) -> bool {
    let one = q.one_like();
    let mut t = x.clone();
    for _ in 0..10_000 {
        if t.abs_f64() < 1.0 - m {
            return true;
        }
        if (&one - &t).abs_f64() <= m {
            return false;
        }
        t = &t * q;
    }
    false
}

fn div(x: &Complex, y: &Complex) -> Result<Complex> {
    x.checked_div(y)
}

// ---- G ratio family ----

fn g(a: &Complex, l: &Complex, b: &Complex, q: &Complex, o: &EvalOptions) -> Result<SeriesResult> {
    g_fn(a, l, b, q, o.tol, o.max_terms)
}

/// `G(a, l; b; q) / G(aq, lq; b; q)`.
fn g_ratio(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [q, a, b, l] = vals(p, [Q, A, B, L])?;
    g(&a, &l, &b, &q, o)?.div(&g(&(&a * &q), &(&l * &q), &b, &q, o)?)
}

fn g_ratio_inv(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    g_ratio(p, o)?.recip()
}

fn hirsch_g_ratio(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [q, a, b, l] = vals(p, [Q, A, B, L])?;
    let mb = -&b;
    let aq = &a * &q;
    let top = hirschhorn_h(&mb, &aq, &l, &q, o.tol, o.max_terms)?;
    let bottom = hirschhorn_h(&mb, &(&aq * &q), &(&l * &q), &q, o.tol, o.max_terms)?;
    top.div(&bottom)
}

fn gfam(p: &ParameterPoint) -> Result<[Complex; 4]> {
    vals(p, [A, L, B, Q])
}

/// f1, cut before its first numerator when `a = l = 0` (value 1).
fn cf_f1(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, l, b, q] = gfam(p)?;
    let cf = families::f1(&a, &l, &b, &q);
    Ok(if a.is_zero() && l.is_zero() {
        cf.with_len(Some(0))
    } else {
        cf
    })
}

fn cf_gcf1(p: &ParameterPoint) -> Result<CfSpec> {
    Ok(cf_f1(p)?.reciprocal().with_name("gcf1"))
}

fn cf_f2(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, l, b, q] = gfam(p)?;
    Ok(families::f2(&a, &l, &b, &q))
}

fn cf_f3(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, l, b, q] = gfam(p)?;
    Ok(families::f3(&a, &l, &b, &q))
}

fn cf_f4(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, l, b, q] = gfam(p)?;
    Ok(families::f4(&a, &l, &b, &q))
}

fn cf_cor2(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, l, b, q] = gfam(p)?;
    Ok(families::cor2(&a, &l, &b, &q))
}

fn d_g_base(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [q, b] = vals(p, [Q, B])?;
    Ok(lt(&q, 1.0, m) && poch_clear(&-&(&b * &q), &q, m))
}

fn all_zero(p: &ParameterPoint) -> Result<bool> {
    let [a, b, l] = vals(p, [A, B, L])?;
    Ok(a.is_zero() && b.is_zero() && l.is_zero())
}

fn d_gcf(p: &ParameterPoint, m: f64) -> Result<bool> {
    Ok(d_g_base(p, m)? && thm41_admissible(p, m)?)
}

/// As [`d_gcf`], but `a = b = l = 0` is allowed: both sides are then 1.
fn d_gcf1(p: &ParameterPoint, m: f64) -> Result<bool> {
    Ok(d_g_base(p, m)? && (all_zero(p)? || thm41_admissible(p, m)?))
}

fn d_gcf2(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [q, a] = vals(p, [Q, A])?;
    Ok(d_gcf(p, m)? && lt(&(&a * &q), 1.0, m))
}

fn d_gcf4(p: &ParameterPoint, m: f64) -> Result<bool> {
    let b = p.get(B)?;
    Ok(d_gcf(p, m)? && lt(b, 1.0, m))
}

// ---- Hirschhorn ----

fn hirsch_ratio(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, x] = vals(p, [A, B, C, X])?;
    let top = hirschhorn_h(&a, &b, &c, &x, o.tol, o.max_terms)?;
    top.div(&hirschhorn_h(&a, &(&b * &x), &(&c * &x), &x, o.tol, o.max_terms)?)
}

fn cf_hirsch(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, c, x] = vals(p, [A, B, C, X])?;
    Ok(families::hirschhorn(&a, &b, &c, &x))
}

fn d_hirsch(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, x] = vals(p, [A, X])?;
    Ok(lt(&x, 1.0, m) && lt(&a, 1.0, m))
}

// ---- Heine family ----

fn phi(a: &Complex, b: &Complex, c: &Complex, q: &Complex, z: &Complex, o: &EvalOptions) -> Result<SeriesResult> {
    phi21(a, b, c, q, z, o.tol, o.max_terms)
}

fn heine_vals(p: &ParameterPoint) -> Result<[Complex; 5]> {
    vals(p, [A, B, C, Q, Z])
}

/// `2phi1(a,b;c;q;z) / 2phi1(a,bq;cq;q;z)`.
fn heine_ratio(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, q, z] = heine_vals(p)?;
    phi(&a, &b, &c, &q, &z, o)?.div(&phi(&a, &(&b * &q), &(&c * &q), &q, &z, o)?)
}

fn scaled_heine_ratio(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let c = p.get(C)?;
    Ok(heine_ratio(p, o)?.scale(&(&c.one_like() - c)))
}

fn thm25_outer(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, q, z] = heine_vals(p)?;
    let one = q.one_like();
    let t = div(&(&a * &z), &q)?;
    let qa = div(&q, &a)?;
    let ca = div(&c, &a)?;
    let bqa = &b * &qa;
    let w = div(&q, &z)?;
    let top = phi(&qa, &ca, &bqa, &q, &w, o)?;
    let bottom = phi(&qa, &(&ca * &q), &(&bqa * &q), &q, &w, o)?;
    Ok(top.div(&bottom)?.scale(&(&t * &(&one - &bqa))))
}

fn heine_iterate_rhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, q, z] = heine_vals(p)?;
    let one = q.one_like();
    let bz = &b * &z;
    let e = div(&(&(&a * &b) * &z), &c)?;
    let w = div(&c, &b)?;
    let top = phi(&e, &b, &bz, &q, &w, o)?;
    let bottom = phi(&e, &(&b * &q), &(&bz * &q), &q, &w, o)?;
    let k = div(&(&one - &bz), &(&one - &c))?;
    Ok(top.div(&bottom)?.scale(&k))
}

fn phi_direct(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, q, z] = heine_vals(p)?;
    phi(&a, &b, &c, &q, &z, o)
}

fn phi_jackson(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, c, q, z] = heine_vals(p)?;
    jackson_rhs(&a, &b, &c, &q, &z, o.tol)
}

fn cf_heine(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, c, q, z] = heine_vals(p)?;
    Ok(families::heine(&a, &b, &c, &q, &z))
}

fn cf_heine2(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, c, q, z] = heine_vals(p)?;
    let k = (&c.one_like() - &c).recip()?;
    Ok(families::heine2(&a, &b, &c, &q, &z).scale(&k))
}

fn cf_thm25(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, c, q, z] = heine_vals(p)?;
    families::thm25(&a, &b, &c, &q, &z)
}

fn w_thm25(p: &ParameterPoint) -> Result<Complex> {
    let [a, q, z] = vals(p, [A, Q, Z])?;
    Ok(-&div(&(&a * &z), &q)?)
}

fn d_heine(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [c, q, z] = vals(p, [C, Q, Z])?;
    Ok(lt(&q, 1.0, m) && lt(&z, 1.0, m) && poch_clear(&c, &q, m))
}

fn d_heine2(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [b, c] = vals(p, [B, C])?;
    Ok(d_heine(p, m)? && gt(&b, 0.0, m) && lt(&div(&c, &b)?, 1.0, m))
}

fn d_heine_iterate(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [b, c, q, z] = vals(p, [B, C, Q, Z])?;
    Ok(d_heine2(p, m)? && gt(&c, 0.0, m) && poch_clear(&(&b * &z), &q, m))
}

fn d_jackson(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q, z] = vals(p, [A, B, Q, Z])?;
    Ok(d_heine(p, m)? && gt(&b, 0.0, m) && poch_clear(&(&a * &z), &q, m))
}

fn t_of(p: &ParameterPoint) -> Result<Complex> {
    let [a, q, z] = vals(p, [A, Q, Z])?;
    div(&(&a * &z), &q)
}

fn d_thm25_common(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, c, q] = vals(p, [A, C, Q])?;
    Ok(lt(&q, 1.0, m) && gt(&q, 0.0, m) && gt(&a, 0.0, m) && poch_clear(&c, &q, m))
}

fn d_thm25i(p: &ParameterPoint, m: f64) -> Result<bool> {
    let z = p.get(Z)?;
    Ok(d_thm25_common(p, m)? && lt(z, 1.0, m) && lt(&t_of(p)?, 1.0, m))
}

/// Points on the unit circle are built to working precision; this slack only
/// absorbs rounding in the modulus.
const UNIT_CIRCLE_SLACK: f64 = 1e-12;

fn d_thm25ii(p: &ParameterPoint, m: f64) -> Result<bool> {
    let z = p.get(Z)?;
    let t = t_of(p)?;
    let on_circle = (t.abs_f64() - 1.0).abs() <= UNIT_CIRCLE_SLACK;
    Ok(d_thm25_common(p, m)? && lt(z, 1.0, m) && on_circle && gt(&(&t - &t.one_like()), 0.0, m))
}

fn d_thm25iii(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q, z] = vals(p, [A, B, Q, Z])?;
    if !d_thm25_common(p, m)? || !gt(&z, 0.0, m) {
        return Ok(false);
    }
    Ok(gt(&t_of(p)?, 1.0, m) && lt(&div(&q, &z)?, 1.0, m) && poch_clear(&div(&(&b * &q), &a)?, &q, m))
}

fn heine_draw(d: &mut Draw) -> ParameterPoint {
    let mut p = d.generic(&[A, B, C, Q], false);
    p.set(Z, d.polar(0.05, 0.5));
    p
}

fn s_heine(d: &mut Draw) -> Result<ParameterPoint> {
    Ok(heine_draw(d))
}

fn s_thm25ii(d: &mut Draw) -> Result<ParameterPoint> {
    let mut p = d.generic(&[A, B, C, Q], false);
    let theta = d.uniform(0.3, TAU - 0.3);
    let u = d.unit(theta);
    let z = div(&(p.get(Q)? * &u), p.get(A)?)?;
    p.set(Z, z);
    Ok(p)
}

fn s_thm25iii(d: &mut Draw) -> Result<ParameterPoint> {
    let mut p = d.generic(&[A, B, C, Z], false);
    let s = d.uniform(0.2, 0.8);
    let phase = d.phase();
    let r = s * p.get(A)?.abs_f64() * p.get(Z)?.abs_f64();
    p.set(Q, Complex::from_polar_f64(r, phase, d.prec));
    Ok(p)
}

// ---- corollaries in q^2 ----

fn q_only(p: &ParameterPoint) -> Result<Complex> {
    Ok(p.get(Q)?.clone())
}

fn d_q(p: &ParameterPoint, m: f64) -> Result<bool> {
    let q = p.get(Q)?;
    Ok(lt(q, 1.0, m) && gt(q, 0.0, m))
}

fn mod6_products(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let q3 = q.pow(3);
    qpoch_ratio(&[q3.clone(), q3], &[q.clone(), q.pow(5)], &q.pow(6), o.tol)
}

fn cf_mod6(p: &ParameterPoint) -> Result<CfSpec> {
    let q = q_only(p)?;
    let one = q.one_like();
    Ok(families::cor2(&q.recip()?, &one, &one, &(&q * &q)).with_name("mod6"))
}

/// `sum_n (-q;q^2)_n q^{n^2 + 2sn} / (q^4;q^4)_n` for `s = 0, 1`.
fn slater_series(q: &Complex, shift: u64, o: &EvalOptions) -> Result<SeriesResult> {
    let one = q.one_like();
    let q2 = q * q;
    let q4 = &q2 * &q2;
    let q3s = q.pow(2 * shift + 1);
    let mut q2n = one.clone();
    let mut q4n = q4.clone();
    sum_by_ratio(
        one.clone(),
        |_| {
            let num = &(&one + &(q * &q2n)) * &(&q3s * &q2n);
            let den = &one - &q4n;
            q2n = &q2n * &q2;
            q4n = &q4n * &q4;
            (num, den)
        },
        o.tol,
        o.max_terms,
    )
}

fn slater_product(q: &Complex, first: [Complex; 2], o: &EvalOptions) -> Result<SeriesResult> {
    let q2 = q * q;
    let q6 = q.pow(6);
    let [x, y] = first;
    let sixes = qpoch_multi(&[x, y, q6.clone()], &q6, PochLen::Infinite, o.tol / 4.0)?;
    let odd = qpoch_infinite(&-q, &q2, o.tol / 4.0)?;
    let even = qpoch_infinite(&q2, &q2, o.tol / 4.0)?;
    sixes.mul(&odd).div(&even)
}

fn slater1_series(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    slater_series(&q_only(p)?, 0, o)
}

fn slater1_product(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let q3 = q.pow(3);
    slater_product(&q, [q3.clone(), q3], o)
}

fn slater2_series(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    slater_series(&q_only(p)?, 1, o)
}

fn slater2_product(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    slater_product(&q, [q.clone(), q.pow(5)], o)
}

/// `sum_n (-1)^n q^{n(3n+2)} (1 + q^{2n+1})`.
fn ser3_series(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let one = q.one_like();
    let q2 = &q * &q;
    let q6 = q.pow(6);
    let mut q2n = one.clone();
    let mut q6n = one.clone();
    let q5 = q.pow(5);
    sum_by_ratio(
        &one + &q,
        |_| {
            let odd = &q * &q2n;
            let num = -&(&(&q5 * &q6n) * &(&one + &(&odd * &q2)));
            let den = &one + &odd;
            q2n = &q2n * &q2;
            q6n = &q6n * &q6;
            (num, den)
        },
        o.tol,
        o.max_terms,
    )
}

fn ser3_g(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let one = q.one_like();
    let q2 = &q * &q;
    let top = g(&-&q, &q2, &-&one, &q2, o)?;
    top.div(&g(&-&q.recip()?, &one, &-&one, &q2, o)?)
}

fn cf_ser3(p: &ParameterPoint) -> Result<CfSpec> {
    let q = q_only(p)?;
    let one = q.one_like();
    let cf = families::cor2(&-&q.recip()?, &one, &-&one, &(&q * &q));
    Ok(cf.reciprocal().with_name("ser3"))
}

/// `1 - sum_{n>=1} q^{n(3n-1)/2} (1 - q^n)`.
fn ser3b_series(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let one = q.one_like();
    let q3 = q.pow(3);
    // at ratio index m, n = m + 1: qn = q^n, q3n = q^{3n}
    let mut qn = q.clone();
    let mut q3n = q3.clone();
    let s = sum_by_ratio(
        &q * &(&one - &q),
        |_| {
            let num = &(&(&q3n * &q) * &(&one - &(&qn * &q)));
            let den = &one - &qn;
            qn = &qn * &q;
            q3n = &q3n * &q3;
            (num.clone(), den)
        },
        o.tol,
        o.max_terms,
    )?;
    Ok(exact(one.clone()).sub(&s))
}

fn ser3b_g(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let q = q_only(p)?;
    let one = q.one_like();
    let q2 = &q * &q;
    let qi = q.recip()?;
    let r = g(&qi, &qi, &one, &q2, o)?.div(&g(&q, &q, &one, &q2, o)?)?;
    Ok(r.add(&exact(one.clone())).recip()?.scale(&one.constant(2.0)))
}

fn cf_ser3b(p: &ParameterPoint) -> Result<CfSpec> {
    let q = q_only(p)?;
    let one = q.one_like();
    let qi = q.recip()?;
    let x = families::cor2(&qi, &qi, &one, &(&q * &q));
    let shifted = x.clone().with_b0(&x.b0 + &one);
    Ok(shifted.reciprocal().scale(&one.constant(2.0)).with_name("ser3b"))
}

// ---- Bailey-Daum ----

fn abq(p: &ParameterPoint) -> Result<[Complex; 3]> {
    vals(p, [A, B, Q])
}

fn bd_lhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    crate::qseries::bailey_daum_lhs(&a, &b, &q, o.tol, o.max_terms)
}

fn bd_rhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    crate::qseries::bailey_daum_rhs(&a, &b, &q, o.tol)
}

fn d_bd(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    if !(lt(&q, 1.0, m) && gt(&b, 0.0, m)) {
        return Ok(false);
    }
    let qb = div(&q, &b)?;
    Ok(lt(&qb, 1.0, m) && poch_clear(&(&a * &qb), &q, m))
}

/// The two series of the lemma: `2phi1(a,b;a/(bq);q;-1/b)` and `2phi1(a,bq;a/b;q;-1/b)`.
fn lemma_pair(p: &ParameterPoint, o: &EvalOptions) -> Result<(SeriesResult, SeriesResult)> {
    let [a, b, q] = abq(p)?;
    let ab = div(&a, &b)?;
    let z = -&b.recip()?;
    let first = phi(&a, &b, &div(&ab, &q)?, &q, &z, o)?;
    let second = phi(&a, &(&b * &q), &ab, &q, &z, o)?;
    Ok((first, second))
}

fn lemma_even(p: &ParameterPoint, o: &EvalOptions) -> Result<(SeriesResult, Complex)> {
    let [a, b, q] = abq(p)?;
    let one = q.one_like();
    let q2 = &q * &q;
    let abq = div(&a, &(&b * &q))?;
    let top = qpoch_multi(&[a.clone(), div(&abq, &b)?], &q2, PochLen::Infinite, o.tol / 4.0)?;
    Ok((top, &one - &abq))
}

fn lemma31_lhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let (x, y) = lemma_pair(p, o)?;
    let one = x.value.one_like();
    Ok(x.div(&y)?.sub(&exact(one)))
}

fn lemma31_rhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    let (top, k) = lemma_even(p, o)?;
    let bottom = qpoch_multi(
        &[&a * &q, div(&a, &(&b * &b))?],
        &(&q * &q),
        PochLen::Infinite,
        o.tol / 4.0,
    )?;
    top.div(&bottom)?.div(&exact(k))
}

fn lemma31_diff_lhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let (x, y) = lemma_pair(p, o)?;
    Ok(x.sub(&y))
}

fn lemma31_diff_rhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    let (top, k) = lemma_even(p, o)?;
    let mq = qpoch_infinite(&-&q, &q, o.tol / 4.0)?;
    let bottom = qpoch_multi(&[div(&a, &b)?, -&b.recip()?], &q, PochLen::Infinite, o.tol / 4.0)?;
    top.mul(&mq).div(&bottom)?.div(&exact(k))
}

fn d_lemma31(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    if !(lt(&q, 1.0, m) && gt(&q, 0.0, m) && gt(&b, 1.0, m)) {
        return Ok(false);
    }
    let q2 = &q * &q;
    let abq = div(&a, &(&b * &q))?;
    let ab2 = div(&a, &(&b * &b))?;
    Ok(poch_clear(&abq, &q, m) && poch_clear(&(&a * &q), &q2, m) && poch_clear(&ab2, &q2, m))
}

fn s_lemma31(d: &mut Draw) -> Result<ParameterPoint> {
    let mut p = d.generic(&[A, Q], false);
    p.set(B, d.free().recip()?);
    Ok(p)
}

// ---- Entry 12 ----

fn entry12_product(a: &Complex, b: &Complex, q: &Complex, o: &EvalOptions) -> Result<SeriesResult> {
    let q4 = q.pow(4);
    let q3 = q.pow(3);
    let (a2, b2) = (a * a, b * b);
    if (a * b).abs_f64() < 1.0 {
        qpoch_ratio(&[&a2 * q, &b2 * q], &[&a2 * &q3, &b2 * &q3], &q4, o.tol)
    } else {
        let (ia2, ib2) = (a2.recip()?, b2.recip()?);
        let r = qpoch_ratio(&[&ia2 * q, &ib2 * q], &[&ia2 * &q3, &ib2 * &q3], &q4, o.tol)?;
        Ok(r.scale(&-&(a * b)))
    }
}

fn entry12_lhs(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    entry12_product(&a, &b, &q, o)
}

fn cf_entry12(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::entry12(&a, &b, &q))
}

const TERMINATION_SEARCH: usize = 64;

/// The fraction cut at its first vanishing partial numerator.
fn cf_entry12_finite(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    let cf = families::entry12(&a, &b, &q);
    let num = cf.num_rule();
    let tol = q.precision().structural_tol();
    let mut an = Vec::new();
    let mut bn = Vec::new();
    for n in 1..=TERMINATION_SEARCH {
        let v = num(n)?;
        if v.abs_f64() <= tol {
            return CfSpec::finite("entry12-finite", cf.b0.clone(), an, bn);
        }
        an.push(v);
        bn.push(cf.b(n)?);
    }
    Err(QcfError::domain("entry12 fraction does not terminate"))
}

fn d_entry12(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    let ab = (&a * &b).abs_f64();
    if !lt(&q, 1.0, m) || (ab - 1.0).abs() <= m {
        return Ok(false);
    }
    let q3 = q.pow(3);
    let q4 = q.pow(4);
    let (a2, b2) = (&a * &a, &b * &b);
    if ab < 1.0 {
        Ok(poch_clear(&(&a2 * &q3), &q4, m) && poch_clear(&(&b2 * &q3), &q4, m))
    } else {
        if !(gt(&a, 0.0, m) && gt(&b, 0.0, m)) {
            return Ok(false);
        }
        Ok(poch_clear(&div(&q3, &a2)?, &q4, m) && poch_clear(&div(&q3, &b2)?, &q4, m))
    }
}

fn s_entry12(d: &mut Draw) -> Result<ParameterPoint> {
    let mut p = d.generic(&[A, B, Q], false);
    if d.seed % 2 == 1 {
        let (a, b) = (p.get(A)?.recip()?, p.get(B)?.recip()?);
        p.set(A, a);
        p.set(B, b);
    }
    Ok(p)
}

fn d_entry12_finite(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    Ok(d_entry12(p, m)? && gt(&q, 0.0, m) && lt(&(&a * &b), 1.0, m) && cf_entry12_finite(p).is_ok())
}

fn s_entry12_finite(d: &mut Draw) -> Result<ParameterPoint> {
    let mut p = d.generic(&[B, Q], false);
    let k = d.seed % 3;
    let a = p.get(B)? * &p.get(Q)?.pow(2 * k + 1);
    p.set(A, a);
    Ok(p)
}

fn d_entry12_products(a: &Complex, b: &Complex, q: &Complex, m: f64) -> bool {
    let q3 = q.pow(3);
    let q4 = q.pow(4);
    poch_clear(&(&(a * a) * &q3), &q4, m) && poch_clear(&(&(b * b) * &q3), &q4, m)
}

fn d_entry12b(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    if !(lt(&q, 1.0, m) && gt(&a, 0.0, m)) {
        return Ok(false);
    }
    let qba = div(&(&q * &b), &a)?;
    Ok(lt(&qba, 1.0, m) && lt(&(&a * &b), 1.0, m) && d_entry12_products(&a, &b, &q, m))
}

fn d_entry12c(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    let (ma, mb) = (a.abs_f64(), b.abs_f64());
    let upper = if mb > 0.0 { 1.0 / mb } else { f64::INFINITY };
    Ok(lt(&q, 1.0, m) && (&b * &q).abs_f64() + m < ma && ma < upper - m && d_entry12_products(&a, &b, &q, m))
}

fn cf_entry12b(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::entry12b(&a, &b, &q))
}

fn cf_entry12c(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::entry12c(&a, &b, &q))
}

// ---- product combinations ----

/// `[(-a,b;q) - (a,-b;q)] / [(-a,b;q) + (a,-b;q)]`.
fn ram_products(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    let x = qpoch_multi(&[-&a, b.clone()], &q, PochLen::Infinite, o.tol / 4.0)?;
    let y = qpoch_multi(&[a.clone(), -&b], &q, PochLen::Infinite, o.tol / 4.0)?;
    x.sub(&y).div(&x.add(&y))
}

/// `A = 2phi1(bq/a, b/a; q; q^2; a^2)` and
/// `B = (a - b)/(1 - q) 2phi1(bq/a, bq^2/a; q^3; q^2; a^2)`.
fn ram_parts(p: &ParameterPoint, o: &EvalOptions) -> Result<(SeriesResult, SeriesResult)> {
    let [a, b, q] = abq(p)?;
    let one = q.one_like();
    let q2 = &q * &q;
    let ba = div(&b, &a)?;
    let a2 = &a * &a;
    let big_a = phi(&(&ba * &q), &ba, &q, &q2, &a2, o)?;
    let big_b = phi(&(&ba * &q), &(&ba * &q2), &(&q2 * &q), &q2, &a2, o)?;
    let k = div(&(&a - &b), &(&one - &q))?;
    Ok((big_a, big_b.scale(&k)))
}

fn ram_sum(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let (x, y) = ram_parts(p, o)?;
    Ok(x.add(&y))
}

fn ram_diff(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let (x, y) = ram_parts(p, o)?;
    Ok(x.sub(&y))
}

fn qbin_plus(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    qbinomial_ratio(&a, &b, &q, 1, o.tol)
}

fn qbin_minus(p: &ParameterPoint, o: &EvalOptions) -> Result<SeriesResult> {
    let [a, b, q] = abq(p)?;
    qbinomial_ratio(&a, &b, &q, -1, o.tol)
}

fn cf_ram_t1(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::ram_t1(&a, &b, &q))
}

fn cf_ram_t1b(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::ram_t1b(&a, &b, &q))
}

fn cf_ram_t1c(p: &ParameterPoint) -> Result<CfSpec> {
    let [a, b, q] = abq(p)?;
    Ok(families::ram_t1c(&a, &b, &q))
}

fn d_ram_t1(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, q] = vals(p, [A, Q])?;
    Ok(lt(&q, 1.0, m) && lt(&a, 1.0, m))
}

fn d_ram_t1b(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    if !(lt(&q, 1.0, m) && gt(&q, 0.0, m)) {
        return Ok(false);
    }
    let ab = &a * &b;
    Ok(lt(&(&a * &a), 1.0, m) && lt(&div(&ab, &q)?, 1.0, m) && gt(&(&ab + &q), 0.0, m))
}

fn d_ram_t1c(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, b, q] = abq(p)?;
    if !(lt(&q, 1.0, m) && gt(&b, 0.0, m)) {
        return Ok(false);
    }
    let aqb = div(&(&a * &q), &b)?;
    Ok(lt(&(&a * &a), 1.0, m) && lt(&aqb, 1.0, m) && poch_clear(&(&a * &b), &(&q * &q), m))
}

fn d_ram_ab(p: &ParameterPoint, m: f64) -> Result<bool> {
    let [a, q] = vals(p, [A, Q])?;
    Ok(lt(&q, 1.0, m) && lt(&a, 1.0, m) && gt(&a, 0.0, m))
}

// ---- the registry ----

const G4: &[Sym] = &[Q, A, B, L];
const HEINE: &[Sym] = &[Q, A, B, C, Z];
const ABQ: &[Sym] = &[Q, A, B];
const QONLY: &[Sym] = &[Q];

pub(super) static RECORDS: &[IdentityRecord] = &[
    IdentityRecord {
        id: "gcf1",
        params: G4,
        statement: "G(aq,lq;b;q)/G(a,l;b;q) = 1/(1 + (aq+lq)/(1 + (bq+lq^2)/(1 + (aq^2+lq^3)/(1 + ...))))",
        domain_text: "|q| < 1; 1 + bq^n != 0; l != abq^n, -b/q^n, -a/q^(n-1) unless a = b = l = 0",
        notes: "",
        lhs: Side::Series(g_ratio_inv),
        rhs: Side::Cf(cf_gcf1),
        domain: d_gcf1,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "cor1cf",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = 1 + (aq+lq)/(1 + (bq+lq^2)/(1 + (aq^2+lq^3)/(1 + ...)))",
        domain_text: "|q| < 1; 1 + bq^n != 0",
        notes: "Same fraction as gcf1, read without the outer reciprocal; obtained from Heine's fraction with c = 0.",
        lhs: Side::Series(g_ratio),
        rhs: Side::Cf(cf_f1),
        domain: d_g_base,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "gcf2",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = 1 + K_{n>=1} (aq + lq^n)/(1 - aq + bq^n)",
        domain_text: "|q| < 1, |aq| < 1; exclusions as gcf1",
        notes: "Requires |aq|<1: outside it the fraction converges to a different value.",
        lhs: Side::Series(g_ratio),
        rhs: Side::Cf(cf_f4),
        domain: d_gcf2,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "gcf3",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = 1 + aq + K_{n>=1} (lq^n - abq^(2n))/(1 + bq^n + aq^(n+1))",
        domain_text: "|q| < 1; exclusions as gcf1",
        notes: "",
        lhs: Side::Series(g_ratio),
        rhs: Side::Cf(cf_f2),
        domain: d_gcf,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "gcf4",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = 1 - b + aq + K_{n>=1} (lq^n + b)/(1 - b + aq^(n+1))",
        domain_text: "|q| < 1, |b| < 1; exclusions as gcf1",
        notes: "Holds for |b|<1 only.",
        lhs: Side::Series(g_ratio),
        rhs: Side::Cf(cf_f3),
        domain: d_gcf4,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "hirschhorn-gablq",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = H(-b,aq,l,q)/H(-b,aq^2,lq,q) = 1 - b + aq + K_{n>=1} (lq^n + b)/(1 - b + aq^(n+1))",
        domain_text: "0 < q < 1 real by default, |b| < 1",
        notes: "Series-to-series form of gcf4 through Hirschhorn's H; |b|<1 keeps H's denominator (-b;q) bounded away from zero.",
        lhs: Side::Series(g_ratio),
        rhs: Side::Series(hirsch_g_ratio),
        domain: |p, m| Ok(d_g_base(p, m)? && lt(p.get(B)?, 1.0, m)),
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "hirschhorn1974",
        params: &[X, A, B, C],
        statement: "H(a,b,c,x)/H(a,bx,cx,x) = 1 + a + b + K_{n>=1} (cx^n - a)/(1 + a + bx^n)",
        domain_text: "|x| < 1, |a| < 1",
        notes: "",
        lhs: Side::Series(hirsch_ratio),
        rhs: Side::Cf(cf_hirsch),
        domain: d_hirsch,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "heine",
        params: HEINE,
        statement: "2phi1(a,b;c;q;z)/2phi1(a,bq;cq;q;z) = 1 + K_{n>=1} c_n z/1, c_(2k+1) = -q^k(1-aq^k)(b-cq^k)/((1-cq^(2k))(1-cq^(2k+1))), c_(2k) = -q^(k-1)(1-bq^k)(a-cq^k)/((1-cq^(2k-1))(1-cq^(2k)))",
        domain_text: "|q| < 1, |z| < 1, c != q^-n",
        notes: "",
        lhs: Side::Series(heine_ratio),
        rhs: Side::Cf(cf_heine),
        domain: d_heine,
        sampler: Sampler::Custom(s_heine),
    },
    IdentityRecord {
        id: "heine2",
        params: HEINE,
        statement: "(1-c) 2phi1(a,b;c;q;z)/2phi1(a,bq;cq;q;z) = 1 - bz + K_{n>=1} e_n/(1 - bzq^n), e_(2k+1) = (c - abzq^k)(zq^k - 1)q^k, e_(2k) = (1-bq^k)(cq^k - a)zq^(k-1)",
        domain_text: "|q| < 1, |z| < 1, |c/b| < 1",
        notes: "The |c/b| < 1 bound is enforced strictly. The fraction is divided by (1 - c) to compare with the plain series ratio.",
        lhs: Side::Series(heine_ratio),
        rhs: Side::Cf(cf_heine2),
        domain: d_heine2,
        sampler: Sampler::Custom(s_heine),
    },
    IdentityRecord {
        id: "heine-iterate",
        params: HEINE,
        statement: "2phi1(a,b;c;q;z)/2phi1(a,bq;cq;q;z) = (1-bz)/(1-c) 2phi1(abz/c,b;bz;q;c/b)/2phi1(abz/c,bq;bqz;q;c/b)",
        domain_text: "|q| < 1, |z| < 1, |c/b| < 1, c != 0",
        notes: "",
        lhs: Side::Series(heine_ratio),
        rhs: Side::Series(heine_iterate_rhs),
        domain: d_heine_iterate,
        sampler: Sampler::Custom(s_heine),
    },
    IdentityRecord {
        id: "jackson",
        params: HEINE,
        statement: "2phi1(a,b;c;q;z) = (az;q)_inf/(z;q)_inf sum_k (a,c/b;q)_k/(c,az,q;q)_k (-bz)^k q^(k(k-1)/2)",
        domain_text: "|q| < 1, |z| < 1, b != 0",
        notes: "",
        lhs: Side::Series(phi_direct),
        rhs: Side::Series(phi_jackson),
        domain: d_jackson,
        sampler: Sampler::Custom(s_heine),
    },
    IdentityRecord {
        id: "thm25i",
        params: HEINE,
        statement: "(1-c) 2phi1(a,b;c;q;z)/2phi1(a,bq;cq;q;z) = (1-c) + (1-bq/a)t + K_{n>=1} -(1-cq^n/a)(1-bq^n)t/((1-cq^n) + (1-bq^(n+1)/a)t), t = az/q",
        domain_text: "|q| < 1, |z| < 1, |az/q| < 1",
        notes: "",
        lhs: Side::Series(scaled_heine_ratio),
        rhs: Side::Cf(cf_thm25),
        domain: d_thm25i,
        sampler: Sampler::Custom(s_heine),
    },
    IdentityRecord {
        id: "thm25ii",
        params: HEINE,
        statement: "(1-c) 2phi1(a,b;c;q;z)/2phi1(a,bq;cq;q;z) = lim (A_n - tA_(n-1))/(B_n - tB_(n-1)) for the thm25i fraction, t = az/q",
        domain_text: "|q| < 1, |z| < 1, |az/q| = 1, az/q != 1",
        notes: "Not an ordinary limit: the record stores the modification w = -az/q. No convergence rate is known.",
        lhs: Side::Series(scaled_heine_ratio),
        rhs: Side::ModifiedCf { cf: cf_thm25, w: w_thm25 },
        domain: d_thm25ii,
        sampler: Sampler::Custom(s_thm25ii),
    },
    IdentityRecord {
        id: "thm25iii",
        params: HEINE,
        statement: "t(1-bq/a) 2phi1(q/a,c/a;bq/a;q;q/z)/2phi1(q/a,cq/a;bq^2/a;q;q/z) = the thm25i fraction, t = az/q",
        domain_text: "|q| < 1, |az/q| > 1, |q/z| < 1",
        notes: "",
        lhs: Side::Series(thm25_outer),
        rhs: Side::Cf(cf_thm25),
        domain: d_thm25iii,
        sampler: Sampler::Custom(s_thm25iii),
    },
    IdentityRecord {
        id: "cor2cf",
        params: G4,
        statement: "G(a,l;b;q)/G(aq,lq;b;q) = 1 + aq + (lq - abq^2)/(1 + aq^2 + (bq + lq^2)/(1 + aq^3 + (lq^3 - abq^5)/(1 + aq^4 + ...)))",
        domain_text: "|q| < 1; 1 + bq^n != 0",
        notes: "",
        lhs: Side::Series(g_ratio),
        rhs: Side::Cf(cf_cor2),
        domain: d_g_base,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "mod6",
        params: QONLY,
        statement: "(q^3,q^3;q^6)_inf/(q,q^5;q^6)_inf = 1 + q + (q^2-q^3)/(1+q^3 + (q^2+q^4)/(1+q^5 + (q^6-q^9)/(1+q^7 + ...)))",
        domain_text: "0 < |q| < 1",
        notes: "cor2cf with q -> q^2, a = 1/q, b = l = 1.",
        lhs: Side::Series(mod6_products),
        rhs: Side::Cf(cf_mod6),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "mod6-slater1",
        params: QONLY,
        statement: "sum_n (-q;q^2)_n q^(n^2)/(q^4;q^4)_n = (q^3,q^3,q^6;q^6)_inf (-q;q^2)_inf/(q^2;q^2)_inf",
        domain_text: "0 < |q| < 1",
        notes: "The series equals G(1/q,1;1;q^2).",
        lhs: Side::Series(slater1_series),
        rhs: Side::Series(slater1_product),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "mod6-slater2",
        params: QONLY,
        statement: "sum_n (-q;q^2)_n q^(n^2+2n)/(q^4;q^4)_n = (q,q^5,q^6;q^6)_inf (-q;q^2)_inf/(q^2;q^2)_inf",
        domain_text: "0 < |q| < 1",
        notes: "The series equals G(q,q^2;1;q^2).",
        lhs: Side::Series(slater2_series),
        rhs: Side::Series(slater2_product),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "ser3",
        params: QONLY,
        statement: "sum_n (-1)^n q^(n(3n+2))(1+q^(2n+1)) = 1/(1-q + (q^2-q^3)/(1-q^3 + (q^4-q^2)/(1-q^5 + (q^6-q^9)/(1-q^7 + ...))))",
        domain_text: "0 < |q| < 1",
        notes: "Reciprocal of cor2cf with q -> q^2, a = -1/q, b = -1, l = 1.",
        lhs: Side::Series(ser3_series),
        rhs: Side::Cf(cf_ser3),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "ser3-series",
        params: QONLY,
        statement: "G(-q,q^2;-1;q^2)/G(-1/q,1;-1;q^2) = sum_n (-1)^n q^(n(3n+2))(1+q^(2n+1))",
        domain_text: "0 < |q| < 1",
        notes: "",
        lhs: Side::Series(ser3_g),
        rhs: Side::Series(ser3_series),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "ser3b",
        params: QONLY,
        statement: "1 - sum_{n>=1} q^(n(3n-1)/2)(1-q^n) = 2/(2+q + (q-q^3)/(1+q^3 + (q^2+q^3)/(1+q^5 + (q^5-q^9)/(1+q^7 + ...))))",
        domain_text: "0 < |q| < 1",
        notes: "2/(1 + X) with X the cor2cf fraction at q -> q^2, a = 1/q, b = 1, l = 1/q.",
        lhs: Side::Series(ser3b_series),
        rhs: Side::Cf(cf_ser3b),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "ser3b-series",
        params: QONLY,
        statement: "2/(1 + G(1/q,1/q;1;q^2)/G(q,q;1;q^2)) = 1 - sum_{n>=1} q^(n(3n-1)/2)(1-q^n)",
        domain_text: "0 < |q| < 1",
        notes: "The orientation with G(q,q;1;q^2) on top does not hold; this is the one that matches ser3b.",
        lhs: Side::Series(ser3b_g),
        rhs: Side::Series(ser3b_series),
        domain: d_q,
        sampler: Sampler::RealQ,
    },
    IdentityRecord {
        id: "bailey-daum",
        params: ABQ,
        statement: "2phi1(a,b;aq/b;q;-q/b) = (-q;q)_inf (aq,aq^2/b^2;q^2)_inf/(aq/b,-q/b;q)_inf",
        domain_text: "|q| < 1, |q/b| < 1",
        notes: "",
        lhs: Side::Series(bd_lhs),
        rhs: Side::Series(bd_rhs),
        domain: d_bd,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "lemma31",
        params: ABQ,
        statement: "2phi1(a,b;a/(bq);q;-1/b)/2phi1(a,bq;a/b;q;-1/b) - 1 = (a,a/(b^2q);q^2)_inf/((1-a/(bq))(aq,a/b^2;q^2)_inf)",
        domain_text: "|q| < 1, |b| > 1",
        notes: "",
        lhs: Side::Series(lemma31_lhs),
        rhs: Side::Series(lemma31_rhs),
        domain: d_lemma31,
        sampler: Sampler::Custom(s_lemma31),
    },
    IdentityRecord {
        id: "lemma31-diff",
        params: ABQ,
        statement: "2phi1(a,b;a/(bq);q;-1/b) - 2phi1(a,bq;a/b;q;-1/b) = (-q;q)_inf (a,a/(b^2q);q^2)_inf/((1-a/(bq))(a/b,-1/b;q)_inf)",
        domain_text: "|q| < 1, |b| > 1",
        notes: "",
        lhs: Side::Series(lemma31_diff_lhs),
        rhs: Side::Series(lemma31_diff_rhs),
        domain: d_lemma31,
        sampler: Sampler::Custom(s_lemma31),
    },
    IdentityRecord {
        id: "entry12",
        params: ABQ,
        statement: "1 - ab + K_{n>=1} (a-bq^(2n-1))(b-aq^(2n-1))/((1-ab)(1+q^(2n))) = (a^2q,b^2q;q^4)_inf/(a^2q^3,b^2q^3;q^4)_inf if |ab| < 1, -ab (q/a^2,q/b^2;q^4)_inf/(q^3/a^2,q^3/b^2;q^4)_inf if |ab| > 1",
        domain_text: "|q| < 1, |ab| != 1",
        notes: "Odd seeds sample the |ab| > 1 branch by inverting a sampled |ab| < 1 pair. The fraction terminates when a = bq^(2k+1); see entry12-finite.",
        lhs: Side::Series(entry12_lhs),
        rhs: Side::Cf(cf_entry12),
        domain: d_entry12,
        sampler: Sampler::Custom(s_entry12),
    },
    IdentityRecord {
        id: "entry12-finite",
        params: ABQ,
        statement: "entry12 at a = bq^(2k+1), where the fraction terminates after k partial quotients",
        domain_text: "0 < |q| < 1, |ab| < 1, a = bq^(2k+1) for some k >= 0",
        notes: "Evaluated exactly as a finite fraction.",
        lhs: Side::Series(entry12_lhs),
        rhs: Side::Cf(cf_entry12_finite),
        domain: d_entry12_finite,
        sampler: Sampler::Custom(s_entry12_finite),
    },
    IdentityRecord {
        id: "entry12b",
        params: ABQ,
        statement: "(a^2q,b^2q;q^4)_inf/(a^2q^3,b^2q^3;q^4)_inf = (1-a^2q)(1-b^2q)/(1-abq^2 + (a-bq)(b-aq)q^2/(1-abq^4 + (1-a^2q^3)(1-b^2q^3)q^2/(1-abq^6 + ...)))",
        domain_text: "|q| < 1, |qb/a| < 1, |ab| < 1",
        notes: "The |qb/a| < 1 bound may be stronger than necessary; it is enforced as stated.",
        lhs: Side::Series(entry12_lhs),
        rhs: Side::Cf(cf_entry12b),
        domain: d_entry12b,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "entry12c",
        params: ABQ,
        statement: "(a^2q,b^2q;q^4)_inf/(a^2q^3,b^2q^3;q^4)_inf = 1 + ab - (a+bq)(b+aq)/(1+q^2 + (a-bq)(b-aq)q^2/(1+q^4 - (a+bq^3)(b+aq^3)q^2/(1+q^6 + ...)))",
        domain_text: "|q| < 1, |bq| < |a| < 1/|b|",
        notes: "The bounds may be stronger than necessary; they are enforced as stated.",
        lhs: Side::Series(entry12_lhs),
        rhs: Side::Cf(cf_entry12c),
        domain: d_entry12c,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "ram-t1",
        params: ABQ,
        statement: "[(-a,b;q)_inf - (a,-b;q)_inf]/[(-a,b;q)_inf + (a,-b;q)_inf] = (a-b)/(1-q - (a-bq)(b-aq)/(1-q^3 - (a-bq^2)(b-aq^2)q/(1-q^5 - (a-bq^3)(b-aq^3)q^2/(1-q^7 - ...))))",
        domain_text: "|q| < 1, |a| < 1",
        notes: "The n-th partial numerator carries q^(n-2) for n >= 2.",
        lhs: Side::Series(ram_products),
        rhs: Side::Cf(cf_ram_t1),
        domain: d_ram_t1,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "ram-t1b",
        params: ABQ,
        statement: "[(-a,b;q)_inf - (a,-b;q)_inf]/[(-a,b;q)_inf + (a,-b;q)_inf] = (a-b)q/((ab+q)(1-q) - (a-bq^2)(b-aq^2)q/((ab+q)(1-q^3) - (a-bq^4)(b-aq^4)q/((ab+q)(1-q^5) - ...)))",
        domain_text: "|q| < 1, |a^2| < 1, |ab/q| < 1",
        notes: "",
        lhs: Side::Series(ram_products),
        rhs: Side::Cf(cf_ram_t1b),
        domain: d_ram_t1b,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "ram-t1c",
        params: ABQ,
        statement: "[(-a,b;q)_inf - (a,-b;q)_inf]/[(-a,b;q)_inf + (a,-b;q)_inf] = (a-b)/(1-ab - (1-a^2)(1-b^2)q/(1-abq^2 - (a-bq^2)(b-aq^2)q/(1-abq^4 - (1-a^2q^2)(1-b^2q^2)q^3/(1-abq^6 - ...))))",
        domain_text: "|q| < 1, |a^2| < 1, |aq/b| < 1",
        notes: "The bounds may be stronger than necessary; they are enforced as stated.",
        lhs: Side::Series(ram_products),
        rhs: Side::Cf(cf_ram_t1c),
        domain: d_ram_t1c,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "ram-ab-sum",
        params: ABQ,
        statement: "A + B = (b;q)_inf/(a;q)_inf, A = 2phi1(bq/a,b/a;q;q^2;a^2), B = (a-b)/(1-q) 2phi1(bq/a,bq^2/a;q^3;q^2;a^2)",
        domain_text: "|q| < 1, 0 < |a| < 1",
        notes: "B/A is the left side of ram-t1.",
        lhs: Side::Series(ram_sum),
        rhs: Side::Series(qbin_plus),
        domain: d_ram_ab,
        sampler: Sampler::Complex,
    },
    IdentityRecord {
        id: "ram-ab-diff",
        params: ABQ,
        statement: "A - B = (-b;q)_inf/(-a;q)_inf with A, B as in ram-ab-sum",
        domain_text: "|q| < 1, 0 < |a| < 1",
        notes: "",
        lhs: Side::Series(ram_diff),
        rhs: Side::Series(qbin_minus),
        domain: d_ram_ab,
        sampler: Sampler::Complex,
    },
];
