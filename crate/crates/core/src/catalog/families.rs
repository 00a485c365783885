//! Continued fraction families `b0 + K(a_n/b_n)` appearing in the registry.

use crate::cfengine::CfSpec;
use crate::error::Result;
use crate::qseries::{Complex, ParameterPoint, Sym};

fn pt(pairs: &[(Sym, &Complex)]) -> ParameterPoint {
    pairs
        .iter()
        .fold(ParameterPoint::new(), |p, (s, v)| p.with(*s, (*v).clone()))
}

macro_rules! owned {
    ($($x:ident),*) => { $(let $x = $x.clone();)* };
}

/// `1 + (aq + lq)/1 + (bq + lq^2)/1 + (aq^2 + lq^3)/1 + (bq^2 + lq^4)/1 + ...`,
/// equal to `G(a, l; b; q) / G(aq, lq; b; q)`.
pub fn f1(a: &Complex, lambda: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::Lambda, lambda), (Sym::B, b), (Sym::Q, q)]);
    owned!(a, lambda, b, q);
    let one = q.one_like();
    CfSpec::new(
        "f1",
        one.clone(),
        move |n| {
            let k = n.div_ceil(2) as u64;
            let head = if n % 2 == 1 { &a } else { &b };
            Ok(&(head * &q.pow(k)) + &(&lambda * &q.pow(n as u64)))
        },
        move |_| Ok(one.clone()),
        params,
    )
}

/// `1 + aq + K((lq^n - abq^{2n}) / (1 + bq^n + aq^{n+1}))`.
pub fn f2(a: &Complex, lambda: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::Lambda, lambda), (Sym::B, b), (Sym::Q, q)]);
    let b0 = &q.one_like() + &(a * q);
    owned!(a, lambda, b, q);
    let (a2, b2, q2) = (a.clone(), b.clone(), q.clone());
    CfSpec::new(
        "f2",
        b0,
        move |n| {
            let qn = q.pow(n as u64);
            Ok(&(&lambda * &qn) - &(&(&a * &b) * &(&qn * &qn)))
        },
        move |n| {
            let qn = q2.pow(n as u64);
            Ok(&(&qn.one_like() + &(&b2 * &qn)) + &(&a2 * &(&qn * &q2)))
        },
        params,
    )
}

/// `1 - b + aq + K((lq^n + b) / (1 - b + aq^{n+1}))`; converges to the common value for |b| < 1.
pub fn f3(a: &Complex, lambda: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::Lambda, lambda), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let b0 = &(&one - b) + &(a * q);
    owned!(a, lambda, b, q);
    let (b2, q2) = (b.clone(), q.clone());
    CfSpec::new(
        "f3",
        b0,
        move |n| Ok(&(&lambda * &q.pow(n as u64)) + &b),
        move |n| Ok(&(&one - &b2) + &(&a * &q2.pow(n as u64 + 1))),
        params,
    )
}

/// `1 + K((aq + lq^n) / (1 - aq + bq^n))`; converges to the common value for |aq| < 1.
pub fn f4(a: &Complex, lambda: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::Lambda, lambda), (Sym::B, b), (Sym::Q, q)]);
    let aq = a * q;
    let one = q.one_like();
    owned!(lambda, b, q);
    let (aq2, q2) = (aq.clone(), q.clone());
    CfSpec::new(
        "f4",
        one.clone(),
        move |n| Ok(&aq + &(&lambda * &q.pow(n as u64))),
        move |n| Ok(&(&one - &aq2) + &(&b * &q2.pow(n as u64))),
        params,
    )
}

/// `1 + aq + (lq - abq^2)/(1 + aq^2) + (bq + lq^2)/(1 + aq^3) + (lq^3 - abq^5)/(1 + aq^4) + ...`,
/// equal to `G(a, l; b; q) / G(aq, lq; b; q)`.
pub fn cor2(a: &Complex, lambda: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::Lambda, lambda), (Sym::B, b), (Sym::Q, q)]);
    let b0 = &q.one_like() + &(a * q);
    owned!(a, lambda, b, q);
    let (a2, q2) = (a.clone(), q.clone());
    CfSpec::new(
        "cor2cf",
        b0,
        move |n| {
            let ln = &lambda * &q.pow(n as u64);
            if n % 2 == 1 {
                let k = n.div_ceil(2) as u64;
                Ok(&ln - &(&(&a * &b) * &q.pow(3 * k - 1)))
            } else {
                Ok(&(&b * &q.pow(n as u64 / 2)) + &ln)
            }
        },
        move |n| Ok(&q2.one_like() + &(&a2 * &q2.pow(n as u64 + 1))),
        params,
    )
}

/// Heine's fraction `1 + K(c_n z / 1)` for `2phi1(a,b;c;q;z) / 2phi1(a,bq;cq;q;z)`:
/// `c_{2k+1} = -q^k (1 - aq^k)(b - cq^k) / ((1 - cq^{2k})(1 - cq^{2k+1}))`,
/// `c_{2k} = -q^{k-1} (1 - bq^k)(a - cq^k) / ((1 - cq^{2k-1})(1 - cq^{2k}))`.
pub fn heine(a: &Complex, b: &Complex, c: &Complex, q: &Complex, z: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::C, c), (Sym::Q, q), (Sym::Z, z)]);
    let one = q.one_like();
    owned!(a, b, c, q, z);
    let one2 = one.clone();
    CfSpec::new(
        "heine",
        one.clone(),
        move |n| {
            let (num, den) = if n % 2 == 1 {
                let k = (n as u64 - 1) / 2;
                let qk = q.pow(k);
                let num = &(&qk * &(&one - &(&a * &qk))) * &(&b - &(&c * &qk));
                let den = &(&one - &(&c * &q.pow(2 * k))) * &(&one - &(&c * &q.pow(2 * k + 1)));
                (num, den)
            } else {
                let k = n as u64 / 2;
                let qk = q.pow(k);
                let num = &(&q.pow(k - 1) * &(&one - &(&b * &qk))) * &(&a - &(&c * &qk));
                let den = &(&one - &(&c * &q.pow(2 * k - 1))) * &(&one - &(&c * &q.pow(2 * k)));
                (num, den)
            };
            Ok(-&(&num.checked_div(&den)? * &z))
        },
        move |_| Ok(one2.clone()),
        params,
    )
}

/// `1 - bz + K(e_n / (1 - bzq^n))` with
/// `e_{2k+1} = (c - abzq^k)(zq^k - 1) q^k`, `e_{2k} = (1 - bq^k)(cq^k - a) z q^{k-1}`;
/// equal to `(1 - c) 2phi1(a,b;c;q;z) / 2phi1(a,bq;cq;q;z)`.
pub fn heine2(a: &Complex, b: &Complex, c: &Complex, q: &Complex, z: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::C, c), (Sym::Q, q), (Sym::Z, z)]);
    let one = q.one_like();
    let bz = b * z;
    let b0 = &one - &bz;
    owned!(a, b, c, q, z);
    let q2 = q.clone();
    CfSpec::new(
        "heine2",
        b0,
        move |n| {
            if n % 2 == 1 {
                let qk = q.pow((n as u64 - 1) / 2);
                let abz = &(&a * &b) * &z;
                Ok(&(&(&c - &(&abz * &qk)) * &(&(&z * &qk) - &one)) * &qk)
            } else {
                let k = n as u64 / 2;
                let qk = q.pow(k);
                Ok(&(&(&one - &(&b * &qk)) * &(&(&c * &qk) - &a)) * &(&z * &q.pow(k - 1)))
            }
        },
        move |n| Ok(&q2.one_like() - &(&bz * &q2.pow(n as u64))),
        params,
    )
}

/// With `t = az/q`:
/// `(1 - c) + (1 - bq/a) t + K(-(1 - cq^n/a)(1 - bq^n) t / ((1 - cq^n) + (1 - bq^{n+1}/a) t))`.
pub fn thm25(a: &Complex, b: &Complex, c: &Complex, q: &Complex, z: &Complex) -> Result<CfSpec> {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::C, c), (Sym::Q, q), (Sym::Z, z)]);
    let one = q.one_like();
    let t = (a * z).checked_div(q)?;
    let ca = c.checked_div(a)?;
    let ba = b.checked_div(a)?;
    let b0 = &(&one - c) + &(&(&one - &(&ba * q)) * &t);
    owned!(b, c, q);
    let (t2, ba2, q2, one2) = (t.clone(), ba.clone(), q.clone(), one.clone());
    Ok(CfSpec::new(
        "thm25",
        b0,
        move |n| {
            let qn = q.pow(n as u64);
            Ok(-&(&(&(&one - &(&ca * &qn)) * &(&one - &(&b * &qn))) * &t))
        },
        move |n| {
            let qn = q2.pow(n as u64);
            Ok(&(&one2 - &(&c * &qn)) + &(&(&one2 - &(&ba2 * &(&qn * &q2))) * &t2))
        },
        params,
    ))
}

/// Hirschhorn's `1 + a + b + K((cx^n - a) / (1 + a + bx^n))`, equal to
/// `H(a, b, c, x) / H(a, bx, cx, x)`.
pub fn hirschhorn(a: &Complex, b: &Complex, c: &Complex, x: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::C, c), (Sym::X, x)]);
    let one = x.one_like();
    let b0 = &(&one + a) + b;
    owned!(a, b, c, x);
    let (a2, x2) = (a.clone(), x.clone());
    CfSpec::new(
        "hirschhorn1974",
        b0,
        move |n| Ok(&(&c * &x.pow(n as u64)) - &a),
        move |n| Ok(&(&one + &a2) + &(&b * &x2.pow(n as u64))),
        params,
    )
}

/// `1 - ab + K((a - bq^{2n-1})(b - aq^{2n-1}) / ((1 - ab)(1 + q^{2n})))`.
pub fn entry12(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let d = &one - &(a * b);
    owned!(a, b, q);
    let (d2, q2) = (d.clone(), q.clone());
    CfSpec::new(
        "entry12",
        d,
        move |n| {
            let p = q.pow(2 * n as u64 - 1);
            Ok(&(&a - &(&b * &p)) * &(&b - &(&a * &p)))
        },
        move |n| Ok(&d2 * &(&q2.one_like() + &q2.pow(2 * n as u64))),
        params,
    )
}

/// `0 + K(e_n / (1 - abq^{2n}))` with
/// `e_{2k+1} = (1 - a^2 q^{2k+1})(1 - b^2 q^{2k+1}) q^{2k}`,
/// `e_{2k} = (a - bq^{2k-1})(b - aq^{2k-1}) q^{2k}`.
pub fn entry12b(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let ab = a * b;
    owned!(a, b, q);
    let q2 = q.clone();
    let one2 = one.clone();
    CfSpec::new(
        "entry12b",
        one.zero_like(),
        move |n| {
            if n % 2 == 1 {
                let k = (n as u64 - 1) / 2;
                let p = q.pow(2 * k + 1);
                Ok(&(&(&one - &(&(&a * &a) * &p)) * &(&one - &(&(&b * &b) * &p))) * &q.pow(2 * k))
            } else {
                let k = n as u64 / 2;
                let p = q.pow(2 * k - 1);
                Ok(&(&(&a - &(&b * &p)) * &(&b - &(&a * &p))) * &q.pow(2 * k))
            }
        },
        move |n| Ok(&one2 - &(&ab * &q2.pow(2 * n as u64))),
        params,
    )
}

/// `1 + ab + K(e_n / (1 + q^{2n}))` with
/// `e_{2k-1} = -(a + bq^{2k-1})(b + aq^{2k-1}) q^{2k-2}`,
/// `e_{2k} = (a - bq^{2k-1})(b - aq^{2k-1}) q^{2k}`.
pub fn entry12c(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let b0 = &one + &(a * b);
    owned!(a, b, q);
    let q2 = q.clone();
    CfSpec::new(
        "entry12c",
        b0,
        move |n| {
            let k = n.div_ceil(2) as u64;
            let p = q.pow(2 * k - 1);
            if n % 2 == 1 {
                Ok(-&(&(&(&a + &(&b * &p)) * &(&b + &(&a * &p))) * &q.pow(2 * k - 2)))
            } else {
                Ok(&(&(&a - &(&b * &p)) * &(&b - &(&a * &p))) * &q.pow(2 * k))
            }
        },
        move |n| Ok(&q2.one_like() + &q2.pow(2 * n as u64)),
        params,
    )
}

/// `0 + (a - b)/(1 - q) - (a - bq)(b - aq)/(1 - q^3) - (a - bq^2)(b - aq^2) q/(1 - q^5) - ...`:
/// `a_1 = a - b`, `a_n = -(a - bq^{n-1})(b - aq^{n-1}) q^{n-2}`, `b_n = 1 - q^{2n-1}`.
pub fn ram_t1(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    owned!(a, b, q);
    let q2 = q.clone();
    CfSpec::new(
        "ram-t1",
        one.zero_like(),
        move |n| {
            if n == 1 {
                return Ok(&a - &b);
            }
            let p = q.pow(n as u64 - 1);
            Ok(-&(&(&(&a - &(&b * &p)) * &(&b - &(&a * &p))) * &q.pow(n as u64 - 2)))
        },
        move |n| Ok(&one - &q2.pow(2 * n as u64 - 1)),
        params,
    )
}

/// `a_1 = (a - b) q`, `a_n = -(a - bq^{2n-2})(b - aq^{2n-2}) q`, `b_n = (ab + q)(1 - q^{2n-1})`.
pub fn ram_t1b(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let s = &(a * b) + q;
    owned!(a, b, q);
    let q2 = q.clone();
    CfSpec::new(
        "ram-t1b",
        one.zero_like(),
        move |n| {
            if n == 1 {
                return Ok(&(&a - &b) * &q);
            }
            let p = q.pow(2 * n as u64 - 2);
            Ok(-&(&(&(&a - &(&b * &p)) * &(&b - &(&a * &p))) * &q))
        },
        move |n| Ok(&s * &(&one - &q2.pow(2 * n as u64 - 1))),
        params,
    )
}

/// `a_1 = a - b`, `a_{2k} = -(1 - a^2 q^{2k-2})(1 - b^2 q^{2k-2}) q^{2k-1}`,
/// `a_{2k+1} = -(a - bq^{2k})(b - aq^{2k}) q^{2k-1}`, `b_n = 1 - abq^{2n-2}`.
pub fn ram_t1c(a: &Complex, b: &Complex, q: &Complex) -> CfSpec {
    let params = pt(&[(Sym::A, a), (Sym::B, b), (Sym::Q, q)]);
    let one = q.one_like();
    let ab = a * b;
    owned!(a, b, q);
    let q2 = q.clone();
    let one2 = one.clone();
    CfSpec::new(
        "ram-t1c",
        one.zero_like(),
        move |n| {
            if n == 1 {
                return Ok(&a - &b);
            }
            let n = n as u64;
            if n.is_multiple_of(2) {
                let p = q.pow(n - 2);
                Ok(-&(&(&(&one - &(&(&a * &a) * &p)) * &(&one - &(&(&b * &b) * &p))) * &q.pow(n - 1)))
            } else {
                let p = q.pow(n - 1);
                Ok(-&(&(&(&a - &(&b * &p)) * &(&b - &(&a * &p))) * &q.pow(n - 2)))
            }
        },
        move |n| Ok(&one2 - &(&ab * &q2.pow(2 * n as u64 - 2))),
        params,
    )
}
