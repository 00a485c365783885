//! Continued fractions `b0 + K(a_n/b_n)`: convergents, limits, modified
//! approximants, tails, equivalence transformations and separate limits of the
//! numerator and denominator sequences.

mod eval;
mod spec;

pub use eval::{
    check_tail_sequence, convergents, determinant_deviation, evaluate, modified_approximant, modified_limit,
    separate_limits, CfFlag, ConvergenceReport, ConvergentPair, NotSeparate, SeparateLimits, TailCheck,
};
pub use spec::{equivalence_transform, tail_cf, CfSpec, CoeffRule};

pub(crate) use spec::memoize;

/// Default cap on partial quotients.
pub const DEFAULT_MAX_QUOTIENTS: usize = 2000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::QcfError;
    use crate::qseries::{g_fn, rel_diff, Complex, ParameterPoint, Precision};
    use proptest::prelude::*;

    const P: Precision = Precision::DEFAULT;

    fn c(x: f64) -> Complex {
        Complex::from_f64(x, P)
    }

    fn constant(b0: f64, a: f64, b: f64) -> CfSpec {
        CfSpec::new(
            "const",
            c(b0),
            move |_| Ok(c(a)),
            move |_| Ok(c(b)),
            ParameterPoint::new(),
        )
    }

    /// `1 + K(q^n / 1)`.
    fn rogers_ramanujan(q: f64) -> CfSpec {
        let q = c(q);
        CfSpec::new(
            "rr",
            c(1.0),
            move |n| Ok(q.pow(n as u64)),
            |_| Ok(c(1.0)),
            ParameterPoint::new(),
        )
    }

    /// Direct backward evaluation of the first `n` partial quotients.
    fn backward(cf: &CfSpec, n: usize) -> Complex {
        let mut v = c(0.0);
        for k in (1..=n).rev() {
            v = &cf.a(k).unwrap() / &(&cf.b(k).unwrap() + &v);
        }
        &cf.b0 + &v
    }

    #[test]
    fn zeroth_convergent_is_b0_over_one() {
        let cf = constant(2.5, 1.0, 1.0);
        let p = convergents(&cf, 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].a, c(2.5));
        assert_eq!(p[0].b, c(1.0));
    }

    #[test]
    fn fibonacci_convergents() {
        let cf = constant(1.0, 1.0, 1.0);
        let p = convergents(&cf, 5).unwrap();
        assert_eq!(p[5].a, c(13.0));
        assert_eq!(p[5].b, c(8.0));
        assert_eq!(p[5].value().unwrap(), &c(13.0) / &c(8.0));
        // golden ratio: f^2 = f + 1
        let f = evaluate(&cf, 1e-40, 500).unwrap().value.unwrap();
        assert!(rel_diff(&(&f * &f), &(&f + &c(1.0))) < 1e-39);
    }

    #[test]
    fn rogers_ramanujan_matches_g_ratio() {
        let cf = rogers_ramanujan(0.1);
        let q = c(0.1);
        let zero = c(0.0);
        let num = g_fn(&zero, &c(1.0), &zero, &q, 1e-45, 1000).unwrap();
        let den = g_fn(&zero, &q, &zero, &q, 1e-45, 1000).unwrap();
        let ratio = &num.value / &den.value;
        let p = convergents(&cf, 30).unwrap();
        assert!(rel_diff(&p[30].value().unwrap(), &ratio) < 1e-25);
    }

    #[test]
    fn convergents_agree_with_backward_evaluation() {
        let cf = rogers_ramanujan(0.45);
        let p = convergents(&cf, 12).unwrap();
        for k in [1, 2, 7, 12] {
            assert!(rel_diff(&p[k].value().unwrap(), &backward(&cf, k)) < 1e-45);
        }
    }

    #[test]
    fn zero_numerator_is_a_spec_error() {
        let cf = CfSpec::new(
            "z",
            c(1.0),
            |n| Ok(c(if n == 3 { 0.0 } else { 1.0 })),
            |_| Ok(c(2.0)),
            ParameterPoint::new(),
        );
        assert!(matches!(convergents(&cf, 5), Err(QcfError::Spec { .. })));
        assert!(convergents(&cf, 2).is_ok());
    }

    #[test]
    fn empty_finite_fraction_evaluates_to_b0() {
        let cf = CfSpec::finite("empty", c(0.75), vec![], vec![]).unwrap();
        let r = evaluate(&cf, 1e-30, 100).unwrap();
        assert_eq!(r.value.clone().unwrap(), c(0.75));
        assert!(r.has_flag(CfFlag::Terminated));
    }

    #[test]
    fn finite_fraction_is_exact() {
        // 1 + 2/(3 + 4/5) = 1 + 10/19
        let cf = CfSpec::finite("f", c(1.0), vec![c(2.0), c(4.0)], vec![c(3.0), c(5.0)]).unwrap();
        let r = evaluate(&cf, 1e-30, 100).unwrap();
        assert!(rel_diff(&r.value.unwrap(), &(&c(29.0) / &c(19.0))) < 1e-48);
        assert_eq!(r.n_used, 2);
    }

    #[test]
    fn divergent_fraction_is_reported_not_raised() {
        // K(-1/1) has period-three approximants 0, -1, inf, 0, ...
        let cf = constant(0.0, -1.0, 1.0);
        let r = evaluate(&cf, 1e-20, 200).unwrap();
        assert!(r.value.is_none());
        assert!(r.has_flag(CfFlag::Diverged));
        assert!(r.has_flag(CfFlag::BNearZero));
        assert!(r.require().is_err());
    }

    #[test]
    fn evaluation_is_stable_under_larger_budgets() {
        let cf = rogers_ramanujan(0.6);
        let r1 = evaluate(&cf, 1e-30, 400).unwrap();
        let r2 = evaluate(&cf, 1e-30, 800).unwrap();
        assert!(rel_diff(&r1.value.unwrap(), &r2.value.unwrap()) < 2e-30);
    }

    #[test]
    fn renormalization_keeps_large_convergents_finite() {
        // A_n ~ 10^n and f = sqrt(26)
        let cf = constant(5.0, 1.0, 10.0);
        let f = evaluate(&cf, 1e-45, 2000).unwrap().value.unwrap();
        assert!(rel_diff(&(&f * &f), &c(26.0)) < 1e-44);
        let m = modified_approximant(&cf, 300, &c(0.5)).unwrap();
        assert!(rel_diff(&m, &f) < 1e-45);
    }

    #[test]
    fn modified_approximant_examples() {
        let cf = rogers_ramanujan(0.3);
        let p = convergents(&cf, 7).unwrap();
        assert_eq!(modified_approximant(&cf, 7, &c(0.0)).unwrap(), p[7].value().unwrap());
        assert_eq!(modified_approximant(&cf, 0, &c(0.25)).unwrap(), c(1.25));
        // S_1(w) = b0 + a1/(b1 + w)
        let s1 = modified_approximant(&cf, 1, &c(2.0)).unwrap();
        assert!(rel_diff(&s1, &(&c(1.0) + &(&c(0.3) / &c(3.0)))) < 1e-48);
        // w = -b1 makes the denominator of S_1 vanish
        let cf = constant(0.0, 1.0, 2.0);
        assert!(matches!(
            modified_approximant(&cf, 1, &c(-2.0)),
            Err(QcfError::SingularModification { n: 1 })
        ));
    }

    #[test]
    fn right_tail_modification_reproduces_the_value() {
        let cf = rogers_ramanujan(0.4);
        let f = evaluate(&cf, 1e-40, 1000).unwrap().value.unwrap();
        for n in [1, 3, 10] {
            let tail = evaluate(&tail_cf(&cf, n), 1e-42, 1000).unwrap().value.unwrap();
            let s = modified_approximant(&cf, n, &tail).unwrap();
            assert!(rel_diff(&s, &f) < 1e-38, "n = {n}");
        }
    }

    #[test]
    fn tail_examples() {
        let cf = rogers_ramanujan(0.3);
        let t0 = tail_cf(&cf, 0);
        assert!(t0.b0.is_zero());
        assert_eq!(t0.a(4).unwrap(), cf.a(4).unwrap());
        let t2 = tail_cf(&cf, 2);
        assert_eq!(t2.a(1).unwrap(), cf.a(3).unwrap());
        // f = b0 + a1/(b1 + f^(1))
        let f = evaluate(&cf, 1e-40, 1000).unwrap().value.unwrap();
        let f1 = evaluate(&tail_cf(&cf, 1), 1e-40, 1000).unwrap().value.unwrap();
        let rebuilt = &cf.b0 + &(&cf.a(1).unwrap() / &(&cf.b(1).unwrap() + &f1));
        assert!(rel_diff(&f, &rebuilt) < 1e-38);
    }

    #[test]
    fn tail_sequence_checks() {
        let cf = rogers_ramanujan(0.3);
        let tails = |n: usize| evaluate(&tail_cf(&cf, n), 1e-44, 1000)?.require();
        let ok = check_tail_sequence(&cf, tails, 8, 1e-35);
        assert!(ok.ok, "{ok:?}");
        let perturbed = |n: usize| {
            let t = evaluate(&tail_cf(&cf, n), 1e-44, 1000)?.require()?;
            Ok(if n == 5 { &t + &c(1e-6) } else { t })
        };
        let bad = check_tail_sequence(&cf, perturbed, 8, 1e-35);
        assert!(!bad.ok);
        // index 4 sees the perturbed g_5 on its right side; index 5 sees it on the left
        assert_eq!(bad.first_violation, Some(4));
    }

    #[test]
    fn equivalence_with_unit_factors_is_identity() {
        let cf = rogers_ramanujan(0.3);
        let e = equivalence_transform(&cf, |_| Ok(c(1.0)));
        for n in 1..10 {
            assert_eq!(e.a(n).unwrap(), cf.a(n).unwrap());
            assert_eq!(e.b(n).unwrap(), cf.b(n).unwrap());
        }
        let z = equivalence_transform(&cf, |n| Ok(c(if n == 2 { 0.0 } else { 1.0 })));
        assert!(matches!(z.b(2), Err(QcfError::Spec { .. })));
    }

    #[test]
    fn scale_and_reciprocal() {
        let cf = rogers_ramanujan(0.35);
        let f = evaluate(&cf, 1e-40, 1000).unwrap().value.unwrap();
        let k = Complex::parse("0.5-1.5i", P).unwrap();
        let scaled = evaluate(&cf.scale(&k), 1e-40, 1000).unwrap().value.unwrap();
        assert!(rel_diff(&scaled, &(&f * &k)) < 1e-38);
        let inv = evaluate(&cf.reciprocal(), 1e-40, 1000).unwrap().value.unwrap();
        assert!(rel_diff(&inv, &(&c(1.0) / &f)) < 1e-38);
        let fin = CfSpec::finite("f", c(2.0), vec![c(1.0)], vec![c(4.0)])
            .unwrap()
            .reciprocal();
        assert_eq!(fin.len(), Some(2));
        let v = evaluate(&fin, 1e-30, 10).unwrap().value.unwrap();
        assert!(rel_diff(&v, &(&c(4.0) / &c(9.0))) < 1e-48);
    }

    #[test]
    fn cached_rules_return_identical_coefficients() {
        let cf = rogers_ramanujan(0.3);
        let cc = cf.cached();
        for n in [3, 1, 3, 7] {
            assert_eq!(cc.a(n).unwrap(), cf.a(n).unwrap());
        }
    }

    #[test]
    fn fibonacci_has_no_separate_limits() {
        let cf = constant(1.0, 1.0, 1.0);
        match separate_limits(&cf, 1e-30, 2000).unwrap() {
            SeparateLimits::NotSeparate(NotSeparate::Unbounded) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn separate_limits_of_a_simple_fraction() {
        // b_n = 1, a_n = q^n: A_n and B_n converge (sum of |a_n| is finite)
        let cf = rogers_ramanujan(0.2);
        let SeparateLimits::Limits { a, b, .. } = separate_limits(&cf, 1e-40, 2000).unwrap() else {
            panic!("expected limits");
        };
        let f = evaluate(&cf, 1e-40, 2000).unwrap().value.unwrap();
        assert!(rel_diff(&(&a / &b), &f) < 1e-38);
    }

    fn random_cf(coeffs: Vec<(f64, f64, f64, f64)>) -> CfSpec {
        let n = coeffs.len();
        let a: Vec<Complex> = coeffs.iter().map(|t| Complex::from_parts_f64(t.0, t.1, P)).collect();
        let b: Vec<Complex> = coeffs.iter().map(|t| Complex::from_parts_f64(t.2, t.3, P)).collect();
        let cf = CfSpec::finite("rand", c(0.5), a, b).unwrap();
        assert_eq!(cf.len(), Some(n));
        cf
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn determinant_identity_holds(coeffs in prop::collection::vec((0.1f64..1.0, -1.0f64..1.0, 0.1f64..2.0, -1.0f64..1.0), 60)) {
            let cf = random_cf(coeffs);
            let dev = determinant_deviation(&cf, 60).unwrap();
            prop_assert!(dev < P.structural_tol(), "deviation {dev:e}");
        }

        #[test]
        fn equivalence_transform_preserves_approximants(
            coeffs in prop::collection::vec((0.1f64..1.0, -1.0f64..1.0, 0.1f64..2.0, -1.0f64..1.0), 40),
            rs in prop::collection::vec(0.5f64..2.0, 41),
        ) {
            let cf = random_cf(coeffs);
            let rs: Vec<Complex> = rs.into_iter().map(c).collect();
            let e = equivalence_transform(&cf, move |n| Ok(rs[n].clone()));
            let p1 = convergents(&cf, 40).unwrap();
            let p2 = convergents(&e, 40).unwrap();
            for (x, y) in p1.iter().zip(&p2) {
                if x.b.abs_f64() > 1e-10 {
                    let d = rel_diff(&x.value().unwrap(), &y.value().unwrap());
                    prop_assert!(d < P.structural_tol(), "n = {} deviation {d:e}", x.n);
                }
            }
        }
    }
}
