use super::*;
use crate::qseries::Complex;

const P: Precision = Precision::DEFAULT;

fn point(q: f64, a: f64, b: f64, l: f64) -> ParameterPoint {
    ParameterPoint::new()
        .with_f64(Sym::Q, q, P)
        .with_f64(Sym::A, a, P)
        .with_f64(Sym::B, b, P)
        .with_f64(Sym::Lambda, l, P)
}

#[test]
fn gcf1_standard_point_passes() {
    let r = verify("gcf1", &point(0.2, 0.3, 0.4, 0.5), 1e-20, &Budget::default()).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.flags.is_empty());
    assert!(r.n_quotients > 0 && r.n_terms > 0);
}

#[test]
fn trivial_parameters_give_one_on_both_sides() {
    let r = verify("gcf1", &point(0.3, 0.0, 0.0, 0.0), 1e-20, &Budget::default()).unwrap();
    assert!(r.pass, "{r:?}");
    let one = Complex::from_f64(1.0, P);
    assert!(rel_diff(r.lhs.as_ref().unwrap(), &one) < 1e-40);
    assert!(rel_diff(r.rhs.as_ref().unwrap(), &one) < 1e-40);
}

#[test]
fn out_of_domain_point_is_flagged_not_passed() {
    let r = verify("gcf2", &point(0.4, 3.0, 0.3, 0.2), 1e-15, &Budget::default()).unwrap();
    assert!(r.has_flag(Flag::DomainViolation));
    assert!(!r.pass);
}

#[test]
fn missing_parameter_is_reported() {
    let p = ParameterPoint::new().with_f64(Sym::Q, 0.3, P);
    let r = verify("gcf1", &p, 1e-15, &Budget::default()).unwrap();
    assert!(!r.pass);
    assert!(r.error.is_some());
}

#[test]
fn unknown_identity() {
    let b = Budget::default();
    assert!(matches!(
        verify("nope", &point(0.2, 0.1, 0.1, 0.1), 1e-15, &b),
        Err(QcfError::UnknownIdentity(_))
    ));
    assert!(matches!(
        sweep("nope", 2, 1e-15, P, &b),
        Err(QcfError::UnknownIdentity(_))
    ));
    assert!(matches!(
        bm_verify("nope", &point(0.2, 0.1, 0.1, 0.1), 2, 10, 1e-15),
        Err(QcfError::UnknownPreset(_))
    ));
}

#[test]
fn sweeps_pass_and_are_sorted() {
    for id in ["heine", "entry12"] {
        let s = sweep(id, 20, 1e-15, P, &Budget::default()).unwrap();
        assert_eq!(s.n_seeds, 20);
        assert!(s.all_pass(), "{id}: {:?}", s.reports.iter().find(|r| !r.pass));
        assert_eq!(s.pass_rate, 1.0);
        let seeds: Vec<_> = s.reports.iter().map(|r| r.seed.unwrap()).collect();
        assert_eq!(seeds, (1..=20).collect::<Vec<_>>());
    }
}

#[test]
fn reports_are_reproducible() {
    let b = Budget::default();
    let x = verify_seed("gcf3", 5, 1e-15, P, &b).unwrap().to_json().unwrap();
    let y = verify_seed("gcf3", 5, 1e-15, P, &b).unwrap().to_json().unwrap();
    assert_eq!(x, y);
    assert!(x.contains(REPORT_SCHEMA_VERSION));
    let v: serde_json::Value = serde_json::from_str(&x).unwrap();
    assert!(v["rel_diff"].is_string());
    assert_eq!(v["seed"], 5);
}

#[test]
fn csv_has_a_row_per_seed() {
    let s = sweep("jackson", 3, 1e-15, P, &Budget::default()).unwrap();
    let text = SweepReport::to_csv(&[s]).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("id,seed,pass,rel_diff"));
}

#[test]
fn g_ratio_fractions_agree() {
    let b = Budget::default();
    let p = point(0.2, 0.3, 0.4, 0.5);
    let r = crosscheck_equal_cfs(&["f1", "f2", "f3", "f4"], &p, 1e-20, &b).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.values.len(), 4);
    let single = crosscheck_equal_cfs(&["f2"], &p, 1e-20, &b).unwrap();
    assert!(single.pass);
    assert_eq!(single.max_deviation, 0.0);
}

#[test]
fn f3_outside_its_region_is_flagged() {
    let p = point(0.2, 0.3, 1.5, 0.5);
    let r = crosscheck_equal_cfs(&["f1", "f2"], &p, 1e-20, &Budget::default()).unwrap();
    assert!(r.pass, "{r:?}");
    let r = crosscheck_equal_cfs(&["f1", "f3"], &p, 1e-20, &Budget::default()).unwrap();
    assert!(r.flags.contains(&Flag::DomainViolation));
    assert!(!r.pass);
}

#[test]
fn chain_presets_verify() {
    let p = point(0.2, 0.3, 0.4, 0.5);
    for preset in ["thm41-f1f2", "thm41-f2f3"] {
        let r = bm_verify(preset, &p, 6, 40, 1e-30).unwrap();
        assert!(r.pass, "{preset}: {r:?}");
        assert_eq!(r.approximant.len(), 6);
    }
}

#[test]
fn excluded_lambda_reports_the_failing_step() {
    let mut p = point(0.2, 0.3, 0.4, 0.0);
    let (a, b, q) = (p.get(Sym::A).unwrap(), p.get(Sym::B).unwrap(), p.q().unwrap());
    let l = &(a * b) * &q.pow(2);
    p.set(Sym::Lambda, l);
    match bm_verify("thm41-f1f2", &p, 4, 20, 1e-30) {
        Err(QcfError::BmDegenerate { step, .. }) => assert_eq!(step, Some(1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn config_parsing() {
    let c = Config::parse("# defaults\ntol = 1e-20\nprecision = 60\nmax_quotients=500\nwall_seconds = 2.5\n").unwrap();
    assert_eq!(c.tol, 1e-20);
    assert_eq!(c.precision, Precision::digits(60));
    assert_eq!(c.budget.max_quotients, 500);
    assert_eq!(c.budget.wall, std::time::Duration::from_millis(2500));
    assert_eq!(c.budget.max_terms, Budget::default().max_terms);
    assert!(Config::parse("speed = 3").is_err());
    assert!(Config::parse("precision = 8").is_err());
    assert!(Config::parse("tol 3").is_err());
    let c = Config::default().with_precision_text(Some(" 40 ")).unwrap();
    assert_eq!(c.precision, Precision::digits(40));
    assert!(Config::default().with_precision_text(Some("x")).is_err());
}

#[test]
fn internal_tolerance_respects_precision() {
    assert!((internal_tol(1e-15, P) - 1e-19).abs() < 1e-30);
    assert_eq!(internal_tol(1e-60, P), P.structural_tol());
}

#[test]
fn wall_budget_is_enforced() {
    let b = Budget {
        wall: std::time::Duration::ZERO,
        ..Budget::default()
    };
    assert!(matches!(
        verify("gcf1", &point(0.2, 0.3, 0.4, 0.5), 1e-15, &b),
        Err(QcfError::BudgetExhausted(_))
    ));
}
