use struve_core::identities::{verify_case, IntegralCase, Variant, ABSOLUTE_FLOOR};
use struve_core::quadrature::QuadControl;
use struve_core::series::SeriesControl;
use struve_core::{real, SpecialError};

fn t1(c: f64, y: f64) -> IntegralCase {
    IntegralCase::new(
        Variant::Theorem1,
        1.0,
        real(2.0),
        real(0.75),
        real(1.0),
        real(c),
        vec![real(1.0)],
        vec![y],
    )
    .unwrap()
}

#[test]
fn sample_cases_verify() {
    let q = QuadControl::default();
    let s = SeriesControl::default();
    let r = verify_case(&t1(1.0, 1.0), &q, &s, 1e-6);
    assert!(r.pass, "{r:?}");
    assert!(r.lhs.unwrap().converged);
    assert!(r.rel_err <= 1e-6 && r.abs_err >= 0.0);
    assert_eq!(r.tolerance_used, 1e-6);

    let t2 = IntegralCase::new(
        Variant::Theorem2,
        1.0,
        real(3.0),
        real(0.6),
        real(1.0),
        real(1.0),
        vec![real(0.5), real(1.0)],
        vec![0.5, 1.0],
    )
    .unwrap();
    let r = verify_case(&t2, &q, &s, 1e-6);
    assert!(r.pass, "{r:?}");
}

#[test]
fn tiny_rhs_compares_absolutely() {
    // y^(p+1) underflows far below the relative floor
    let r = verify_case(&t1(1.0, 1e-160), &QuadControl::default(), &SeriesControl::default(), 1e-6);
    assert!(r.pass, "{r:?}");
    assert!(r.abs_err <= ABSOLUTE_FLOOR);
}

#[test]
fn pass_flag_follows_tolerance() {
    let r = verify_case(&t1(1.0, 1.0), &QuadControl::default(), &SeriesControl::default(), 1e-30);
    assert!(!r.pass);
    assert!(r.rel_err > 1e-30);
}

#[test]
fn series_failure_is_reported_not_raised() {
    let tight = SeriesControl::new(1e-16, 2, 3).unwrap();
    let r = verify_case(&t1(1.0, 1.0), &QuadControl::default(), &tight, 1e-6);
    assert!(!r.pass);
    assert!(r.note.unwrap().contains("failed"));
}

#[test]
fn violated_condition_message() {
    let err = IntegralCase::new(
        Variant::Theorem1,
        1.0,
        real(-3.0),
        real(0.5),
        real(1.0),
        real(1.0),
        vec![real(1.0)],
        vec![1.0],
    )
    .unwrap_err();
    assert!(matches!(err, SpecialError::ConditionViolated(_)));
    assert!(err.to_string().starts_with("condition violated: Re(mu) < Re(lambda + p) + n"));
}
