use hyperquad::scalar::gamma_ratio;
use hyperquad::{
    eval_pfq, eval_pfq_terminating, Error, PfqParams, PoleGuard, SeriesControl, SeriesStatus,
};
use proptest::prelude::*;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

#[test]
fn reference_examples() {
    let r = eval_pfq(&PfqParams::new([1.0, 1.0], [1.0]), 0.5, &ctl()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-13);

    let r = eval_pfq(&PfqParams::new([-2.0, 1.0, 1.0], [2.0, 2.0]), 1.0, &ctl()).unwrap();
    assert_eq!(r.status, SeriesStatus::Terminated);
    assert_eq!(r.terms_used, 3);
    assert!((r.value - 11.0 / 18.0).abs() < 1e-15);

    let v = eval_pfq_terminating(&PfqParams::new([2.0, -1.0, 0.5], [4.0, 2.5]), 1.0).unwrap();
    assert!((v - 0.9).abs() < 1e-15);
    let v = eval_pfq_terminating(&PfqParams::new([-2.0, 1.0], [1.0]), 1.0).unwrap();
    assert_eq!(v, 0.0);
}

#[test]
fn exp_and_cos() {
    // 0F0(;;z) = e^z, 0F1(;1/2;-z²/4) = cos z
    let r = eval_pfq(&PfqParams::new([], []), -3.5, &ctl()).unwrap();
    assert!((r.value - (-3.5f64).exp()).abs() < 1e-14);
    let z = 2.3f64;
    let r = eval_pfq(&PfqParams::new([], [0.5]), -z * z / 4.0, &ctl()).unwrap();
    assert!((r.value - z.cos()).abs() < 1e-13);
}

#[test]
fn known_2f1_values() {
    // 2F1(1,1;2;z) = -ln(1-z)/z; 2F1(1/2,1;3/2;z²) = artanh(z)/z
    let z = -0.73;
    let r = eval_pfq(&PfqParams::new([1.0, 1.0], [2.0]), z, &ctl()).unwrap();
    assert!((r.value - (-(1.0 - z).ln() / z)).abs() < 1e-13);
    let z = 0.6f64;
    let r = eval_pfq(&PfqParams::new([0.5, 1.0], [1.5]), z * z, &ctl()).unwrap();
    assert!((r.value - z.atanh() / z).abs() < 1e-13);
}

#[test]
fn slow_unit_argument_is_flagged() {
    // Gauss with excess 0.7: the tail after N terms is of order N^-0.7, so
    // the default budget cannot reach the tolerance and must say so.
    let r = eval_pfq(
        &PfqParams::new([0.7, 1.1], [2.5]),
        1.0,
        &SeriesControl::unit_argument(),
    )
    .unwrap();
    assert_eq!(r.status, SeriesStatus::MaxTermsExceeded);
    // mpmath: 2.0880840104301456954...
    assert!((r.value - 2.088_084_010_430_145_7).abs() < 1e-2);
}

#[test]
fn errors() {
    assert!(matches!(
        eval_pfq(&PfqParams::new([1.0, 1.0], [1.0]), -1.2, &ctl()),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        eval_pfq(&PfqParams::new([0.5, 0.5, 0.5], [1.0]), 0.1, &ctl()),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        eval_pfq(&PfqParams::new([0.5], [-3.0]), 0.1, &ctl()),
        Err(Error::DivisionByZero { .. })
    ));
    assert_eq!(
        eval_pfq_terminating(&PfqParams::new([0.5], [2.0]), 0.3),
        Err(Error::NotTerminating)
    );
}

proptest! {
    #[test]
    fn gauss_summation(a in 0.01f64..2.0, b in 0.01f64..2.0) {
        let c = a + b + 3.7;
        let relaxed = SeriesControl { max_terms: 2_000_000, ..SeriesControl::unit_argument() };
        let r = eval_pfq(&PfqParams::new([a, b], [c]), 1.0, &relaxed).unwrap();
        prop_assert!(r.is_reliable());
        let g = gamma_ratio(&[c, c - a - b], &[c - a, c - b], PoleGuard::default()).unwrap();
        prop_assert!((r.value - g).abs() <= 1e-9 * g.abs().max(1.0), "{} vs {}", r.value, g);
    }

    #[test]
    fn terminating_paths_agree(
        m in 0u32..12,
        b in 0.1f64..4.0,
        c in 0.3f64..5.0,
        d in 0.3f64..5.0,
        z in -1.0f64..1.0,
    ) {
        prop_assume!(z != 0.0);
        let p = PfqParams::new([-f64::from(m), b, 1.5], [c, d]);
        let series = eval_pfq(&p, z, &ctl()).unwrap();
        let exact = eval_pfq_terminating(&p, z).unwrap();
        prop_assert_eq!(series.status, SeriesStatus::Terminated);
        prop_assert_eq!(series.terms_used, m as usize + 1);
        prop_assert!((series.value - exact).abs() <= 1e-14 * exact.abs().max(1.0));
    }

    #[test]
    fn halving_tolerance_is_contiguous(
        a in 0.1f64..3.0,
        b in 0.1f64..3.0,
        c in 0.5f64..4.0,
        z in -0.9f64..0.9,
        tol_exp in 8i32..14,
    ) {
        let p = PfqParams::new([a, b], [c]);
        let loose = SeriesControl { rel_tol: 10f64.powi(-tol_exp), ..ctl() };
        let tight = SeriesControl { rel_tol: loose.rel_tol / 2.0, ..loose };
        let r1 = eval_pfq(&p, z, &loose).unwrap();
        let r2 = eval_pfq(&p, z, &tight).unwrap();
        prop_assert_eq!(r1.status, SeriesStatus::Converged);
        prop_assert!((r1.value - r2.value).abs() <= 10.0 * loose.rel_tol * r2.value.abs().max(1.0));
    }
}
