use hyperquad::exton::SpecialCase;
use hyperquad::report::{self, Format};
use hyperquad::verify::{
    run_grid, run_suite, theorem_grid, validate_tables, Classification, Counts, GridSpec,
    IdentityId, Suite, SuiteOptions, SuiteReport, DEFAULT_SEED,
};
use hyperquad::{Error, SeriesControl};

#[test]
fn identity_ids_round_trip() {
    for text in [
        "DIXON_CELL(-1,3)",
        "THEOREM_21(2,0)",
        "REDUCTION_CHAIN(0,3)",
        "GENERAL_13",
        "E31",
        "E37",
        "E44",
        "SRIVASTAVA",
    ] {
        let id: IdentityId = text.parse().unwrap();
        assert_eq!(id.to_string(), text);
    }
    assert!("THEOREM_21(3,1)".parse::<IdentityId>().is_ok());
    assert!("E38".parse::<IdentityId>().is_err());
    assert!("DIXON_CELL(1)".parse::<IdentityId>().is_err());
}

#[test]
fn grid_validation() {
    let no_axes = GridSpec::new(IdentityId::Special(SpecialCase::E31), 1e-8);
    assert!(matches!(run_grid(&no_axes), Err(Error::Config(_))));

    let gap = GridSpec::new(IdentityId::Theorem21(3, 1), 1e-8)
        .axis("b", &[0.3])
        .axis("d", &[1.1])
        .axis("x", &[0.2]);
    assert!(matches!(
        run_grid(&gap),
        Err(Error::UnsupportedPair { i: 3, j: 1 })
    ));

    let bad_tol = GridSpec::new(IdentityId::Srivastava, 0.0)
        .axis("a", &[1.0])
        .axis("x", &[0.2]);
    assert!(matches!(run_grid(&bad_tol), Err(Error::Config(_))));
}

#[test]
fn small_grid_classifies_points() {
    // x = 0.999 is outside the budget at rel_tol 1e-13 when max_terms is tiny
    let spec = GridSpec::new(IdentityId::Special(SpecialCase::E32), 1e-8)
        .axis("b", &[0.5, 1.0])
        .axis("d", &[1.2])
        .axis("x", &[0.3, 0.95])
        .with_control(SeriesControl {
            max_terms: 60,
            ..SeriesControl::default()
        });
    let rep = run_grid(&spec).unwrap();
    assert_eq!(rep.outcomes.len(), 4);
    let class = |b: f64, x: f64| {
        rep.outcomes
            .iter()
            .find(|o| o.coords["b"] == b && o.coords["x"] == x)
            .unwrap()
            .classification
    };
    assert_eq!(class(0.5, 0.3), Classification::Pass);
    assert_eq!(class(0.5, 0.95), Classification::SlowSkip);
    assert_eq!(class(1.0, 0.3), Classification::PoleSkip);
    assert_eq!(rep.counts.total(), 4);
    assert!(rep.skip_warning);
}

#[test]
fn theorem_grid_meets_its_bounds() {
    for (i, j) in [(3, 0), (0, 0), (-3, 3)] {
        let rep = run_grid(&theorem_grid(IdentityId::Theorem21(i, j))).unwrap();
        assert_eq!(rep.counts.fail, 0);
        assert!(rep.counts.skip_share() < 0.2);
        for o in &rep.outcomes {
            if o.classification == Classification::SlowSkip {
                assert_eq!(o.coords["x"].abs(), 0.9);
            }
        }
    }
}

#[test]
fn tables_suite_defaults() {
    let reports = validate_tables(50, DEFAULT_SEED).unwrap();
    assert_eq!(reports.len(), 23);
    for r in &reports {
        assert_eq!(r.outcomes.len(), 50);
        assert_eq!(r.counts.fail, 0, "{}", r.grid.identity);
        let terminating = r
            .outcomes
            .iter()
            .filter(|o| o.coords["b"] <= 0.0 && o.coords["b"].fract() == 0.0);
        for o in terminating {
            assert!(o.tolerance <= 1e-11);
        }
    }
    assert!(matches!(validate_tables(0, 1), Err(Error::Config(_))));
}

#[test]
fn suites_are_deterministic() {
    let opts = SuiteOptions {
        seed: 7,
        samples_per_cell: 10,
        ..SuiteOptions::default()
    };
    for suite in [Suite::Tables, Suite::General, Suite::Special] {
        let a = run_suite(suite, &opts).unwrap();
        let b = run_suite(suite, &opts).unwrap();
        assert_eq!(report::json(&a).unwrap(), report::json(&b).unwrap());
    }
    let other = run_suite(Suite::Tables, &SuiteOptions { seed: 8, ..opts }).unwrap();
    assert_ne!(
        report::json(&other).unwrap(),
        report::json(&run_suite(Suite::Tables, &opts).unwrap()).unwrap()
    );
}

#[test]
fn json_report_recounts() {
    let rep = run_suite(Suite::Limiting, &SuiteOptions::default()).unwrap();
    let text = report::render(&rep, Format::Json).unwrap();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    let all = Counts::tally(back.reports.iter().flat_map(|r| &r.outcomes));
    assert_eq!(all, back.summary.counts);
    for r in &back.reports {
        assert_eq!(Counts::tally(&r.outcomes), r.counts);
    }
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let first = &v["reports"][0]["outcomes"][0];
    for key in ["identity", "coords", "class", "residual"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn csv_and_human_renderings() {
    let rep = run_suite(Suite::Special, &SuiteOptions::default()).unwrap();
    let csv = report::render(&rep, Format::Csv).unwrap();
    let rows = csv.lines().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(rows, rep.summary.counts.total());
    assert!(csv
        .lines()
        .next()
        .unwrap()
        .starts_with("identity,coords,class,residual"));
    let human = report::render(&rep, Format::Human).unwrap();
    assert!(human.contains("E37"));
    assert!(human.contains("total:"));
}

#[test]
fn tolerance_override_applies_everywhere() {
    let opts = SuiteOptions {
        tolerance: Some(1e-30),
        ..SuiteOptions::default()
    };
    let rep = run_suite(Suite::Srivastava, &opts).unwrap();
    assert!(!rep.passed());
    assert!(rep.reports.iter().all(|r| r.grid.tolerance == 1e-30));
}

#[test]
fn suite_names_parse() {
    for s in [
        "tables",
        "theorem",
        "chain",
        "general",
        "special",
        "limiting",
        "srivastava",
        "all",
    ] {
        assert!(s.parse::<Suite>().is_ok(), "{s}");
    }
    assert!("everything".parse::<Suite>().is_err());
}
