use glspace_core::operators::checks::CheckRecord;
use glspace_core::psi::parse_psi;
use glspace_core::sharpness::{ratio_v, PsiChoice, RatioOperator};
use glspace_core::source::registry::parse_source;
use glspace_core::suite::{emit_report, job_names, parse_report, run_suite, Format, SuiteConfig, SuiteName, SuiteResult};

#[test]
fn norms_and_duality_suites_pass() {
    for name in [SuiteName::Norms, SuiteName::Duality] {
        let r = run_suite(&SuiteConfig::new(name)).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(!r.records.is_empty());
        assert_eq!(r.metadata["checks"], job_names(name).join(" "));
    }
}

#[test]
fn injected_failure_fails_the_aggregate() {
    let cfg = SuiteConfig { checks: Some(vec!["kaczmarz".into()]), ..SuiteConfig::new(SuiteName::Operators) };
    let mut r = run_suite(&cfg).unwrap();
    assert!(r.pass);
    let mut records = r.records.clone();
    records.push(CheckRecord::new("injected/p=2".into(), 2.0, 1.5, 1.0, 1e-6));
    r = SuiteResult::from_records(&r.suite, records, r.metadata.clone());
    assert!(!r.pass);
    assert_eq!(r.failures().map(|f| f.check_id.as_str()).collect::<Vec<_>>(), ["injected/p=2"]);
    let back = parse_report(&emit_report(&r, Format::Json).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn csv_report_has_one_row_per_record() {
    let cfg = SuiteConfig { checks: Some(vec!["hy_discrete".into()]), ..SuiteConfig::new(SuiteName::Operators) };
    let r = run_suite(&cfg).unwrap();
    let csv = String::from_utf8(emit_report(&r, Format::Csv).unwrap()).unwrap();
    assert_eq!(csv.lines().count(), r.records.len() + 1);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn unresolvable_spec_is_a_config_error() {
    let cfg = SuiteConfig { corpus: "trig-1000".into(), ..SuiteConfig::new(SuiteName::All) };
    assert!(run_suite(&cfg).is_err());
}

#[test]
fn hilbert_ratios_stay_below_one() {
    let g = parse_source("torus:gdelta_sin:Delta=1").unwrap();
    let natural = ratio_v(RatioOperator::Hilbert, &g, PsiChoice::Natural, None, &[2.0, 8.0, 32.0]).unwrap();
    assert!((natural.ratios[0].unwrap() - 1.0).abs() < 1e-6);
    assert!(natural.ratios.iter().flatten().all(|r| *r <= 1.0 + 1e-6));
    let psi = parse_psi("exp:1").unwrap();
    let explicit = ratio_v(RatioOperator::Hilbert, &g, PsiChoice::Explicit, Some(&psi), &[]).unwrap();
    let v = explicit.ratios[0].unwrap();
    assert!(v > 0.0 && v <= 1.0 + 1e-5, "{v}");
}
