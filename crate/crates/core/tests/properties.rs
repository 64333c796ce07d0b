use glspace_core::norms::lp_continuous;
use glspace_core::operators::checks::CheckRecord;
use glspace_core::operators::hilbert::hilbert_trig;
use glspace_core::operators::leindler::leindler_ratio;
use glspace_core::operators::maximal::{maximal_apply, s_star_lp, MaximalKind};
use glspace_core::operators::{pichorides, Which};
use glspace_core::source::{Coeffs, Family, SampledFunction, TrigPolynomial, Weight, WeightedSequence};
use glspace_core::suite::{emit_report, parse_report, Format, SuiteResult};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn trig() -> impl Strategy<Value = TrigPolynomial> {
    (1usize..12).prop_flat_map(|m| {
        (prop::collection::vec(-2.0..2.0f64, m + 1), prop::collection::vec(-2.0..2.0f64, m))
            .prop_map(|(a, b)| TrigPolynomial::new(a, b).unwrap())
    })
}

fn max_diff(s: &TrigPolynomial, t: &TrigPolynomial) -> f64 {
    s.add(&t.scale(-1.0)).l2_norm()
}

fn lp(t: &TrigPolynomial, p: f64) -> f64 {
    lp_continuous(&SampledFunction::new(Family::Trig(t.clone())), p, false).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_twice_is_minus_mean_zero_part(t in trig()) {
        let hh = hilbert_trig(&hilbert_trig(&t));
        prop_assert!(max_diff(&hh, &t.mean_zero().scale(-1.0)) < 1e-14);
    }

    #[test]
    fn partial_sums_are_projections(t in trig(), m in 0usize..14) {
        let s = t.partial_sum(m);
        prop_assert!(max_diff(&s.partial_sum(m), &s) == 0.0);
        prop_assert!(s.degree() <= m);
        prop_assert!(max_diff(&t.partial_sum(t.degree() + m), &t) == 0.0);
    }

    #[test]
    fn lp_norm_is_homogeneous(t in trig(), lam in -5.0..5.0f64, p in 1.0..8.0f64) {
        let lhs = lp(&t.scale(lam), p);
        let rhs = lam.abs() * lp(&t, p);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn conjugate_respects_pichorides(t in trig(), p in 1.1..10.0f64) {
        let h = lp(&hilbert_trig(&t), p);
        prop_assert!(h <= pichorides(p).unwrap() * lp(&t, p) * (1.0 + 1e-9));
    }

    #[test]
    fn maximal_partial_sum_dominates(t in trig(), x in -4.0..4.0f64, p in 1.0..6.0f64) {
        let f = SampledFunction::new(Family::Trig(t.clone()));
        let grid: Vec<f64> = (0..=t.degree()).map(|m| m as f64).collect();
        let s = maximal_apply(&f, MaximalKind::SStar, &grid, &[x]).unwrap();
        for m in 0..=t.degree() {
            prop_assert!(s.values[0] >= t.partial_sum(m).eval(x).abs() - 1e-12);
        }
        prop_assert!(s_star_lp(&t, t.degree(), p).unwrap() >= lp(&t, p) * (1.0 - 1e-9));
    }

    #[test]
    fn leindler_operators_obey_the_bound(
        x in prop::collection::vec(0.0..3.0f64, 1..60),
        beta in prop::collection::vec(0.01..5.0f64, 60),
        p in 1.05..6.0f64,
    ) {
        prop_assume!(x.iter().any(|v| *v > 0.0));
        let n = x.len();
        let seq = WeightedSequence::new(
            Coeffs::Values { values: x, beyond: None },
            Weight::Values(beta[..n].to_vec()),
            Some(n as u64),
        ).unwrap();
        prop_assert!(leindler_ratio(&seq, Which::T, p).unwrap() <= 1.0 + 1e-12);
        prop_assert!(leindler_ratio(&seq, Which::U, p).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn reports_serialize_deterministically(
        rows in prop::collection::vec((0.0..1e3f64, 0.0..1e3f64, 1.0..50.0f64), 0..20),
        diverge in any::<bool>(),
    ) {
        let mut records: Vec<CheckRecord> = rows
            .iter()
            .enumerate()
            .map(|(i, (l, r, p))| CheckRecord::new(format!("r/{i}"), *p, *l, *r, 1e-6))
            .collect();
        if diverge {
            records.push(CheckRecord::new("r/inf".into(), 2.0, f64::INFINITY, 1.0, 0.0));
        }
        let result = SuiteResult::from_records("prop", records.clone(), BTreeMap::new());
        prop_assert_eq!(result.pass, records.iter().all(|r| r.pass));
        let a = emit_report(&result, Format::Json).unwrap();
        prop_assert_eq!(&a, &emit_report(&result.clone(), Format::Json).unwrap());
        prop_assert_eq!(emit_report(&result, Format::Csv).unwrap(), emit_report(&result.clone(), Format::Csv).unwrap());
        let back = parse_report(&a).unwrap();
        prop_assert_eq!(back.pass, result.pass);
        prop_assert_eq!(emit_report(&back, Format::Json).unwrap(), a);
    }
}
