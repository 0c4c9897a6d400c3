//! Series engine tests: streamed sums against naive recomputation, term
//! positivity and monotonicity, and desk-scale verdict checks.

use proptest::prelude::*;
use qsandor::series::{
    default_checkpoints, partial_sums, term_of, SeriesKind, SeriesSpec, VerdictHint,
};

fn spec(kind: SeriesKind, alpha: f64, p: Option<f64>, n_max: u64) -> SeriesSpec {
    SeriesSpec::new(kind, alpha, p, n_max).unwrap()
}

#[test]
fn streamed_matches_naive_recomputation() {
    // n_max = 1e4: streamed cursor sums vs per-term recomputation, 1e-12 rel
    let n_max = 10_000u64;
    let cases = [
        (SeriesKind::SStarWeighted, 1.0, None),
        (SeriesKind::SStarWeighted, 2.0, None),
        (SeriesKind::ZStarPlain, 2.0, None),
        (SeriesKind::ZStarPlain, 3.0, None),
        (SeriesKind::ZStarWeighted, 0.5, None),
        (SeriesKind::PStarLogLog, 1.0, Some(2.0)),
        (SeriesKind::PStarLogLog, 2.0, Some(1.5)),
    ];
    for (kind, alpha, p) in cases {
        let s = spec(kind, alpha, p, n_max);
        let rep = partial_sums(&s, &default_checkpoints(n_max)).unwrap();
        for &(cp, streamed) in &rep.checkpoints {
            let mut naive = 0.0;
            for n in s.start_index()..=cp {
                naive += term_of(&s, n).unwrap();
            }
            let rel = (streamed - naive).abs() / naive.max(f64::MIN_POSITIVE);
            assert!(
                rel < 1e-12,
                "{:?} alpha={alpha} at N={cp}: rel {rel:e}",
                kind
            );
        }
    }
}

#[test]
fn verdicts_separate_at_two_hundred_thousand() {
    let n = 200_000u64;
    let cps = default_checkpoints(n);
    let rep = partial_sums(&spec(SeriesKind::SStarWeighted, 2.0, None, n), &cps).unwrap();
    assert_eq!(rep.verdict_hint, VerdictHint::DeltaVanishing);
    let rep = partial_sums(&spec(SeriesKind::SStarWeighted, 1.0, None, n), &cps).unwrap();
    assert_eq!(rep.verdict_hint, VerdictHint::DeltaPersistent);
    // Theorem 1.6 family: divergent side too slow for a desk verdict, so
    // PERSISTENT or INCONCLUSIVE are both acceptable readings
    let rep = partial_sums(&spec(SeriesKind::PStarLogLog, 1.0, Some(2.0), n), &cps).unwrap();
    assert!(matches!(
        rep.verdict_hint,
        VerdictHint::DeltaPersistent | VerdictHint::Inconclusive
    ));
}

#[test]
fn report_shape() {
    let s = spec(SeriesKind::ZStarPlain, 2.0, None, 1000);
    let rep = partial_sums(&s, &[10, 20, 1000]).unwrap();
    assert_eq!(rep.checkpoints.len(), 3);
    assert_eq!(rep.doubling_deltas, vec![(10, rep.checkpoints[1].1 - rep.checkpoints[0].1)]);
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["spec"]["kind"], "Z_STAR_PLAIN");
    assert_eq!(json["verdict_hint"], "INCONCLUSIVE");
}

proptest! {
    #[test]
    fn terms_positive_and_sums_monotone(
        kind_idx in 0usize..4,
        alpha in 0.1f64..4.0,
        n_max in 100u64..3000,
    ) {
        let (kind, p) = [
            (SeriesKind::SStarWeighted, None),
            (SeriesKind::ZStarPlain, None),
            (SeriesKind::ZStarWeighted, None),
            (SeriesKind::PStarLogLog, Some(2.0)),
        ][kind_idx];
        let s = SeriesSpec::new(kind, alpha, p, n_max).unwrap();
        let start = s.start_index();
        for n in [start, start + 1, n_max / 2 + start, n_max] {
            prop_assert!(term_of(&s, n).unwrap() > 0.0);
        }
        let rep = partial_sums(&s, &[n_max / 4 + start, n_max / 2 + start, n_max]).unwrap();
        for w in rep.checkpoints.windows(2) {
            prop_assert!(w[1].1 >= w[0].1);
        }
    }
}
