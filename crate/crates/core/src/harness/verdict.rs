use serde::Serialize;

use super::sweep::SweepRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SwitchoverStatus {
    Strong,
    Weak,
    None,
    Inconclusive,
}

/// `weak` holds a β where central seeding infects significantly more and a
/// β where uniform seeding does; `strong` adds `δ̂ = min |diff| / n` over
/// those two points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SwitchoverVerdict {
    pub status: SwitchoverStatus,
    pub weak: Option<(f64, f64)>,
    pub strong: Option<(f64, f64, f64)>,
}

/// Looks for a sign change of the paired difference `|G(𝐒_V)| - |G(𝐒_C)|`
/// among β strictly inside (0, 1), using 95% intervals. Each witness is the
/// CI-separated point with the largest `|diff.mean|`.
pub fn detect_switchover(records: &[SweepRecord], n: usize, delta_min: f64) -> SwitchoverVerdict {
    let interior = || records.iter().filter(|r| r.beta > 0.0 && r.beta < 1.0);
    let pick = |pred: fn(&SweepRecord) -> bool| {
        interior()
            .filter(|r| pred(r))
            .max_by(|a, b| a.diff.mean.abs().total_cmp(&b.diff.mean.abs()))
    };
    let central_worse = pick(|r| r.diff.below_zero());
    let uniform_worse = pick(|r| r.diff.above_zero());
    match (central_worse, uniform_worse) {
        (Some(a), Some(b)) => {
            let weak = Some((a.beta, b.beta));
            let gap = a.diff.mean.abs().min(b.diff.mean.abs());
            let strong = (gap >= delta_min * n as f64 && gap > 0.0).then(|| (a.beta, b.beta, gap / n as f64));
            SwitchoverVerdict {
                status: if strong.is_some() { SwitchoverStatus::Strong } else { SwitchoverStatus::Weak },
                weak,
                strong,
            }
        }
        (None, None) => SwitchoverVerdict { status: SwitchoverStatus::Inconclusive, weak: None, strong: None },
        _ => SwitchoverVerdict { status: SwitchoverStatus::None, weak: None, strong: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::EstimateWithCI;

    fn rec(beta: f64, mean: f64, se: f64) -> SweepRecord {
        let est = EstimateWithCI { mean, std_error: se, trials: 1000, ci95: (mean - 1.96 * se, mean + 1.96 * se) };
        SweepRecord { beta, est_c: est, est_v: est, diff: est, k: 1, n: 100, seed: 0 }
    }

    #[test]
    fn strong_from_synthetic_records() {
        let recs = [rec(0.0, 0.0, 0.0), rec(0.1, -5.0, 0.01), rec(0.9, 5.0, 0.01), rec(1.0, 0.0, 0.0)];
        let v = detect_switchover(&recs, 100, 0.01);
        assert_eq!(v.status, SwitchoverStatus::Strong);
        assert_eq!(v.weak, Some((0.1, 0.9)));
        let (_, _, delta) = v.strong.unwrap();
        assert!((delta - 0.05).abs() < 1e-15);
    }

    #[test]
    fn one_sided_and_straddling() {
        let pos = [rec(0.1, 1.0, 0.1), rec(0.5, 2.0, 0.1)];
        assert_eq!(detect_switchover(&pos, 100, 0.01).status, SwitchoverStatus::None);
        let flat = [rec(0.1, 0.1, 1.0), rec(0.5, -0.1, 1.0)];
        assert_eq!(detect_switchover(&flat, 100, 0.01).status, SwitchoverStatus::Inconclusive);
        assert_eq!(detect_switchover(&[], 100, 0.01).status, SwitchoverStatus::Inconclusive);
        let small = [rec(0.1, -0.5, 0.01), rec(0.9, 0.5, 0.01)];
        let v = detect_switchover(&small, 100, 0.01);
        assert_eq!(v.status, SwitchoverStatus::Weak);
        assert!(v.strong.is_none());
    }

    #[test]
    fn raising_delta_never_upgrades() {
        let recs = [rec(0.05, -3.0, 0.5), rec(0.2, -1.0, 0.2), rec(0.8, 2.0, 0.3)];
        let mut last = detect_switchover(&recs, 100, 0.0).status;
        for delta in [0.005, 0.01, 0.02, 0.03, 0.1] {
            let s = detect_switchover(&recs, 100, delta).status;
            assert!(!(last != SwitchoverStatus::Strong && s == SwitchoverStatus::Strong));
            last = s;
        }
        assert_eq!(last, SwitchoverStatus::Weak);
    }
}
