//! Uniform seed laws `Uni(L, k)`, the exact expected seed cut, and the
//! extreme-β comparisons between central and uniform seeding.

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::graph::{degree_stats, min_degree_profile, pair_count, Graph, Scenario, StarProperty, VertexSet};
use crate::scalar::Scalar;

/// Uniform distribution over the `k`-subsets of `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedDistribution {
    support: VertexSet,
    k: usize,
}

impl SeedDistribution {
    pub fn new(support: VertexSet, k: usize) -> Result<Self> {
        if k == 0 || k > support.len() {
            return domain(format!("seed size k={k} outside 1..={}", support.len()));
        }
        Ok(Self { support, k })
    }

    pub fn support(&self) -> &VertexSet {
        &self.support
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Partial Fisher-Yates into `buf` (cleared first). The order of `buf` is
    /// the draw order, not sorted.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, buf: &mut Vec<usize>) {
        buf.clear();
        buf.extend(self.support.iter());
        let m = buf.len();
        for i in 0..self.k {
            let j = rng.random_range(i..m);
            buf.swap(i, j);
        }
        buf.truncate(self.k);
    }
}

pub fn sample_seed<R: Rng + ?Sized>(dist: &SeedDistribution, rng: &mut R) -> VertexSet {
    let mut buf = Vec::with_capacity(dist.support.len());
    dist.sample_into(rng, &mut buf);
    VertexSet::from(buf)
}

/// `E e(𝐒, V \ 𝐒)` for `𝐒 ~ Uni(L, k)`:
/// `k (deg(L) - (k-1)/(m-1) · e(L, L)/m)`, with the correction taken as zero
/// when `m = 1`.
pub fn expected_cut<T: Scalar>(g: &Graph, support: &VertexSet, k: usize) -> Result<T> {
    let m = support.len();
    if k == 0 || k > m {
        return domain(format!("k={k} outside 1..={m}"));
    }
    let mean = degree_stats::<T>(g, support)?.mean;
    let correction = if m == 1 {
        T::zero()
    } else {
        let internal = T::from_count(pair_count(g, support, support));
        T::from_count(k - 1) / T::from_count(m - 1) * internal / T::from_count(m)
    };
    Ok(T::from_count(k) * (mean - correction))
}

/// `(r-k)/(r-1) · deg(C) - (n-k)/(n-1) · deg(V)`; positive means central
/// seeding infects more as β → 0. Defined for `1 <= k < r`, though the
/// small-β ordering of the two seedings is only guaranteed for `k >= 2`.
pub fn small_beta_margin<T: Scalar>(scenario: &Scenario, k: usize) -> Result<T> {
    let (n, r) = (scenario.n(), scenario.r());
    if k == 0 || k >= r {
        return domain(format!("small-beta margin needs 1 <= k < r (k={k}, r={r})"));
    }
    let g = scenario.graph();
    let deg_c = degree_stats::<T>(g, scenario.central())?.mean;
    let deg_v = degree_stats::<T>(g, &g.vertices())?.mean;
    let lhs = T::from_count(r - k) / T::from_count(r - 1) * deg_c;
    let rhs = T::from_count(n - k) / T::from_count(n - 1) * deg_v;
    Ok(lhs - rhs)
}

/// `|Y|/n - |Y ∩ C|/r` where `Y` is the set of minimum-degree vertices.
pub fn large_beta_margin<T: Scalar>(scenario: &Scenario) -> T {
    let g = scenario.graph();
    let degrees = g.degrees();
    let d = degrees.iter().copied().min().unwrap_or(0);
    let y: VertexSet = (0..g.n()).filter(|&v| degrees[v] == d).collect();
    T::from_count(y.len()) / T::from_count(scenario.n())
        - T::from_count(y.intersection_len(scenario.central())) / T::from_count(scenario.r())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremeBetaReport<T> {
    pub k: usize,
    pub small_beta_margin: T,
    pub large_beta_margin: T,
    pub star_property: StarProperty,
    pub weak_switchover_predicted: bool,
}

/// Evaluates both extreme-β conditions for seed size `2 <= k < r`.
pub fn extreme_beta_report<T: Scalar>(
    scenario: &Scenario,
    k: usize,
    exact_limit: usize,
) -> Result<ExtremeBetaReport<T>> {
    if k < 2 {
        return domain("extreme-beta comparison needs k >= 2");
    }
    let small = small_beta_margin::<T>(scenario, k)?;
    let large = large_beta_margin::<T>(scenario);
    let star = min_degree_profile(scenario.graph(), exact_limit).star_property;
    Ok(ExtremeBetaReport {
        k,
        small_beta_margin: small,
        large_beta_margin: large,
        star_property: star,
        weak_switchover_predicted: small > T::zero()
            && large > T::zero()
            && star == StarProperty::Holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    First,
    Second,
    Tie,
}

/// Which of two deterministic seed sets yields the larger expected
/// epidemic at each β extreme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremeComparison {
    pub cut_first: usize,
    pub cut_second: usize,
    /// Larger cut wins as β → 0.
    pub small_beta_winner: Winner,
    pub min_degree_first: usize,
    pub min_degree_second: usize,
    pub star_property: StarProperty,
    /// Covering more minimum-degree vertices wins as β → 1, since each
    /// uncovered one is cut off with probability about `(1-β)^d`. `None`
    /// unless the star property holds.
    pub large_beta_winner: Option<Winner>,
}

pub fn deterministic_extreme_compare(
    g: &Graph,
    first: &VertexSet,
    second: &VertexSet,
    exact_limit: usize,
) -> Result<ExtremeComparison> {
    if first.len() != second.len() {
        return domain(format!(
            "seed sets must have equal size ({} vs {})",
            first.len(),
            second.len()
        ));
    }
    let all = g.vertices();
    let cut = |s: &VertexSet| pair_count(g, s, &s.complement(all.len()));
    let (cut_first, cut_second) = (cut(first), cut(second));
    let profile = min_degree_profile(g, exact_limit);
    let y1 = first.intersection_len(&profile.y);
    let y2 = second.intersection_len(&profile.y);
    let by = |a: usize, b: usize| match a.cmp(&b) {
        std::cmp::Ordering::Greater => Winner::First,
        std::cmp::Ordering::Less => Winner::Second,
        std::cmp::Ordering::Equal => Winner::Tie,
    };
    Ok(ExtremeComparison {
        cut_first,
        cut_second,
        small_beta_winner: by(cut_first, cut_second),
        min_degree_first: y1,
        min_degree_second: y2,
        star_property: profile.star_property,
        large_beta_winner: (profile.star_property == StarProperty::Holds).then(|| by(y1, y2)),
    })
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::generators;
    use crate::rng::RngStream;
    use crate::Rational;
    use proptest::prelude::*;

    /// All `k`-subsets of `items`.
    fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1)
            .into_iter()
            .map(|mut s| {
                s.insert(0, items[0]);
                s
            })
            .collect();
        with.extend(subsets(&items[1..], k));
        with
    }

    proptest! {
        #[test]
        fn expected_cut_equals_subset_average(seed in any::<u64>(), n in 2usize..9, mask in any::<u16>()) {
            let g = generators::gnp(n, 0.5, &mut RngStream::new(seed, 0).rng());
            let support: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            prop_assume!(!support.is_empty());
            for k in 1..=support.len() {
                let subs = subsets(support.as_slice(), k);
                let total: usize = subs.iter().map(|s| {
                    let s = VertexSet::from(s.clone());
                    pair_count(&g, &s, &s.complement(n))
                }).sum();
                let avg = Rational::new(total as i128, subs.len() as i128);
                prop_assert_eq!(expected_cut::<Rational>(&g, &support, k).unwrap(), avg);
            }
        }
    }
}
