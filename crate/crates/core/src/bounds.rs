//! Closed-form estimates and thresholds: the small-β expansion with its
//! remainder envelopes, the small-β choice, ρ and the large-β lower bound on
//! the uniform-minus-central gap, Chernoff–Hoeffding tails, the large-β
//! feasibility search, and the strong-switchover condition checklist.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::graph::{degree_stats, Graph, VertexSet};
use crate::percolation::check_probability;
use crate::scalar::{Real, Scalar};
use crate::seeds::expected_cut;

/// `E|G^β(𝐒)| = first_order + R` for `𝐒 ~ Uni(L, k)`, with
/// `remainder_lo <= R <= remainder_hi` and `|R| <= coarse`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmallBetaExpansion<T> {
    pub first_order: T,
    pub remainder_lo: T,
    pub remainder_hi: T,
    pub coarse: T,
}

impl<T: Scalar> SmallBetaExpansion<T> {
    pub fn lower(&self) -> T {
        self.first_order + self.remainder_lo
    }

    pub fn upper(&self) -> T {
        self.first_order + self.remainder_hi
    }

    pub fn contains(&self, value: T) -> bool {
        self.lower() <= value && value <= self.upper()
    }
}

pub fn small_beta_expansion<T: Scalar>(
    g: &Graph,
    support: &VertexSet,
    k: usize,
    beta: T,
) -> Result<SmallBetaExpansion<T>> {
    check_probability(beta)?;
    let cut = expected_cut::<T>(g, support, k)?;
    let all = degree_stats::<T>(g, &g.vertices())?;
    let n = T::from_count(g.n());
    let b2n = beta * beta * n;
    let spread = all.second_moment - all.mean;
    Ok(SmallBetaExpansion {
        first_order: T::from_count(k) + cut * beta,
        remainder_lo: T::zero() - T::half() * spread * b2n,
        remainder_hi: spread * b2n,
        coarse: all.second_moment * b2n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmallBetaChoice<T> {
    pub beta: T,
    /// Guaranteed `(E|G^β(𝐒_C)| - E|G^β(𝐒_V)|) / n` when the degree margin
    /// is at least `c1`.
    pub gap_per_n: T,
}

pub fn choose_small_beta<T: Scalar>(c1: T, second_moment: T, s: T) -> Result<SmallBetaChoice<T>> {
    let zero = T::zero();
    if !(c1 > zero && second_moment > zero && s > zero && s < T::one()) {
        return domain("choose_small_beta needs c1 > 0, second moment > 0, 0 < s < 1");
    }
    let four = T::from_count(4);
    let raw = c1 * s / (four * second_moment);
    let beta = if raw > T::one() { T::one() } else { raw };
    Ok(SmallBetaChoice {
        beta,
        gap_per_n: T::half() * c1 * beta * s,
    })
}

/// `ρ = (e(1-β)^a / q)^q`, evaluated in log space. Only below 1 (and so
/// only useful) when `q > e(1-β)^a`.
pub fn rho<T: Real>(beta: T, a: T, q: T) -> Result<T> {
    let (zero, one) = (T::zero(), T::one());
    if !(beta > zero && beta < one) {
        return domain(format!("rho needs 0 < beta < 1, got {beta:?}"));
    }
    if !(a > zero) || !(q > zero && q < T::half()) {
        return domain(format!("rho needs a > 0 and 0 < q < 1/2, got a={a:?}, q={q:?}"));
    }
    Ok(rho_unchecked(beta, a, q))
}

pub(crate) fn rho_unchecked<T: Real>(beta: T, a: T, q: T) -> T {
    if beta == T::one() {
        return T::zero();
    }
    (q * (T::one() + a * (-beta).ln_1p() - q.ln())).exp()
}

/// Terms of the lower bound on `E|G^β(𝐒_V)| - E|G^β(𝐒_C)|` for a central
/// region with edge expansion `(a, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LargeBetaBound<T> {
    pub rho: T,
    pub term_gain: T,
    pub term_q: T,
    pub term_rho: T,
    pub term_exp: T,
    pub rhs: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LargeBetaInputs<T> {
    pub n: usize,
    pub c: T,
    pub s: T,
    /// Mean periphery degree.
    pub b: T,
    pub beta: T,
    pub a: T,
    pub q: T,
    /// Central region size, `⌊cn⌋`.
    pub r: usize,
    /// Seed count, `⌊sn⌋`.
    pub k: usize,
}

pub fn large_beta_rhs<T: Real>(p: &LargeBetaInputs<T>) -> Result<LargeBetaBound<T>> {
    let (zero, one) = (T::zero(), T::one());
    if !(zero < p.s && p.s < p.c && p.c < one) {
        return domain("large-beta bound needs 0 < s < c < 1");
    }
    if !(p.q < one / T::from_count(3)) {
        return domain(format!("large-beta bound needs q < 1/3, got {:?}", p.q));
    }
    if !(p.q > zero) || !(p.a > zero) || p.b < zero {
        return domain("large-beta bound needs q > 0, a > 0, b >= 0");
    }
    check_probability(p.beta)?;
    if p.beta == zero {
        return domain("large-beta bound needs beta > 0");
    }
    let n = T::from_count(p.n);
    let ratio = p.c / (p.c - p.s);
    let rho = rho_unchecked(p.beta, p.a, p.q);
    let term_gain = p.s * (one - p.c) * (one - p.beta).powf(p.b) * n;
    let term_q = ratio * p.q * n;
    let term_rho = (one + ratio) * n * rho.powf(T::from_count(p.r));
    let two_thirds = T::from_count(2) / T::from_count(3);
    let term_exp = n * (-(two_thirds * p.c * T::from_count(p.k))).exp();
    Ok(LargeBetaBound {
        rho,
        term_gain,
        term_q,
        term_rho,
        term_exp,
        rhs: term_gain - term_q - term_rho - term_exp,
    })
}

/// `[(z/q)^q (1/(1-q))^{1-q}]^n`.
pub fn chernoff_tail_bound<T: Real>(z: T, q: T, n: usize) -> Result<T> {
    check_chernoff(z, q)?;
    if z == T::zero() {
        return Ok(T::zero());
    }
    let one = T::one();
    let log_base = q * (z / q).ln() - (one - q) * (one - q).ln();
    Ok((T::from_count(n) * log_base).exp())
}

/// The looser `((e z / q)^q)^n`.
pub fn chernoff_tail_bound_loose<T: Real>(z: T, q: T, n: usize) -> Result<T> {
    check_chernoff(z, q)?;
    if z == T::zero() {
        return Ok(T::zero());
    }
    let log_base = q * (T::one() + (z / q).ln());
    Ok((T::from_count(n) * log_base).exp())
}

fn check_chernoff<T: Real>(z: T, q: T) -> Result<()> {
    if !(z >= T::zero()) || !(q > T::zero() && q < T::one()) {
        return domain(format!("chernoff bound needs z >= 0, 0 < q < 1, got z={z:?}, q={q:?}"));
    }
    Ok(())
}

pub const FEASIBLE_GRID_POINTS: usize = 512;
pub const FEASIBLE_GRID_MIN_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FeasibleBeta<T> {
    pub beta: T,
    pub q: T,
}

/// Scans `1 - β` over a log-spaced grid in `[1e-6, 1)`, starting next to
/// β = 1, for the first β where `q = (1+ε) e (1-β)^a` is below 1/3 and
/// the gain term beats the q term.
pub fn feasible_large_beta<T: Real>(c: T, s: T, b: T, a: T, epsilon: T) -> Result<Option<FeasibleBeta<T>>> {
    let (zero, one) = (T::zero(), T::one());
    if !(zero < s && s < c && c < one) {
        return domain("feasible_large_beta needs 0 < s < c < 1");
    }
    if !(b >= zero) || !(epsilon > zero) {
        return domain("feasible_large_beta needs b >= 0 and epsilon > 0");
    }
    if b >= a {
        return domain(format!("feasible_large_beta needs b < a, got b={b:?}, a={a:?}"));
    }
    let third = one / T::from_count(3);
    let ratio = c / (c - s);
    let lo = FEASIBLE_GRID_MIN_GAP.ln();
    for i in 0..FEASIBLE_GRID_POINTS {
        let gap = T::from_f64_lossy((lo * (1.0 - i as f64 / FEASIBLE_GRID_POINTS as f64)).exp());
        let q = (one + epsilon) * T::E() * gap.powf(a);
        if q < third && s * (one - c) * gap.powf(b) > ratio * q {
            return Ok(Some(FeasibleBeta { beta: one - gap, q }));
        }
    }
    Ok(None)
}

/// Average-degree floor `2a(N-1)/(N+1)` implied by edge expansion `(a, q)`
/// on `N` vertices.
pub fn expansion_degree_floor<T: Scalar>(a: T, n: usize) -> T {
    let two = T::from_count(2);
    two * a * T::from_count(n.saturating_sub(1)) / T::from_count(n + 1)
}

/// An edge expansion `(a, q)` known to hold for the central region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpansionWitness<T> {
    pub a: T,
    pub q: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrongConditionInputs<T> {
    pub c: T,
    pub s: T,
    pub b_max: T,
    pub epsilon: T,
    pub second_moment: T,
    pub expansion: Option<ExpansionWitness<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StrongConditionReport<T> {
    pub c_ok: bool,
    pub s_ok: bool,
    /// The witness has `a >= b_max + ε` at some `q < 1/3`. Only the
    /// supplied `q` is checked.
    pub expansion_ok: bool,
    pub second_moment: T,
    pub c1: T,
}

impl<T> StrongConditionReport<T> {
    pub fn all_ok(&self) -> bool {
        self.c_ok && self.s_ok && self.expansion_ok
    }
}

pub fn check_strong_conditions<T: Scalar>(p: &StrongConditionInputs<T>) -> StrongConditionReport<T> {
    let one = T::one();
    let third = one / T::from_count(3);
    let expansion_ok = p
        .expansion
        .is_some_and(|w| w.q > T::zero() && w.q < third && w.a >= p.b_max + p.epsilon);
    StrongConditionReport {
        c_ok: p.c <= one - p.epsilon,
        s_ok: p.epsilon <= p.s && p.s <= (one - p.c) * p.c * T::half(),
        expansion_ok,
        second_moment: p.second_moment,
        c1: T::half() * p.epsilon * p.epsilon,
    }
}
