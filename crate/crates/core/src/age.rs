//! Exact age computations for permutation actions on projective space.
//!
//! A permutation g of order m acting on n coordinates diagonalizes, over a
//! fixed primitive m-th root of unity ξ, into eigenvalues ξ^w: each cycle of
//! length n_j contributes the exponents {k·(m/n_j) : 0 ≤ k < n_j}. At a fixed
//! point on the chart where the coordinate of weight w_p is nonzero, the
//! tangent weights are (w_i − w_p) mod m, and the age is their sum divided
//! by m — an exact rational. Terminality of the quotient is then read off the
//! minimum age over all nontrivial elements and all charts.

use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::PermutationGroup;
use crate::perm::{CycleType, Permutation};

/// Exact rational number: arbitrary-precision, always reduced, denominator
/// positive, totally ordered.
pub type Rational = BigRational;

/// Shorthand for building an exact rational from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgeError {
    #[error("weight {weight} does not occur in the weight vector: no fixed point on that chart")]
    NoSuchChart { weight: BigUint },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("element order {modulus} is too large for the numeric oracle")]
    ModulusTooLarge { modulus: BigUint },
    #[error("eigenvalue iteration failed to converge on a {size}×{size} matrix")]
    EigenFailure { size: usize },
    #[error("eigenvalue {re}+{im}i is not within {tolerance} of any root of unity")]
    MatchAmbiguity { re: f64, im: f64, tolerance: f64 },
    #[error("chart weight {weight} was not recovered from the spectrum")]
    ChartNotRecovered { weight: BigUint },
}

/// The multiset of n eigenvalue exponents of a permutation's diagonalized
/// action, together with the modulus m (the element's order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    modulus: BigUint,
    weights: Vec<BigUint>, // sorted ascending; length = degree
}

impl WeightVector {
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// All n weights, sorted ascending. Every weight is `< modulus`.
    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    /// The distinct weight values: one chart per value is enough, because the
    /// tangent weight multiset depends only on the value of the distinguished
    /// weight.
    pub fn distinct_weights(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self.weights.clone();
        out.dedup();
        out
    }

    pub fn multiplicity(&self, weight: &BigUint) -> usize {
        self.weights.iter().filter(|w| *w == weight).count()
    }

    /// Number of nonzero tangent weights at the chart of the given weight.
    pub fn nonzero_tangent_count(&self, weight: &BigUint) -> usize {
        self.weights.len() - self.multiplicity(weight)
    }

    /// Exact age at a fixed point on the chart distinguished by `chart`:
    /// (1/m) · Σ over the other n−1 weights of ((w_i − chart) mod m).
    pub fn chart_age(&self, chart: &BigUint) -> Result<Rational, AgeError> {
        if self.weights.binary_search(chart).is_err() {
            return Err(AgeError::NoSuchChart {
                weight: chart.clone(),
            });
        }
        let m = &self.modulus;
        let mut sum = BigUint::zero();
        let mut skipped_distinguished = false;
        for w in &self.weights {
            if !skipped_distinguished && w == chart {
                skipped_distinguished = true;
                continue;
            }
            // residue (w − chart) mod m; both operands already lie in [0, m)
            if w >= chart {
                sum += w - chart;
            } else {
                sum += m - (chart - w);
            }
        }
        Ok(Rational::new(
            BigInt::from(sum),
            BigInt::from(m.clone()),
        ))
    }
}

/// Diagonalized weight vector of `g`: modulus m = order(g), and each cycle of
/// length n_j contributing the exponents {k·(m/n_j)}.
pub fn weights_of(g: &Permutation) -> WeightVector {
    let modulus = g.order();
    let mut weights = Vec::with_capacity(g.degree());
    for cycle in g.cycles() {
        let step = &modulus / BigUint::from(cycle.len());
        let mut w = BigUint::zero();
        for _ in 0..cycle.len() {
            weights.push(w.clone());
            w += &step;
        }
    }
    weights.sort_unstable();
    WeightVector { modulus, weights }
}

/// Exact age of `g` at a chart, see [`WeightVector::chart_age`].
pub fn chart_age(g: &Permutation, chart: &BigUint) -> Result<Rational, AgeError> {
    weights_of(g).chart_age(chart)
}

/// Σ over cycles of (n_j − 1)/2: every chart age is at least this.
pub fn age_lower_bound(g: &Permutation) -> Rational {
    let sum: u64 = g.cycles().iter().map(|c| c.len() as u64 - 1).sum();
    Rational::new(BigInt::from(sum), BigInt::from(2))
}

/// Minimum chart age of `g` over all charts with a fixed point. The identity
/// returns 0.
pub fn min_age(g: &Permutation) -> Rational {
    let w = weights_of(g);
    w.distinct_weights()
        .iter()
        .map(|chart| w.chart_age(chart).expect("chart taken from the weights"))
        .min()
        .unwrap_or_else(Rational::zero)
}

/// Charts at which `g` acts as a quasi-reflection: exactly one nonzero
/// tangent weight. Only transposition types produce any.
pub fn quasi_reflection_charts(g: &Permutation) -> Vec<BigUint> {
    let w = weights_of(g);
    w.distinct_weights()
        .into_iter()
        .filter(|chart| w.nonzero_tangent_count(chart) == 1)
        .collect()
}

/// Full per-element age analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgeReport {
    pub element: Permutation,
    pub cycle_type: CycleType,
    pub order: BigUint,
    /// Exact age at each distinct weight value.
    pub chart_ages: BTreeMap<BigUint, Rational>,
    pub min_age: Rational,
    pub lower_bound: Rational,
    pub quasi_reflection_charts: Vec<BigUint>,
}

pub fn age_report(g: &Permutation) -> AgeReport {
    let w = weights_of(g);
    let mut chart_ages = BTreeMap::new();
    let mut quasi_reflection_charts = Vec::new();
    for chart in w.distinct_weights() {
        let age = w.chart_age(&chart).expect("chart taken from the weights");
        if w.nonzero_tangent_count(&chart) == 1 {
            quasi_reflection_charts.push(chart.clone());
        }
        chart_ages.insert(chart, age);
    }
    let min_age = chart_ages
        .values()
        .min()
        .cloned()
        .unwrap_or_else(Rational::zero);
    AgeReport {
        element: g.clone(),
        cycle_type: g.cycle_type(),
        order: w.modulus().clone(),
        chart_ages,
        min_age,
        lower_bound: age_lower_bound(g),
        quasi_reflection_charts,
    }
}

/// The conjugacy classes of `g` that matter here: elements grouped by cycle
/// type, with a representative (the lexicographically smallest element) and
/// the class size. Ages depend only on the cycle type, so all per-element
/// analysis can be done once per class.
pub fn cycle_type_classes(group: &PermutationGroup) -> Vec<(CycleType, Permutation, usize)> {
    let mut classes: BTreeMap<CycleType, (Permutation, usize)> = BTreeMap::new();
    for e in group.iter() {
        let ty = e.cycle_type();
        classes
            .entry(ty)
            .and_modify(|(_, count)| *count += 1)
            .or_insert_with(|| (e.clone(), 1));
    }
    classes
        .into_iter()
        .map(|(ty, (rep, count))| (ty, rep, count))
        .collect()
}

/// True iff no element of the group has one of the three excluded cycle
/// types [2], [3], [2,2]. When true, the quotient is terminal without any
/// age computation.
pub fn lemma_shortcut(group: &PermutationGroup) -> bool {
    group.iter().all(|e| !e.is_forbidden_type())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Terminal,
    CanonicalNotTerminal,
    NotCanonical,
    InconclusiveQuasiReflection,
}

/// An offending conjugacy class backing a non-terminal or inconclusive
/// verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: Permutation,
    pub cycle_type: CycleType,
    /// Number of group elements of this cycle type.
    pub multiplicity: usize,
    pub min_age: Rational,
    pub quasi_reflection_charts: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    /// Nonempty unless the decision is `Terminal`.
    pub witnesses: Vec<Witness>,
}

/// Decides terminality of the quotient of projective space by the group.
///
/// If any nontrivial element acts as a quasi-reflection somewhere the age
/// criterion does not apply and the verdict is inconclusive. Otherwise the
/// quotient is terminal iff every nontrivial element has minimum age > 1,
/// and canonical iff ≥ 1. `NotCanonical` cannot actually arise from a pure
/// coordinate-permutation action (ages below 1 only occur for transposition
/// types, which are quasi-reflections); it is kept for completeness.
pub fn reid_tai_verdict(group: &PermutationGroup) -> Verdict {
    let mut analyses: Vec<Witness> = Vec::new();
    for (ty, rep, count) in cycle_type_classes(group) {
        if rep.is_identity() {
            continue;
        }
        let report = age_report(&rep);
        analyses.push(Witness {
            element: rep,
            cycle_type: ty,
            multiplicity: count,
            min_age: report.min_age,
            quasi_reflection_charts: report.quasi_reflection_charts,
        });
    }

    let quasi: Vec<Witness> = analyses
        .iter()
        .filter(|w| !w.quasi_reflection_charts.is_empty())
        .cloned()
        .collect();
    if !quasi.is_empty() {
        return Verdict {
            decision: Decision::InconclusiveQuasiReflection,
            witnesses: quasi,
        };
    }

    let one = Rational::one();
    let min_over_group = analyses.iter().map(|w| w.min_age.clone()).min();
    match min_over_group {
        // Trivial group: the quotient is the smooth projective space itself.
        None => Verdict {
            decision: Decision::Terminal,
            witnesses: Vec::new(),
        },
        Some(min) if min > one => Verdict {
            decision: Decision::Terminal,
            witnesses: Vec::new(),
        },
        Some(min) if min >= one => Verdict {
            decision: Decision::CanonicalNotTerminal,
            witnesses: analyses
                .into_iter()
                .filter(|w| w.min_age <= one)
                .collect(),
        },
        Some(_) => Verdict {
            decision: Decision::NotCanonical,
            witnesses: analyses
                .into_iter()
                .filter(|w| w.min_age < one)
                .collect(),
        },
    }
}

/// Independent numeric route to the chart age: diagonalize the permutation
/// matrix of `g` numerically, match each eigenvalue to the nearest m-th root
/// of unity to recover the exponents, and recompute the age in floating
/// point. Agreement with [`chart_age`] within 1e-9 is the expected outcome;
/// any matching ambiguity is reported as an error.
pub fn age_via_spectrum(g: &Permutation, chart: &BigUint) -> Result<f64, OracleError> {
    const MAX_ORACLE_MODULUS: u64 = 1_000_000;

    let modulus = g.order();
    let m = modulus
        .to_u64()
        .filter(|&m| m <= MAX_ORACLE_MODULUS)
        .ok_or(OracleError::ModulusTooLarge {
            modulus: modulus.clone(),
        })?;
    let chart_exp = chart
        .to_u64()
        .filter(|&c| c < m)
        .ok_or_else(|| OracleError::ChartNotRecovered {
            weight: chart.clone(),
        })?;

    let n = g.degree();
    let mut matrix = DMatrix::<f64>::zeros(n, n);
    for i in 1..=n as u32 {
        matrix[((g.apply(i) - 1) as usize, (i - 1) as usize)] = 1.0;
    }
    let eigenvalues = crate::numeric::robust_complex_eigenvalues(&matrix)
        .ok_or(OracleError::EigenFailure { size: n })?;

    // Adjacent m-th roots are 2·sin(π/m) apart; anything further than half
    // that (or 1e-6) from every root signals trouble. For m = 1 there is a
    // single root and no ambiguity to guard against.
    let tolerance = if m == 1 {
        1e-6
    } else {
        (std::f64::consts::PI / m as f64).sin().min(1e-6)
    };
    let mut exponents: Vec<u64> = Vec::with_capacity(n);
    for lambda in eigenvalues.iter() {
        let mut best = (f64::INFINITY, 0u64);
        for a in 0..m {
            let theta = 2.0 * std::f64::consts::PI * a as f64 / m as f64;
            let root = Complex::new(theta.cos(), theta.sin());
            let dist = (lambda - root).norm();
            if dist < best.0 {
                best = (dist, a);
            }
        }
        if best.0 > tolerance {
            return Err(OracleError::MatchAmbiguity {
                re: lambda.re,
                im: lambda.im,
                tolerance,
            });
        }
        exponents.push(best.1);
    }

    if !exponents.contains(&chart_exp) {
        return Err(OracleError::ChartNotRecovered {
            weight: chart.clone(),
        });
    }
    let mut sum = 0.0;
    let mut skipped_distinguished = false;
    for &a in &exponents {
        if !skipped_distinguished && a == chart_exp {
            skipped_distinguished = true;
            continue;
        }
        sum += ((a + m - chart_exp) % m) as f64;
    }
    Ok(sum / m as f64)
}
