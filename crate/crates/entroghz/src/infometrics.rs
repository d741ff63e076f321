//! Shannon entropies and entropy-based distances between ±1 observables.
//!
//! For observables with outcomes in {+1, −1}, the product of a set of
//! outcomes is again ±1, so any subset of parties induces a binary
//! "product variable". Its entropy measures how far the product is from
//! being deterministic, and it obeys the triangle-type inequalities that
//! make it usable as a distance:
//!
//! * product distance `d(A, B) = H(A·B)`,
//! * multi-party spread `δ(A₁, …, Aₙ) = H(A₁·…·Aₙ)`, which reduces to
//!   the pairwise distance under any bipartition of the factors,
//! * conditional-entropy distance `d(A, B) = H(A|B) + H(B|A)` for the
//!   bipartite chained inequality,
//! * covariance distance `δ = 1 − ⟨A₁·A₂·A₃⟩`, the substitution that
//!   turns the entropic tripartite inequality into the correlation form.
//!
//! All entropies are in bits (log base 2). Probabilities below 1e-15 are
//! treated as exact zeros inside `p log p`.

use crate::qstate::JointOutcomeDistribution;
use crate::{Error, Result};

/// Probabilities below this are treated as 0 in entropy sums.
pub const ENTROPY_PROB_FLOOR: f64 = 1e-15;

fn plogp(p: f64) -> f64 {
    if p < ENTROPY_PROB_FLOOR {
        0.0
    } else {
        p * p.log2()
    }
}

/// Shannon entropy in bits of an arbitrary probability vector.
///
/// The vector must be non-negative (within the clamping tolerance used
/// by [`JointOutcomeDistribution`]) and sum to 1 within 1e-10.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    let mut h = 0.0;
    for &p in probs {
        if p < -crate::qstate::PROB_CLAMP {
            return Err(Error::InvalidProbability(p));
        }
        let p = p.max(0.0);
        sum += p;
        h -= plogp(p);
    }
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(sum));
    }
    // Tiny negative results (e.g. −0.0 on near-deterministic inputs) are
    // clamped; entropy is non-negative by definition.
    Ok(h.max(0.0))
}

/// Binary entropy h(p) = −p log₂ p − (1−p) log₂(1−p).
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-crate::qstate::PROB_CLAMP..=1.0 + crate::qstate::PROB_CLAMP).contains(&p) {
        return Err(Error::OutOfRange {
            name: "probability",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    let p = p.clamp(0.0, 1.0);
    Ok((-plogp(p) - plogp(1.0 - p)).max(0.0))
}

/// Distribution of a single ±1 variable, stored as P(+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryDistribution {
    p_plus: f64,
}

impl BinaryDistribution {
    pub fn new(p_plus: f64) -> Result<Self> {
        if !(-crate::qstate::PROB_CLAMP..=1.0 + crate::qstate::PROB_CLAMP).contains(&p_plus) {
            return Err(Error::OutOfRange {
                name: "probability of +1",
                value: p_plus,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(Self {
            p_plus: p_plus.clamp(0.0, 1.0),
        })
    }

    /// From the expectation value E = P(+1) − P(−1) ∈ [−1, 1].
    pub fn from_expectation(e: f64) -> Result<Self> {
        if e.abs() > 1.0 + 2.0 * crate::qstate::PROB_CLAMP {
            return Err(Error::OutOfRange {
                name: "expectation",
                value: e,
                min: -1.0,
                max: 1.0,
            });
        }
        Self::new(((1.0 + e) / 2.0).clamp(0.0, 1.0))
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn p_minus(&self) -> f64 {
        1.0 - self.p_plus
    }

    pub fn expectation(&self) -> f64 {
        2.0 * self.p_plus - 1.0
    }

    /// Entropy in bits.
    pub fn entropy(&self) -> f64 {
        binary_entropy(self.p_plus).unwrap()
    }
}

/// A non-negative entropy-based distance in Shannon bits.
///
/// For products of binary variables the value never exceeds 1 bit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DistanceValue {
    pub bits: f64,
}

impl DistanceValue {
    fn new(bits: f64) -> Self {
        Self { bits: bits.max(0.0) }
    }
}

impl std::fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.4} bits", self.bits)
    }
}

/// Distribution of the product of the `parties` outcomes: a ±1 variable
/// whose value is the product of the selected entries of each tuple.
pub fn product_distribution(
    joint: &JointOutcomeDistribution,
    parties: &[usize],
) -> Result<BinaryDistribution> {
    if parties.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = vec![false; joint.n_parties()];
    for &p in parties {
        if p >= joint.n_parties() {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: joint.n_parties(),
            });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::Shape(format!("party {} repeated in product", p)));
        }
    }
    let mut p_plus = 0.0;
    for (idx, &prob) in joint.probabilities().iter().enumerate() {
        let mut sign = 1i8;
        for &party in parties {
            sign *= joint.outcome(idx, party);
        }
        if sign == 1 {
            p_plus += prob;
        }
    }
    BinaryDistribution::new(p_plus)
}

/// Entropic distance between two parties' observables:
/// `d(A, B) = H(A·B)` in bits.
pub fn product_distance(
    joint: &JointOutcomeDistribution,
    a: usize,
    b: usize,
) -> Result<DistanceValue> {
    if a == b {
        return Err(Error::Shape(format!(
            "product distance needs two distinct parties, got {} twice",
            a
        )));
    }
    Ok(DistanceValue::new(
        product_distribution(joint, &[a, b])?.entropy(),
    ))
}

/// Multi-party spread `δ(A₁, …, Aₖ) = H(A₁·…·Aₖ)` over a subset of
/// parties (in bits). With a single party this is the entropy of that
/// party's marginal.
pub fn multi_delta(joint: &JointOutcomeDistribution, parties: &[usize]) -> Result<DistanceValue> {
    Ok(DistanceValue::new(
        product_distribution(joint, parties)?.entropy(),
    ))
}

/// Covariance distance `δ = 1 − ⟨A₁·A₂·A₃⟩` from the product
/// expectation. Dimensionless, in [0, 2].
pub fn covariance_delta(expectation: f64) -> Result<f64> {
    if expectation.abs() > 1.0 + 1e-10 {
        return Err(Error::OutOfRange {
            name: "expectation",
            value: expectation,
            min: -1.0,
            max: 1.0,
        });
    }
    Ok((1.0 - expectation).clamp(0.0, 2.0))
}

/// Conditional entropy of one variable of a two-party joint given the
/// other, H(other | conditioned_on) = H(joint) − H(conditioned_on), in
/// bits.
pub fn conditional_entropy(
    joint: &JointOutcomeDistribution,
    conditioned_on: usize,
) -> Result<f64> {
    if joint.n_parties() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: joint.n_parties(),
        });
    }
    if conditioned_on > 1 {
        return Err(Error::IndexOutOfRange {
            index: conditioned_on,
            len: 2,
        });
    }
    let h_joint = shannon_entropy(joint.probabilities())?;
    let h_given = shannon_entropy(joint.marginal(&[conditioned_on])?.probabilities())?;
    Ok((h_joint - h_given).max(0.0))
}

/// Conditional entropy H(product over `target` | product over `given`)
/// in bits, computed as H(joint of the two products) − H(given product).
/// The subsets may overlap.
pub fn conditional_product_entropy(
    joint: &JointOutcomeDistribution,
    target: &[usize],
    given: &[usize],
) -> Result<f64> {
    if target.is_empty() || given.is_empty() {
        return Err(Error::EmptySubset);
    }
    let sign_of = |idx: usize, parties: &[usize]| -> Result<i8> {
        let mut s = 1i8;
        for &p in parties {
            if p >= joint.n_parties() {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: joint.n_parties(),
                });
            }
            s *= joint.outcome(idx, p);
        }
        Ok(s)
    };
    let mut cells = [0.0; 4];
    for (idx, &prob) in joint.probabilities().iter().enumerate() {
        let t = sign_of(idx, target)?;
        let g = sign_of(idx, given)?;
        cells[(usize::from(t < 0) << 1) | usize::from(g < 0)] += prob;
    }
    let h_joint = shannon_entropy(&cells)?;
    let h_given = shannon_entropy(&[cells[0] + cells[2], cells[1] + cells[3]])?;
    Ok((h_joint - h_given).max(0.0))
}

/// Conditional-entropy distance `d(A, B) = H(A|B) + H(B|A)` between two
/// parties of a joint distribution (in bits).
pub fn bc_distance(joint: &JointOutcomeDistribution, a: usize, b: usize) -> Result<f64> {
    if a == b {
        return Err(Error::Shape(format!(
            "conditional-entropy distance needs two distinct parties, got {} twice",
            a
        )));
    }
    let ab = conditional_product_entropy(joint, &[a], &[b])?;
    let ba = conditional_product_entropy(joint, &[b], &[a])?;
    Ok(ab + ba)
}

/// `d(A, B)` for two ±1 variables given their 2×2 joint distribution
/// `[p(+,+), p(+,−), p(−,+), p(−,−)]` (first variable = first index).
pub fn bc_distance_from_pair(pair: &[f64; 4]) -> Result<f64> {
    let h_joint = shannon_entropy(pair)?;
    let h_a = shannon_entropy(&[pair[0] + pair[1], pair[2] + pair[3]])?;
    let h_b = shannon_entropy(&[pair[0] + pair[2], pair[1] + pair[3]])?;
    // H(A|B) + H(B|A) = 2 H(A,B) − H(A) − H(B).
    Ok((2.0 * h_joint - h_a - h_b).max(0.0))
}
