//! The inequality families evaluated on quantum states.
//!
//! Tripartite setting: each party k ∈ {A, B, C} chooses between two ±1
//! observables (indexed 1 and 2), and only four joint contexts enter:
//!
//! ```text
//! D = (A₁, B₁, C₁)    A = (A₁, B₂, C₂)    B = (A₂, B₁, C₂)    C = (A₂, B₂, C₁)
//! ```
//!
//! Every classical theory obeys the entropic bound
//! `H(A₁·B₁·C₁) ≤ H(A₁·B₂·C₂) + H(A₂·B₁·C₂) + H(A₂·B₂·C₁)` because a
//! joint distribution for all six observables would make the D product
//! the product of the other three, and entropy is subadditive along that
//! chain. Quantum mechanics has no such joint distribution, and the GHZ
//! state with XY-plane settings at (π/6, −π/12) violates the bound by a
//! full bit — the maximum possible.
//!
//! Substituting the covariance distance `δ = 1 − ⟨·⟩` for the entropy
//! yields the correlation (Mermin) form of the same inequality, and the
//! bipartite analogue chains the conditional-entropy distance over four
//! settings.

use serde::Serialize;

use crate::infometrics::{bc_distance, covariance_delta, multi_delta};
use crate::qstate::{
    joint_outcome_distribution, product_expectation, xy_observable, BlochObservable,
    DensityMatrix, MeasurementSetting,
};
use crate::{Error, Result};

/// Margins below this negative tolerance count as violations; anything
/// closer to zero is attributed to floating-point noise.
pub const VIOLATION_TOL: f64 = 1e-10;

/// First-setting XY angle of the maximal-violation preset (π/6 for all
/// three parties).
pub const PRESET_THETA_1: f64 = std::f64::consts::FRAC_PI_6;

/// Second-setting XY angle of the maximal-violation preset (−π/12 for
/// all three parties).
pub const PRESET_THETA_2: f64 = -std::f64::consts::PI / 12.0;

/// One evaluated inequality: `lhs ≤ rhs_total` with `margin =
/// rhs_total − lhs`; negative margin beyond [`VIOLATION_TOL`] means the
/// bound is broken.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    /// Left-hand side (bits for entropic forms, dimensionless for the
    /// correlation form).
    pub lhs: f64,
    /// The summands of the right-hand side, in the fixed context order.
    pub rhs_terms: Vec<f64>,
    /// Sum of `rhs_terms`.
    pub rhs_total: f64,
    /// `rhs_total − lhs`.
    pub margin: f64,
    /// `margin < −1e-10`.
    pub violated: bool,
    /// Context names: the lhs context first, then one per rhs term.
    #[serde(rename = "labels")]
    pub context_labels: Vec<String>,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs_terms: Vec<f64>, context_labels: Vec<String>) -> Self {
        let rhs_total: f64 = rhs_terms.iter().sum();
        let margin = rhs_total - lhs;
        Self {
            lhs,
            rhs_terms,
            rhs_total,
            margin,
            violated: margin < -VIOLATION_TOL,
            context_labels,
        }
    }
}

/// Entropies (bits) of the four composite product observables at the
/// maximal-violation preset angles.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParadoxTable {
    /// H of the (A₁, B₂, C₂) product.
    pub h_a: f64,
    /// H of the (A₂, B₁, C₂) product.
    pub h_b: f64,
    /// H of the (A₂, B₂, C₁) product.
    pub h_c: f64,
    /// H of the (A₁, B₁, C₁) product — the side the other three bound.
    pub h_d: f64,
}

/// Correlation-form (Mermin) report: the inequality rewritten through
/// the covariance distance, together with the standard combination
/// `M = E₁₁₁ − E₁₂₂ − E₂₁₂ − E₂₂₁` and its classical bound 2.
/// `margin = 2 − M` identically, so `violated ⇔ M > 2`.
#[derive(Debug, Clone, Serialize)]
pub struct MerminReport {
    #[serde(flatten)]
    pub report: InequalityReport,
    /// `E₁₁₁ − E₁₂₂ − E₂₁₂ − E₂₂₁`.
    pub m_value: f64,
    /// Classical bound on `m_value` (always 2).
    pub classical_bound: f64,
}

/// Result of the sign-based consistency check: the four XY-axis
/// expectations and whether they reproduce the deterministic
/// (−1, −1, −1, +1) pattern whose product rules out any local
/// assignment of outcomes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SignGhzCheck {
    pub e_yyx: f64,
    pub e_yxy: f64,
    pub e_xyy: f64,
    pub e_xxx: f64,
    /// True when the four values are within 1e-10 of (−1, −1, −1, +1).
    pub paradoxical: bool,
}

/// Six observables in the fixed order (A₁, A₂, B₁, B₂, C₁, C₂).
pub type SettingSextet = [BlochObservable; 6];

/// The symmetric XY-plane family: first settings at `theta1` for all
/// parties, second settings at `theta2`.
pub fn xy_symmetric_settings(theta1: f64, theta2: f64) -> SettingSextet {
    let s1 = xy_observable(theta1);
    let s2 = xy_observable(theta2);
    [s1, s2, s1, s2, s1, s2]
}

/// The preset achieving the maximal 1-bit violation on the GHZ state:
/// all first settings at π/6, all second settings at −π/12.
pub fn preset_settings() -> SettingSextet {
    xy_symmetric_settings(PRESET_THETA_1, PRESET_THETA_2)
}

pub(crate) fn context(
    settings: &SettingSextet,
    ia: usize,
    ib: usize,
    ic: usize,
) -> MeasurementSetting {
    MeasurementSetting::new(vec![
        settings[ia - 1],
        settings[2 + ib - 1],
        settings[4 + ic - 1],
    ])
    .expect("three observables form a setting")
}

pub(crate) fn context_label(ia: usize, ib: usize, ic: usize) -> String {
    format!("A{}B{}C{}", ia, ib, ic)
}

/// The four context index triples, lhs first.
pub const CONTEXTS: [(usize, usize, usize); 4] = [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)];

fn require_three_qubits(state: &DensityMatrix) -> Result<()> {
    if state.n_qubits() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: state.n_qubits(),
        });
    }
    Ok(())
}

fn context_delta(state: &DensityMatrix, s: &MeasurementSetting) -> Result<f64> {
    let joint = joint_outcome_distribution(state, s)?;
    Ok(multi_delta(&joint, &[0, 1, 2])?.bits)
}

/// Entropic tripartite report: `H(A₁B₁C₁) ≤ H(A₁B₂C₂) + H(A₂B₁C₂) +
/// H(A₂B₂C₁)` evaluated on `state`.
pub fn entropic_mermin_report(
    state: &DensityMatrix,
    settings: &SettingSextet,
) -> Result<InequalityReport> {
    require_three_qubits(state)?;
    let mut values = Vec::with_capacity(4);
    let mut labels = Vec::with_capacity(4);
    for &(ia, ib, ic) in &CONTEXTS {
        values.push(context_delta(state, &context(settings, ia, ib, ic))?);
        labels.push(context_label(ia, ib, ic));
    }
    let lhs = values.remove(0);
    Ok(InequalityReport::new(lhs, values, labels))
}

/// Entropies of the four composite observables at the preset angles.
pub fn paradox_table(state: &DensityMatrix) -> Result<ParadoxTable> {
    require_three_qubits(state)?;
    let settings = preset_settings();
    let h = |ia, ib, ic| context_delta(state, &context(&settings, ia, ib, ic));
    Ok(ParadoxTable {
        h_a: h(1, 2, 2)?,
        h_b: h(2, 1, 2)?,
        h_c: h(2, 2, 1)?,
        h_d: h(1, 1, 1)?,
    })
}

/// Correlation-form report via the covariance distance.
///
/// The covariance distance is applied to the sign convention in which
/// both of the first party's observables are negated; that labeling
/// makes the resulting bound read `M ≤ 2` for the standard combination
/// `M = E₁₁₁ − E₁₂₂ − E₂₁₂ − E₂₂₁`, so each report term is
/// `1 + E` for its context and `margin = 2 − M`.
pub fn mermin_correlation_report(
    state: &DensityMatrix,
    settings: &SettingSextet,
) -> Result<MerminReport> {
    require_three_qubits(state)?;
    let mut expectations = Vec::with_capacity(4);
    let mut labels = Vec::with_capacity(4);
    for &(ia, ib, ic) in &CONTEXTS {
        expectations.push(product_expectation(state, &context(settings, ia, ib, ic))?);
        labels.push(context_label(ia, ib, ic));
    }
    let m_value = expectations[0] - expectations[1] - expectations[2] - expectations[3];
    // covariance_delta(−E) = 1 + E: the flipped-first-party family.
    let deltas: Vec<f64> = expectations
        .iter()
        .map(|&e| covariance_delta((-e).clamp(-1.0, 1.0)))
        .collect::<Result<_>>()?;
    let report = InequalityReport::new(deltas[0], deltas[1..].to_vec(), labels);
    Ok(MerminReport {
        report,
        m_value,
        classical_bound: 2.0,
    })
}

/// Chained bipartite report with the conditional-entropy distance:
/// `d(A,B) ≤ d(A,B′) + d(A′,B′) + d(A′,B)`.
///
/// Arguments follow the order (A, A′, B, B′) for the two parties' two
/// settings each.
pub fn bc_inequality_report(
    state: &DensityMatrix,
    a: BlochObservable,
    a_prime: BlochObservable,
    b: BlochObservable,
    b_prime: BlochObservable,
) -> Result<InequalityReport> {
    if state.n_qubits() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: state.n_qubits(),
        });
    }
    let pair_distance = |first: BlochObservable, second: BlochObservable| -> Result<f64> {
        let setting = MeasurementSetting::new(vec![first, second])?;
        let joint = joint_outcome_distribution(state, &setting)?;
        bc_distance(&joint, 0, 1)
    };
    let lhs = pair_distance(a, b)?;
    let rhs_terms = vec![
        pair_distance(a, b_prime)?,
        pair_distance(a_prime, b_prime)?,
        pair_distance(a_prime, b)?,
    ];
    let labels = vec![
        "A1B1".to_string(),
        "A1B2".to_string(),
        "A2B2".to_string(),
        "A2B1".to_string(),
    ];
    Ok(InequalityReport::new(lhs, rhs_terms, labels))
}

/// Evaluates ⟨YYX⟩, ⟨YXY⟩, ⟨XYY⟩, ⟨XXX⟩ on a 3-qubit state and flags
/// the deterministic sign pattern (−1, −1, −1, +1).
///
/// The pattern is classically impossible: multiplying the first three
/// composite outcomes round-by-round forces the fourth to be −1, never
/// +1, for any local assignment of X and Y values.
pub fn sign_ghz_check(state: &DensityMatrix) -> Result<SignGhzCheck> {
    require_three_qubits(state)?;
    let x = BlochObservable::x();
    let y = BlochObservable::y();
    let expect = |o1, o2, o3| -> Result<f64> {
        product_expectation(state, &MeasurementSetting::new(vec![o1, o2, o3])?)
    };
    let e_yyx = expect(y, y, x)?;
    let e_yxy = expect(y, x, y)?;
    let e_xyy = expect(x, y, y)?;
    let e_xxx = expect(x, x, x)?;
    let paradoxical = (e_yyx + 1.0).abs() <= VIOLATION_TOL
        && (e_yxy + 1.0).abs() <= VIOLATION_TOL
        && (e_xyy + 1.0).abs() <= VIOLATION_TOL
        && (e_xxx - 1.0).abs() <= VIOLATION_TOL;
    Ok(SignGhzCheck {
        e_yyx,
        e_yxy,
        e_xyy,
        e_xxx,
        paradoxical,
    })
}
