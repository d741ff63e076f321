//! Classical (local-hidden-variable) oracle.
//!
//! A classical model for the tripartite scenario is a joint probability
//! distribution over all six observables at once — both settings of
//! every party — from which each measurement context arises by
//! marginalization. This module generates such joints, evaluates the
//! entropic quantities on them (where the tripartite bound provably
//! holds), and decides by exact linear feasibility whether a given set
//! of four context distributions admits any classical joint at all.

mod simplex;

use serde::Serialize;

use crate::inequalities::{context, context_label, InequalityReport, SettingSextet, CONTEXTS};
use crate::infometrics::multi_delta;
use crate::qstate::{joint_outcome_distribution, DensityMatrix, JointOutcomeDistribution};
use crate::rng::XorShift64Star;
use crate::{Error, Result};

/// Tolerance for the no-signaling consistency precheck and for the
/// feasibility residual.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Number of joint assignments of six binary observables.
const N_ASSIGNMENTS: usize = 64;

/// Variable indices of each context's observables within the order
/// (A₁, A₂, B₁, B₂, C₁, C₂), matching [`CONTEXTS`].
const CONTEXT_VARS: [[usize; 3]; 4] = [[0, 2, 4], [0, 3, 5], [1, 2, 5], [1, 3, 4]];

/// A joint probability distribution over all six observables.
///
/// Entry `i` is the probability of the assignment whose outcome for
/// variable `k` (in the order A₁, A₂, B₁, B₂, C₁, C₂) is encoded in bit
/// `5 − k` of `i`: bit 0 means outcome +1, bit 1 means outcome −1.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalJoint {
    probs: Vec<f64>,
}

impl ClassicalJoint {
    /// Validates 64 nonnegative entries summing to 1 within 1e-12.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() != N_ASSIGNMENTS {
            return Err(Error::LengthMismatch {
                expected: N_ASSIGNMENTS,
                got: probs.len(),
            });
        }
        for p in probs.iter_mut() {
            if *p < 0.0 {
                if *p < -1e-12 {
                    return Err(Error::InvalidProbability(*p));
                }
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { probs })
    }

    /// The uniform joint: every assignment has probability 1/64.
    pub fn uniform() -> Self {
        Self {
            probs: vec![1.0 / N_ASSIGNMENTS as f64; N_ASSIGNMENTS],
        }
    }

    /// Probabilities in assignment-index order.
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Outcome (±1) of variable `var` (0–5) under assignment `index`.
    pub fn outcome(index: usize, var: usize) -> i8 {
        if (index >> (5 - var)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// This joint as a six-party outcome distribution.
    pub fn distribution(&self) -> JointOutcomeDistribution {
        JointOutcomeDistribution::new(6, self.probs.clone())
            .expect("a valid classical joint is a valid six-party distribution")
    }

    /// The three-party distribution of context `index` (0–3, in
    /// [`CONTEXTS`] order).
    pub fn context_marginal(&self, index: usize) -> Result<JointOutcomeDistribution> {
        let vars = CONTEXT_VARS.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: CONTEXT_VARS.len(),
        })?;
        self.distribution().marginal(vars)
    }
}

/// One deterministic assignment of outcomes to all six observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    assignment: [i8; 6],
}

impl DeterministicStrategy {
    /// Requires every outcome to be ±1.
    pub fn new(assignment: [i8; 6]) -> Result<Self> {
        if assignment.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidState(format!(
                "strategy outcomes must be ±1, got {:?}",
                assignment
            )));
        }
        Ok(Self { assignment })
    }

    /// The `index`-th of the 64 strategies, in [`ClassicalJoint`]'s
    /// assignment-index order.
    pub fn from_index(index: usize) -> Result<Self> {
        if index >= N_ASSIGNMENTS {
            return Err(Error::IndexOutOfRange {
                index,
                len: N_ASSIGNMENTS,
            });
        }
        let mut assignment = [1i8; 6];
        for (var, slot) in assignment.iter_mut().enumerate() {
            *slot = ClassicalJoint::outcome(index, var);
        }
        Ok(Self { assignment })
    }

    /// Outcomes in the order (A₁, A₂, B₁, B₂, C₁, C₂).
    pub fn assignment(&self) -> [i8; 6] {
        self.assignment
    }

    /// The joint distribution putting all mass on this strategy.
    pub fn to_joint(&self) -> ClassicalJoint {
        let mut index = 0usize;
        for (var, &v) in self.assignment.iter().enumerate() {
            if v == -1 {
                index |= 1 << (5 - var);
            }
        }
        let mut probs = vec![0.0; N_ASSIGNMENTS];
        probs[index] = 1.0;
        ClassicalJoint { probs }
    }
}

/// The four composite products of a strategy and their overall product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    /// A₁·B₂·C₂.
    pub a: i8,
    /// A₂·B₁·C₂.
    pub b: i8,
    /// A₂·B₂·C₁.
    pub c: i8,
    /// A₁·B₁·C₁.
    pub d: i8,
    /// a·b·c·d; always +1, since every observable appears twice.
    pub product: i8,
}

/// Computes the four context products of a deterministic strategy.
pub fn strategy_product_check(s: &DeterministicStrategy) -> ProductCheck {
    let [a1, a2, b1, b2, c1, c2] = s.assignment();
    let a = a1 * b2 * c2;
    let b = a2 * b1 * c2;
    let c = a2 * b2 * c1;
    let d = a1 * b1 * c1;
    ProductCheck {
        a,
        b,
        c,
        d,
        product: a * b * c * d,
    }
}

/// A random joint drawn from the flat Dirichlet distribution
/// (i.i.d. unit-exponential weights, normalized); deterministic per
/// seed.
pub fn random_joint(seed: u64) -> ClassicalJoint {
    let mut rng = XorShift64Star::new(seed);
    let mut weights: Vec<f64> = (0..N_ASSIGNMENTS).map(|_| rng.next_exp()).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    // Exact renormalization: fold any floating-point residue into the
    // largest entry so the validator's 1e-12 budget is never spent here.
    let sum: f64 = weights.iter().sum();
    let imax = weights
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    weights[imax] += 1.0 - sum;
    ClassicalJoint::new(weights).expect("normalized nonnegative weights")
}

/// Entropic tripartite report evaluated on a classical joint; the
/// bound provably holds, so `violated` is always false here.
pub fn classical_entropic_mermin(joint: &ClassicalJoint) -> Result<InequalityReport> {
    let dist = joint.distribution();
    let mut values = Vec::with_capacity(4);
    let mut labels = Vec::with_capacity(4);
    for (vars, &(ia, ib, ic)) in CONTEXT_VARS.iter().zip(&CONTEXTS) {
        values.push(multi_delta(&dist, vars)?.bits);
        labels.push(context_label(ia, ib, ic));
    }
    let lhs = values.remove(0);
    Ok(InequalityReport::new(lhs, values, labels))
}

/// Margins of the two chaining steps that assemble the tripartite
/// bound, plus the assembled bound itself, on one classical joint.
///
/// Step 1 splits the target entropy at the pair (B₂, C₂):
/// `H(A₁B₁C₁) ≤ H(A₁B₂C₂) + H(B₁B₂C₁C₂)`. Step 2 bounds the bridge
/// term through A₂: `H(B₁B₂C₁C₂) ≤ H(A₂B₂C₁) + H(A₂B₁C₂)`. Adding
/// them yields the tripartite inequality, so each margin (rhs − lhs)
/// must be nonnegative classically.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChainMargins {
    /// Margin of step 1.
    pub split_margin: f64,
    /// Margin of step 2.
    pub bridge_margin: f64,
    /// Margin of the assembled tripartite inequality.
    pub total_margin: f64,
}

/// Evaluates both chaining steps and the assembled bound on `joint`.
pub fn derivation_chain_margins(joint: &ClassicalJoint) -> Result<ChainMargins> {
    let dist = joint.distribution();
    let delta = |vars: &[usize]| -> Result<f64> { Ok(multi_delta(&dist, vars)?.bits) };
    let h_d = delta(&CONTEXT_VARS[0])?;
    let h_a = delta(&CONTEXT_VARS[1])?;
    let h_b = delta(&CONTEXT_VARS[2])?;
    let h_c = delta(&CONTEXT_VARS[3])?;
    let bridge = delta(&[2, 3, 4, 5])?; // H(B₁·B₂·C₁·C₂)
    Ok(ChainMargins {
        split_margin: h_a + bridge - h_d,
        bridge_margin: h_c + h_b - bridge,
        total_margin: h_a + h_b + h_c - h_d,
    })
}

/// The four context distributions induced by a quantum state and a
/// setting sextet, in [`CONTEXTS`] order — the inputs to
/// [`lhv_feasibility`].
pub fn context_distributions(
    state: &DensityMatrix,
    settings: &SettingSextet,
) -> Result<[JointOutcomeDistribution; 4]> {
    if state.n_qubits() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: state.n_qubits(),
        });
    }
    let mut out = Vec::with_capacity(4);
    for &(ia, ib, ic) in &CONTEXTS {
        out.push(joint_outcome_distribution(
            state,
            &context(settings, ia, ib, ic),
        )?);
    }
    Ok(out.try_into().expect("exactly four contexts"))
}

/// Outcome of the classical-model feasibility search.
#[derive(Debug, Clone, PartialEq)]
pub enum LhvFeasibility {
    /// A classical joint reproducing all four context distributions.
    Feasible(ClassicalJoint),
    /// No classical joint exists; `residual` is the smallest total
    /// constraint violation (L1) any nonnegative joint can achieve.
    Infeasible { residual: f64 },
}

impl LhvFeasibility {
    /// True when a witness joint was found.
    pub fn is_feasible(&self) -> bool {
        matches!(self, LhvFeasibility::Feasible(_))
    }

    /// The witness joint, when feasible.
    pub fn witness(&self) -> Option<&ClassicalJoint> {
        match self {
            LhvFeasibility::Feasible(joint) => Some(joint),
            LhvFeasibility::Infeasible { .. } => None,
        }
    }
}

/// Decides whether four context distributions (in [`CONTEXTS`] order)
/// arise from a single joint over all six observables.
///
/// Inputs must be three-party distributions that are mutually
/// consistent on shared observables (no-signaling) within
/// [`FEASIBILITY_TOL`]; inconsistent inputs are rejected, since they
/// are malformed rather than nonclassical. The search itself is an
/// exact linear feasibility problem over the 64 assignment weights.
pub fn lhv_feasibility(contexts: &[JointOutcomeDistribution; 4]) -> Result<LhvFeasibility> {
    for dist in contexts {
        if dist.n_parties() != 3 {
            return Err(Error::ArityMismatch {
                expected: 3,
                got: dist.n_parties(),
            });
        }
    }
    check_no_signaling(contexts)?;

    // One equality row per (context, outcome-triple): the mass of all
    // assignments that restrict to that triple must match the input.
    let mut a = Vec::with_capacity(32);
    let mut b = Vec::with_capacity(32);
    for (k, dist) in contexts.iter().enumerate() {
        for t in 0..8 {
            let mut row = vec![0.0f64; N_ASSIGNMENTS];
            for (i, cell) in row.iter_mut().enumerate() {
                if context_restriction(i, k) == t {
                    *cell = 1.0;
                }
            }
            a.push(row);
            b.push(dist.probabilities()[t]);
        }
    }
    let solution = simplex::phase_one(&a, &b)?;
    if solution.objective > FEASIBILITY_TOL {
        return Ok(LhvFeasibility::Infeasible {
            residual: solution.objective,
        });
    }
    let mut probs = solution.x;
    for p in probs.iter_mut() {
        *p = p.max(0.0);
    }
    let sum: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= sum;
    }
    let residue: f64 = 1.0 - probs.iter().sum::<f64>();
    probs[0] += residue;
    Ok(LhvFeasibility::Feasible(ClassicalJoint::new(probs)?))
}

/// Outcome-triple index (0–7) of assignment `i` within context `k`.
fn context_restriction(i: usize, k: usize) -> usize {
    let vars = CONTEXT_VARS[k];
    let bit = |var: usize| (i >> (5 - var)) & 1;
    (bit(vars[0]) << 2) | (bit(vars[1]) << 1) | bit(vars[2])
}

/// Every observable appears in exactly two contexts; its single-party
/// marginal must agree between them.
fn check_no_signaling(contexts: &[JointOutcomeDistribution; 4]) -> Result<()> {
    for var in 0..6 {
        let occurrences: Vec<(usize, usize)> = CONTEXT_VARS
            .iter()
            .enumerate()
            .filter_map(|(k, vars)| {
                vars.iter().position(|&v| v == var).map(|party| (k, party))
            })
            .collect();
        let (k0, p0) = occurrences[0];
        let (k1, p1) = occurrences[1];
        let m0 = contexts[k0].marginal(&[p0])?.probabilities()[0];
        let m1 = contexts[k1].marginal(&[p1])?.probabilities()[0];
        if (m0 - m1).abs() > FEASIBILITY_TOL {
            let names = ["A1", "A2", "B1", "B2", "C1", "C2"];
            return Err(Error::NoSignaling(format!(
                "marginal of {} differs between contexts {} and {} by {:.3e}",
                names[var],
                k0,
                k1,
                (m0 - m1).abs()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::preset_settings;
    use crate::qstate::{ghz_state, maximally_mixed, noisy_state, JointOutcomeDistribution};

    #[test]
    fn random_joint_is_normalized_and_deterministic() {
        for seed in 0..50u64 {
            let joint = random_joint(seed);
            let sum: f64 = joint.probabilities().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
            assert!(joint.probabilities().iter().all(|&p| p >= 0.0));
        }
        assert_eq!(random_joint(7), random_joint(7));
        let tv: f64 = random_joint(1)
            .probabilities()
            .iter()
            .zip(random_joint(2).probabilities())
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv > 0.0);
    }

    #[test]
    fn joint_validation_rejects_bad_input() {
        assert!(ClassicalJoint::new(vec![1.0; 8]).is_err());
        let mut probs = vec![0.0; 64];
        probs[0] = 1.5;
        probs[1] = -0.5;
        assert!(ClassicalJoint::new(probs).is_err());
        assert!(ClassicalJoint::new(vec![0.5 / 64.0; 64]).is_err());
    }

    #[test]
    fn every_strategy_has_unit_product() {
        for index in 0..64 {
            let s = DeterministicStrategy::from_index(index).unwrap();
            let check = strategy_product_check(&s);
            assert_eq!(check.product, 1, "strategy {:?}", s.assignment());
            assert_eq!(check.a * check.b * check.c * check.d, 1);
        }
        let all_plus = DeterministicStrategy::new([1; 6]).unwrap();
        assert_eq!(
            strategy_product_check(&all_plus),
            ProductCheck {
                a: 1,
                b: 1,
                c: 1,
                d: 1,
                product: 1
            }
        );
        let all_minus = DeterministicStrategy::new([-1; 6]).unwrap();
        assert_eq!(
            strategy_product_check(&all_minus),
            ProductCheck {
                a: -1,
                b: -1,
                c: -1,
                d: -1,
                product: 1
            }
        );
        assert!(DeterministicStrategy::new([1, 1, 0, 1, 1, 1]).is_err());
    }

    #[test]
    fn uniform_joint_saturates_nothing() {
        // Six independent fair coins: every product is a fair coin.
        let report = classical_entropic_mermin(&ClassicalJoint::uniform()).unwrap();
        assert!((report.lhs - 1.0).abs() < 1e-12);
        assert!((report.rhs_total - 3.0).abs() < 1e-12);
        assert!(!report.violated);
    }

    #[test]
    fn deterministic_strategies_have_zero_entropies() {
        for index in [0usize, 1, 21, 63] {
            let joint = DeterministicStrategy::from_index(index).unwrap().to_joint();
            let report = classical_entropic_mermin(&joint).unwrap();
            assert_eq!(report.lhs, 0.0);
            assert_eq!(report.rhs_total, 0.0);
            assert!(!report.violated);
        }
    }

    #[test]
    fn random_joints_always_satisfy_the_bound() {
        for seed in 0..500u64 {
            let joint = random_joint(seed);
            let report = classical_entropic_mermin(&joint).unwrap();
            assert!(report.margin >= -1e-10, "seed {} margin {}", seed, report.margin);
            assert!(!report.violated);
            let chain = derivation_chain_margins(&joint).unwrap();
            assert!(chain.split_margin >= -1e-10, "seed {}", seed);
            assert!(chain.bridge_margin >= -1e-10, "seed {}", seed);
            assert!(
                (chain.total_margin - report.margin).abs() < 1e-12,
                "chain total must equal the report margin"
            );
        }
    }

    #[test]
    fn uniform_contexts_are_feasible() {
        let uniform = JointOutcomeDistribution::new(3, vec![1.0 / 8.0; 8]).unwrap();
        let contexts = [
            uniform.clone(),
            uniform.clone(),
            uniform.clone(),
            uniform,
        ];
        let result = lhv_feasibility(&contexts).unwrap();
        let witness = result.witness().expect("uniform statistics are classical");
        for k in 0..4 {
            let marginal = witness.context_marginal(k).unwrap();
            for &p in marginal.probabilities() {
                assert!((p - 1.0 / 8.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn preset_ghz_statistics_admit_no_classical_joint() {
        let state = ghz_state(3).unwrap();
        let contexts = context_distributions(&state, &preset_settings()).unwrap();
        let result = lhv_feasibility(&contexts).unwrap();
        assert!(!result.is_feasible());
        match result {
            LhvFeasibility::Infeasible { residual } => assert!(residual > 1e-3),
            LhvFeasibility::Feasible(_) => unreachable!(),
        }
    }

    #[test]
    fn deep_noise_restores_a_classical_model() {
        let ghz = ghz_state(3).unwrap();
        let state = noisy_state(&ghz, 0.9).unwrap();
        let contexts = context_distributions(&state, &preset_settings()).unwrap();
        let result = lhv_feasibility(&contexts).unwrap();
        let witness = result.witness().expect("p = 0.9 is deep in the classical region");
        // The witness reproduces the input context statistics, hence
        // their product entropies.
        for (k, dist) in contexts.iter().enumerate() {
            let input = multi_delta(dist, &[0, 1, 2]).unwrap().bits;
            let reproduced =
                multi_delta(&witness.context_marginal(k).unwrap(), &[0, 1, 2]).unwrap().bits;
            assert!(
                (input - reproduced).abs() <= 1e-8,
                "context {}: {} vs {}",
                k,
                input,
                reproduced
            );
        }
    }

    #[test]
    fn classical_statistics_round_trip_through_the_solver() {
        for seed in [3u64, 17, 99] {
            let joint = random_joint(seed);
            let contexts: [JointOutcomeDistribution; 4] = [
                joint.context_marginal(0).unwrap(),
                joint.context_marginal(1).unwrap(),
                joint.context_marginal(2).unwrap(),
                joint.context_marginal(3).unwrap(),
            ];
            let result = lhv_feasibility(&contexts).unwrap();
            let witness = result.witness().expect("own marginals are feasible");
            for k in 0..4 {
                let w = witness.context_marginal(k).unwrap();
                for (p, q) in w.probabilities().iter().zip(contexts[k].probabilities()) {
                    assert!((p - q).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn signaling_inputs_are_rejected_with_a_diagnostic() {
        // Perturb one context's A-marginal so it disagrees with the
        // other context containing A₁.
        let state = maximally_mixed(3).unwrap();
        let mut contexts = context_distributions(&state, &preset_settings()).unwrap();
        let mut probs = contexts[1].probabilities().to_vec();
        probs[0] += 0.05;
        probs[4] -= 0.05;
        contexts[1] = JointOutcomeDistribution::new(3, probs).unwrap();
        match lhv_feasibility(&contexts) {
            Err(Error::NoSignaling(msg)) => assert!(msg.contains("A1")),
            other => panic!("expected a no-signaling rejection, got {:?}", other),
        }
    }
}
