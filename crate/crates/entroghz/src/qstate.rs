//! States, local ±1 observables, and exact measurement statistics.
//!
//! Conventions used throughout the crate:
//!
//! * Party 1 owns the most significant qubit in every tensor product and
//!   basis index; `kron` composes factors left to right accordingly.
//! * Measurements are projective. A ±1 observable M has spectral
//!   projectors (I ± M)/2, and joint outcome probabilities are
//!   Tr[ρ (Π₁ ⊗ … ⊗ Πₙ)].
//! * In outcome tuples, +1 maps to bit 0 and −1 to bit 1, and outcome
//!   tuples index distributions with party 1 as the most significant bit.

use num_complex::Complex64;

use crate::complex::{ComplexMatrix, ALGEBRAIC_TOL};
use crate::{Error, Result};

/// Tolerance for eigenvalue-based checks (PSD, ±1 spectra).
pub const SPECTRAL_TOL: f64 = 1e-10;

/// Probabilities this far below zero are treated as numerical noise and
/// clamped to exactly zero.
pub const PROB_CLAMP: f64 = 1e-12;

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[&[(0.0, 0.0), (1.0, 0.0)], &[(1.0, 0.0), (0.0, 0.0)]]).unwrap()
}

fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[&[(0.0, 0.0), (0.0, -1.0)], &[(0.0, 1.0), (0.0, 0.0)]]).unwrap()
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[&[(1.0, 0.0), (0.0, 0.0)], &[(0.0, 0.0), (-1.0, 0.0)]]).unwrap()
}

/// Density matrix of an n-qubit state, n ∈ {2, 3}.
///
/// Construction validates Hermiticity and unit trace to 1e-12 and
/// positive semidefiniteness to 1e-10.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if !(2..=3).contains(&n_qubits) {
            return Err(Error::UnsupportedArity(n_qubits));
        }
        if matrix.dim() != 1 << n_qubits {
            return Err(Error::Shape(format!(
                "{}-qubit state needs a {}-dimensional matrix, got {}",
                n_qubits,
                1 << n_qubits,
                matrix.dim()
            )));
        }
        if !matrix.is_hermitian(ALGEBRAIC_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > ALGEBRAIC_TOL || tr.im.abs() > ALGEBRAIC_TOL {
            return Err(Error::InvalidState(format!("trace is {}, expected 1", tr)));
        }
        let min_eig = matrix
            .hermitian_eigenvalues()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -SPECTRAL_TOL {
            return Err(Error::InvalidState(format!(
                "smallest eigenvalue {} is negative",
                min_eig
            )));
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        self.matrix.trace_mul(&self.matrix).unwrap().re
    }

    /// Relabels parties: qubit `i` of the result is qubit `perm[i]` of
    /// `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        if perm.len() != n || {
            let mut seen = vec![false; n];
            perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        } {
            return Err(Error::Shape(format!("invalid permutation {:?}", perm)));
        }
        let remap = |idx: usize| -> usize {
            let mut out = 0;
            for (new_pos, &old_pos) in perm.iter().enumerate() {
                // Party k sits at bit (n - 1 - k).
                let bit = (idx >> (n - 1 - old_pos)) & 1;
                out |= bit << (n - 1 - new_pos);
            }
            out
        };
        let dim = self.dim();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(remap(i), remap(j))] = self.matrix[(i, j)];
            }
        }
        Self::new(n, m)
    }
}

/// Single-qubit ±1 observable defined by a unit Bloch vector:
/// bₓX + b_yY + b_zZ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochObservable {
    bloch: [f64; 3],
}

impl BlochObservable {
    pub fn new(bloch: [f64; 3]) -> Result<Self> {
        let norm = (bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]).sqrt();
        if (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::InvalidObservable(format!(
                "Bloch vector has norm {}, expected 1",
                norm
            )));
        }
        let obs = Self { bloch };
        let eig = obs.matrix().hermitian_eigenvalues()?;
        if (eig[0] + 1.0).abs() > SPECTRAL_TOL || (eig[1] - 1.0).abs() > SPECTRAL_TOL {
            return Err(Error::InvalidObservable(format!(
                "eigenvalues {:?} are not ±1",
                eig
            )));
        }
        Ok(obs)
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.bloch
    }

    /// The observable as a 2×2 Hermitian matrix.
    pub fn matrix(&self) -> ComplexMatrix {
        let [bx, by, bz] = self.bloch;
        pauli_x()
            .scale_re(bx)
            .add(&pauli_y().scale_re(by))
            .unwrap()
            .add(&pauli_z().scale_re(bz))
            .unwrap()
    }

    /// Spectral projector (I + outcome·M)/2 for outcome ∈ {+1, −1}.
    pub fn projector(&self, outcome: i8) -> ComplexMatrix {
        ComplexMatrix::identity(2)
            .add(&self.matrix().scale_re(outcome as f64))
            .unwrap()
            .scale_re(0.5)
    }

    pub fn x() -> Self {
        Self { bloch: [1.0, 0.0, 0.0] }
    }

    pub fn y() -> Self {
        Self { bloch: [0.0, 1.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { bloch: [0.0, 0.0, 1.0] }
    }
}

/// Observable in the XY plane at angle `theta`: cos θ X + sin θ Y.
/// Angles are taken modulo 2π.
pub fn xy_observable(theta: f64) -> BlochObservable {
    BlochObservable {
        bloch: [theta.cos(), theta.sin(), 0.0],
    }
}

/// One local observable per party.
#[derive(Debug, Clone)]
pub struct MeasurementSetting {
    per_party: Vec<BlochObservable>,
}

impl MeasurementSetting {
    pub fn new(per_party: Vec<BlochObservable>) -> Result<Self> {
        if per_party.is_empty() {
            return Err(Error::Shape("measurement setting has no parties".into()));
        }
        Ok(Self { per_party })
    }

    pub fn n_parties(&self) -> usize {
        self.per_party.len()
    }

    pub fn observables(&self) -> &[BlochObservable] {
        &self.per_party
    }
}

/// Probabilities over ±1 outcome tuples.
///
/// Dense: entry `i` is the probability of the tuple whose party-k outcome
/// is +1 when bit (n−1−k) of `i` is 0 and −1 when it is 1.
#[derive(Debug, Clone)]
pub struct JointOutcomeDistribution {
    n_parties: usize,
    probs: Vec<f64>,
}

impl JointOutcomeDistribution {
    pub fn new(n_parties: usize, mut probs: Vec<f64>) -> Result<Self> {
        if n_parties == 0 || n_parties > 6 {
            return Err(Error::UnsupportedArity(n_parties));
        }
        if probs.len() != 1 << n_parties {
            return Err(Error::Shape(format!(
                "expected {} probabilities, got {}",
                1 << n_parties,
                probs.len()
            )));
        }
        for p in probs.iter_mut() {
            if *p < 0.0 {
                if *p < -PROB_CLAMP {
                    return Err(Error::InvalidProbability(*p));
                }
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { n_parties, probs })
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// The ±1 outcome of party `party` in the tuple with index `index`.
    pub fn outcome(&self, index: usize, party: usize) -> i8 {
        if (index >> (self.n_parties - 1 - party)) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn prob_of(&self, outcomes: &[i8]) -> Result<f64> {
        if outcomes.len() != self.n_parties {
            return Err(Error::ArityMismatch {
                expected: self.n_parties,
                got: outcomes.len(),
            });
        }
        let mut idx = 0;
        for &o in outcomes {
            idx = (idx << 1) | usize::from(o < 0);
        }
        Ok(self.probs[idx])
    }

    /// Marginal distribution over `parties` (order defines the result's
    /// party order; repeats are rejected).
    pub fn marginal(&self, parties: &[usize]) -> Result<Self> {
        if parties.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; self.n_parties];
        for &p in parties {
            if p >= self.n_parties {
                return Err(Error::IndexOutOfRange { index: p, len: self.n_parties });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::Shape(format!("party {} repeated in marginal", p)));
            }
        }
        let k = parties.len();
        let mut probs = vec![0.0; 1 << k];
        for (idx, &p) in self.probs.iter().enumerate() {
            let mut sub = 0;
            for &party in parties {
                let bit = (idx >> (self.n_parties - 1 - party)) & 1;
                sub = (sub << 1) | bit;
            }
            probs[sub] += p;
        }
        Self::new(k, probs)
    }
}

/// Three-qubit GHZ state (|000⟩ + |111⟩)/√2 as a density matrix.
/// Only arity 3 is supported.
pub fn ghz_state(n_parties: usize) -> Result<DensityMatrix> {
    if n_parties != 3 {
        return Err(Error::UnsupportedArity(n_parties));
    }
    let dim = 1 << n_parties;
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut ket = vec![Complex64::new(0.0, 0.0); dim];
    ket[0] = amp;
    ket[dim - 1] = amp;
    DensityMatrix::new(n_parties, ComplexMatrix::outer(&ket))
}

/// Two-qubit singlet (|01⟩ − |10⟩)/√2 as a density matrix.
pub fn singlet_state() -> DensityMatrix {
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    let ket = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(amp, 0.0),
        Complex64::new(-amp, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    DensityMatrix::new(2, ComplexMatrix::outer(&ket)).unwrap()
}

/// Maximally mixed state I/2ⁿ.
pub fn maximally_mixed(n_qubits: usize) -> Result<DensityMatrix> {
    let dim = 1usize
        .checked_shl(n_qubits as u32)
        .ok_or(Error::UnsupportedArity(n_qubits))?;
    DensityMatrix::new(
        n_qubits,
        ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
    )
}

/// White-noise admixture (1−p)·pure + p·I/2ⁿ.
pub fn noisy_state(pure: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "noise fraction",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    let mixed = maximally_mixed(pure.n_qubits())?;
    DensityMatrix::new(
        pure.n_qubits(),
        pure.matrix()
            .scale_re(1.0 - p)
            .add(&mixed.matrix().scale_re(p))?,
    )
}

/// Tensor product of the per-party observables. Hermitian with ±1
/// eigenvalues because every factor is.
pub fn product_observable(setting: &MeasurementSetting) -> ComplexMatrix {
    let mut out = setting.per_party[0].matrix();
    for obs in &setting.per_party[1..] {
        out = out.kron(&obs.matrix());
    }
    out
}

fn check_arity(state: &DensityMatrix, setting: &MeasurementSetting) -> Result<()> {
    if state.n_qubits() != setting.n_parties() {
        return Err(Error::ArityMismatch {
            expected: state.n_qubits(),
            got: setting.n_parties(),
        });
    }
    Ok(())
}

/// Exact outcome distribution of a projective product measurement.
pub fn joint_outcome_distribution(
    state: &DensityMatrix,
    setting: &MeasurementSetting,
) -> Result<JointOutcomeDistribution> {
    check_arity(state, setting)?;
    let n = setting.n_parties();
    let mut probs = Vec::with_capacity(1 << n);
    for idx in 0..1usize << n {
        let mut projector: Option<ComplexMatrix> = None;
        for (party, obs) in setting.per_party.iter().enumerate() {
            let outcome = if (idx >> (n - 1 - party)) & 1 == 0 { 1 } else { -1 };
            let local = obs.projector(outcome);
            projector = Some(match projector {
                None => local,
                Some(acc) => acc.kron(&local),
            });
        }
        probs.push(state.matrix().trace_mul(&projector.unwrap())?.re);
    }
    JointOutcomeDistribution::new(n, probs)
}

/// ⟨O₁ ⊗ … ⊗ Oₙ⟩ = Tr[ρ · product observable].
pub fn product_expectation(state: &DensityMatrix, setting: &MeasurementSetting) -> Result<f64> {
    check_arity(state, setting)?;
    let value = state.matrix().trace_mul(&product_observable(setting))?;
    if value.im.abs() > SPECTRAL_TOL {
        return Err(Error::InvalidState(format!(
            "expectation has imaginary part {}",
            value.im
        )));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;

    fn setting(obs: &[BlochObservable]) -> MeasurementSetting {
        MeasurementSetting::new(obs.to_vec()).unwrap()
    }

    #[test]
    fn ghz_matrix_entries() {
        let ghz = ghz_state(3).unwrap();
        let m = ghz.matrix();
        for (i, j, want) in [
            (0, 0, 0.5),
            (0, 7, 0.5),
            (7, 0, 0.5),
            (7, 7, 0.5),
            (0, 1, 0.0),
            (3, 4, 0.0),
        ] {
            assert!((m[(i, j)].re - want).abs() < 1e-15);
            assert!(m[(i, j)].im.abs() < 1e-15);
        }
        assert!((ghz.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_rejects_other_arities() {
        assert!(ghz_state(2).is_err());
        assert!(ghz_state(4).is_err());
    }

    #[test]
    fn ghz_xxx_expectation_is_one() {
        let ghz = ghz_state(3).unwrap();
        let s = setting(&[BlochObservable::x(); 3]);
        assert!((product_expectation(&ghz, &s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_correlations() {
        let psi = singlet_state();
        let zz = setting(&[BlochObservable::z(); 2]);
        assert!((product_expectation(&psi, &zz).unwrap() + 1.0).abs() < 1e-12);
        let xx = setting(&[BlochObservable::x(); 2]);
        assert!((product_expectation(&psi, &xx).unwrap() + 1.0).abs() < 1e-12);
        // ⟨X ⊗ Y⟩ vanishes: the singlet correlation is −â·b̂.
        let xy = setting(&[BlochObservable::x(), BlochObservable::y()]);
        assert!(product_expectation(&psi, &xy).unwrap().abs() < 1e-12);
    }

    #[test]
    fn noisy_state_limits() {
        let ghz = ghz_state(3).unwrap();
        let same = noisy_state(&ghz, 0.0).unwrap();
        assert!(same.matrix().approx_eq(ghz.matrix(), 1e-15));
        let mixed = noisy_state(&ghz, 1.0).unwrap();
        for i in 0..8 {
            assert!((mixed.matrix()[(i, i)].re - 0.125).abs() < 1e-15);
        }
        assert!(noisy_state(&ghz, -0.1).is_err());
        assert!(noisy_state(&ghz, 1.1).is_err());
    }

    #[test]
    fn noisy_purity_matches_algebraic_expansion() {
        // Tr ρ(p)² = (1−p)²(1 − 1/8) + 1/8 for a pure 3-qubit input.
        let ghz = ghz_state(3).unwrap();
        let p = 0.123;
        let rho = noisy_state(&ghz, p).unwrap();
        let expected = (1.0 - p) * (1.0 - p) * (1.0 - 0.125) + 0.125;
        assert!((rho.purity() - expected).abs() < 1e-12);
    }

    #[test]
    fn xy_observable_axes() {
        assert_eq!(xy_observable(0.0).bloch(), [1.0, 0.0, 0.0]);
        let y = xy_observable(std::f64::consts::FRAC_PI_2);
        assert!((y.bloch()[0]).abs() < 1e-15);
        assert!((y.bloch()[1] - 1.0).abs() < 1e-15);
        let a1 = xy_observable(std::f64::consts::FRAC_PI_6);
        assert!((a1.bloch()[0] - (std::f64::consts::FRAC_PI_6).cos()).abs() < 1e-15);
        assert!((a1.bloch()[1] - (std::f64::consts::FRAC_PI_6).sin()).abs() < 1e-15);
    }

    #[test]
    fn bloch_observable_rejects_non_unit() {
        assert!(BlochObservable::new([1.0, 1.0, 0.0]).is_err());
        assert!(BlochObservable::new([0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn product_observable_squares_to_identity() {
        let s = setting(&[BlochObservable::x(), BlochObservable::x(), BlochObservable::x()]);
        let o = product_observable(&s);
        let o2 = o.matmul(&o).unwrap();
        assert!(o2.approx_eq(&ComplexMatrix::identity(8), 1e-12));
    }

    #[test]
    fn xyy_eigenvalues_split_evenly() {
        let s = setting(&[BlochObservable::x(), BlochObservable::y(), BlochObservable::y()]);
        let ev = product_observable(&s).hermitian_eigenvalues().unwrap();
        for (i, l) in ev.iter().enumerate() {
            let want = if i < 4 { -1.0 } else { 1.0 };
            assert!((l - want).abs() < 1e-10, "eigenvalue {} = {}", i, l);
        }
    }

    #[test]
    fn zz_product_is_diagonal_parity() {
        let s = setting(&[BlochObservable::z(), BlochObservable::z()]);
        let o = product_observable(&s);
        for (i, want) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
            assert!((o[(i, i)].re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn ghz_context_distributions_match_closed_form() {
        // XY-plane closed form: p(a,b,c) = (1 + abc·cos(α+β+γ))/8.
        let ghz = ghz_state(3).unwrap();
        let t1 = std::f64::consts::FRAC_PI_6;
        let t2 = -std::f64::consts::PI / 12.0;

        let d_ctx = joint_outcome_distribution(
            &ghz,
            &setting(&[xy_observable(t1), xy_observable(t1), xy_observable(t1)]),
        )
        .unwrap();
        for &p in d_ctx.probabilities() {
            assert!((p - 0.125).abs() < 1e-12);
        }

        let a_ctx = joint_outcome_distribution(
            &ghz,
            &setting(&[xy_observable(t1), xy_observable(t2), xy_observable(t2)]),
        )
        .unwrap();
        for idx in 0..8 {
            let abc: i8 =
                a_ctx.outcome(idx, 0) * a_ctx.outcome(idx, 1) * a_ctx.outcome(idx, 2);
            let want = if abc == 1 { 0.25 } else { 0.0 };
            assert!((a_ctx.probabilities()[idx] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_state_is_uniform_in_any_context() {
        let mixed = maximally_mixed(3).unwrap();
        let mut rng = XorShift64Star::new(5);
        for _ in 0..5 {
            let s = setting(&[
                xy_observable(rng.next_range(0.0, 6.3)),
                xy_observable(rng.next_range(0.0, 6.3)),
                xy_observable(rng.next_range(0.0, 6.3)),
            ]);
            let d = joint_outcome_distribution(&mixed, &s).unwrap();
            for &p in d.probabilities() {
                assert!((p - 0.125).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn expectation_agrees_with_distribution_and_closed_form() {
        let ghz = ghz_state(3).unwrap();
        let mut rng = XorShift64Star::new(17);
        for _ in 0..50 {
            let (a, b, c) = (
                rng.next_range(-3.2, 3.2),
                rng.next_range(-3.2, 3.2),
                rng.next_range(-3.2, 3.2),
            );
            let s = setting(&[xy_observable(a), xy_observable(b), xy_observable(c)]);
            let e = product_expectation(&ghz, &s).unwrap();
            assert!((e - (a + b + c).cos()).abs() < 1e-10);
            let d = joint_outcome_distribution(&ghz, &s).unwrap();
            let signed: f64 = d
                .probabilities()
                .iter()
                .enumerate()
                .map(|(idx, &p)| {
                    p * f64::from(d.outcome(idx, 0) * d.outcome(idx, 1) * d.outcome(idx, 2))
                })
                .sum();
            assert!((e - signed).abs() < 1e-10);
        }
    }

    #[test]
    fn noisy_expectation_scales_linearly() {
        let ghz = ghz_state(3).unwrap();
        let mut rng = XorShift64Star::new(23);
        for _ in 0..100 {
            let (a, b, c) = (
                rng.next_range(-3.2, 3.2),
                rng.next_range(-3.2, 3.2),
                rng.next_range(-3.2, 3.2),
            );
            let p = rng.next_f64();
            let rho = noisy_state(&ghz, p).unwrap();
            let s = setting(&[xy_observable(a), xy_observable(b), xy_observable(c)]);
            let e = product_expectation(&rho, &s).unwrap();
            assert!((e - (1.0 - p) * (a + b + c).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn singlet_rotation_invariance() {
        // ⟨(n̂·σ) ⊗ (n̂·σ)⟩ = −1 for any direction n̂.
        let psi = singlet_state();
        let mut rng = XorShift64Star::new(31);
        for _ in 0..20 {
            let z = rng.next_range(-1.0, 1.0);
            let phi = rng.next_range(0.0, std::f64::consts::TAU);
            let r = (1.0 - z * z).sqrt();
            let n = BlochObservable::new([r * phi.cos(), r * phi.sin(), z]).unwrap();
            let e = product_expectation(&psi, &setting(&[n, n])).unwrap();
            assert!((e + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn distribution_sums_to_one_for_random_inputs() {
        let ghz = ghz_state(3).unwrap();
        let mut rng = XorShift64Star::new(37);
        for _ in 0..200 {
            let p = rng.next_f64();
            let rho = noisy_state(&ghz, p).unwrap();
            let obs: Vec<BlochObservable> = (0..3)
                .map(|_| {
                    let z = rng.next_range(-1.0, 1.0);
                    let phi = rng.next_range(0.0, std::f64::consts::TAU);
                    let r = (1.0 - z * z).sqrt();
                    BlochObservable::new([r * phi.cos(), r * phi.sin(), z]).unwrap()
                })
                .collect();
            let d = joint_outcome_distribution(&rho, &setting(&obs)).unwrap();
            let sum: f64 = d.probabilities().iter().sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let ghz = ghz_state(3).unwrap();
        let s = setting(&[BlochObservable::x(), BlochObservable::x()]);
        assert!(matches!(
            joint_outcome_distribution(&ghz, &s),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(product_expectation(&ghz, &s).is_err());
    }

    #[test]
    fn permute_qubits_relabels_outcomes() {
        // Build an asymmetric state and check a marginal moves with the
        // permutation: ⟨Z⟩ of party 0 becomes ⟨Z⟩ of party 1 after swap.
        let ghz = ghz_state(3).unwrap();
        let tilted = noisy_state(&ghz, 0.3).unwrap();
        // Mix in a product state that singles out party 0.
        let mut m = tilted.matrix().scale_re(0.5);
        let mut excited = ComplexMatrix::zeros(8);
        excited[(1, 1)] = Complex64::new(1.0, 0.0); // |001⟩: party 2 excited
        m = m.add(&excited.scale_re(0.5)).unwrap();
        let rho = DensityMatrix::new(3, m).unwrap();

        let z_on = |state: &DensityMatrix, party: usize| {
            let obs: Vec<ComplexMatrix> = (0..3)
                .map(|k| {
                    if k == party {
                        BlochObservable::z().matrix()
                    } else {
                        ComplexMatrix::identity(2)
                    }
                })
                .collect();
            let full = obs[0].kron(&obs[1]).kron(&obs[2]);
            state.matrix().trace_mul(&full).unwrap().re
        };

        let swapped = rho.permute_qubits(&[2, 1, 0]).unwrap();
        assert!((z_on(&rho, 0) - z_on(&swapped, 2)).abs() < 1e-12);
        assert!((z_on(&rho, 2) - z_on(&swapped, 0)).abs() < 1e-12);
    }
}
