//! White-noise robustness: margins as a function of the noise fraction,
//! critical-threshold search, and measurement-angle optimization.
//!
//! A [`Scenario`] bundles a base state with a full set of measurement
//! settings for one inequality family. [`margin_at`] mixes the base
//! state with white noise, `ρ(p) = (1−p)·ρ + p·I/2ⁿ`, and evaluates the
//! matching report margin; negative margin means violation.
//! [`find_threshold`] bisects for the point where the violation
//! vanishes, and [`optimize_settings`] searches angle space for the most
//! negative margin (coarse grid, then derivative-free simplex descent).

use serde::Serialize;

use crate::inequalities::{
    bc_inequality_report, entropic_mermin_report, mermin_correlation_report, preset_settings,
    xy_symmetric_settings, InequalityReport, SettingSextet, VIOLATION_TOL,
};
use crate::qstate::{ghz_state, singlet_state, xy_observable, BlochObservable, DensityMatrix};
use crate::rng::XorShift64Star;
use crate::util::par_map;
use crate::{Error, Result};

/// Grid step for the coarse angle scan, π/24 per free angle.
pub const GRID_STEP: f64 = std::f64::consts::PI / 24.0;

/// Simplex-diameter termination threshold for the local refinement.
pub const SIMPLEX_TOL: f64 = 1e-6;

/// Seed from which all optimizer restart streams are derived.
const OPTIMIZER_SEED: u64 = 0x656e_7472_6f70_7921;

/// Which inequality family a scenario evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioFamily {
    /// Tripartite entropic form (bits); six observables.
    TripartiteEntropic,
    /// Tripartite correlation (Mermin) form; six observables.
    TripartiteMermin,
    /// Bipartite chained conditional-entropy form; four observables.
    BipartiteBc,
}

impl ScenarioFamily {
    fn settings_len(self) -> usize {
        match self {
            Self::TripartiteEntropic | Self::TripartiteMermin => 6,
            Self::BipartiteBc => 4,
        }
    }

    fn n_qubits(self) -> usize {
        match self {
            Self::TripartiteEntropic | Self::TripartiteMermin => 3,
            Self::BipartiteBc => 2,
        }
    }
}

/// A base state plus the measurement settings for one family.
///
/// Tripartite settings are ordered (A₁, A₂, B₁, B₂, C₁, C₂); bipartite
/// settings are ordered (A, A′, B, B′).
#[derive(Debug, Clone)]
pub struct Scenario {
    family: ScenarioFamily,
    base_state: DensityMatrix,
    settings: Vec<BlochObservable>,
}

impl Scenario {
    pub fn new(
        family: ScenarioFamily,
        base_state: DensityMatrix,
        settings: Vec<BlochObservable>,
    ) -> Result<Self> {
        if settings.len() != family.settings_len() {
            return Err(Error::LengthMismatch {
                expected: family.settings_len(),
                got: settings.len(),
            });
        }
        if base_state.n_qubits() != family.n_qubits() {
            return Err(Error::ArityMismatch {
                expected: family.n_qubits(),
                got: base_state.n_qubits(),
            });
        }
        Ok(Self {
            family,
            base_state,
            settings,
        })
    }

    pub fn family(&self) -> ScenarioFamily {
        self.family
    }

    pub fn base_state(&self) -> &DensityMatrix {
        &self.base_state
    }

    pub fn settings(&self) -> &[BlochObservable] {
        &self.settings
    }

    fn sextet(&self) -> SettingSextet {
        [
            self.settings[0],
            self.settings[1],
            self.settings[2],
            self.settings[3],
            self.settings[4],
            self.settings[5],
        ]
    }

    /// GHZ state with the maximal-violation entropic preset angles.
    pub fn entropic3_preset() -> Self {
        Self::new(
            ScenarioFamily::TripartiteEntropic,
            ghz_state(3).unwrap(),
            preset_settings().to_vec(),
        )
        .unwrap()
    }

    /// GHZ state with X/Y settings, where the Mermin combination
    /// reaches its algebraic maximum M = 4.
    pub fn mermin3_preset() -> Self {
        Self::new(
            ScenarioFamily::TripartiteMermin,
            ghz_state(3).unwrap(),
            xy_symmetric_settings(0.0, std::f64::consts::FRAC_PI_2).to_vec(),
        )
        .unwrap()
    }

    /// Singlet with the chained coplanar settings (0, 2θ, 3θ, θ) at the
    /// given θ.
    pub fn bc2_chained(theta: f64) -> Self {
        Self::new(
            ScenarioFamily::BipartiteBc,
            singlet_state(),
            chained_settings(theta),
        )
        .unwrap()
    }
}

/// Chained coplanar bipartite settings (A, A′, B, B′) = XY angles
/// (0, 2θ, 3θ, θ).
fn chained_settings(theta: f64) -> Vec<BlochObservable> {
    vec![
        xy_observable(0.0),
        xy_observable(2.0 * theta),
        xy_observable(3.0 * theta),
        xy_observable(theta),
    ]
}

/// Outcome of a threshold bisection.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThresholdResult {
    /// Estimated noise fraction where the violation vanishes.
    pub p_star: f64,
    /// Number of bisection steps performed.
    pub iterations: u32,
    /// Width of the final bracket (≤ the requested tolerance).
    pub bracket_width: f64,
    /// Margin evaluated at `p_star`.
    pub margin_at_p_star: f64,
}

/// Full inequality report of the scenario at noise fraction `p`.
pub fn report_at(scenario: &Scenario, p: f64) -> Result<InequalityReport> {
    let state = crate::qstate::noisy_state(&scenario.base_state, p)?;
    match scenario.family {
        ScenarioFamily::TripartiteEntropic => entropic_mermin_report(&state, &scenario.sextet()),
        ScenarioFamily::TripartiteMermin => {
            Ok(mermin_correlation_report(&state, &scenario.sextet())?.report)
        }
        ScenarioFamily::BipartiteBc => {
            let s = &scenario.settings;
            bc_inequality_report(&state, s[0], s[1], s[2], s[3])
        }
    }
}

/// Violation margin of the scenario's inequality at noise fraction `p`.
pub fn margin_at(scenario: &Scenario, p: f64) -> Result<f64> {
    Ok(report_at(scenario, p)?.margin)
}

/// Number of evenly spaced samples used to check that the margin is
/// monotone in p before bisecting.
const MONOTONE_SAMPLES: usize = 16;

/// Bisects for the smallest noise fraction at which the violation
/// vanishes (margin ≥ −1e-10), to bracket width ≤ `tol`.
///
/// Requires a violation at p = 0 and none at p = 1, and verifies on a
/// 16-point sample that the margin is non-decreasing in p; a
/// non-monotone profile is reported as an error rather than silently
/// bisected.
pub fn find_threshold(scenario: &Scenario, tol: f64) -> Result<ThresholdResult> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::OutOfRange {
            name: "tolerance",
            value: tol,
            min: f64::MIN_POSITIVE,
            max: 1.0,
        });
    }
    let samples: Vec<f64> = (0..MONOTONE_SAMPLES)
        .map(|i| i as f64 / (MONOTONE_SAMPLES - 1) as f64)
        .collect();
    let margins = par_map(&samples, 1, |&p| margin_at(scenario, p))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    if margins[0] >= -VIOLATION_TOL {
        return Err(Error::NoThreshold(format!(
            "no violation at p = 0 (margin = {:.6})",
            margins[0]
        )));
    }
    if *margins.last().unwrap() < 0.0 {
        return Err(Error::NoThreshold(format!(
            "still violated at p = 1 (margin = {:.6})",
            margins.last().unwrap()
        )));
    }
    for w in margins.windows(2) {
        if w[1] < w[0] - 1e-9 {
            return Err(Error::NonMonotone(format!(
                "margin decreases from {:.6} to {:.6} as p grows",
                w[0], w[1]
            )));
        }
    }

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut iterations = 0u32;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if margin_at(scenario, mid)? < -VIOLATION_TOL {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let p_star = 0.5 * (lo + hi);
    Ok(ThresholdResult {
        p_star,
        iterations,
        bracket_width: hi - lo,
        margin_at_p_star: margin_at(scenario, p_star)?,
    })
}

/// Angle-space parameterizations searched by [`optimize_settings`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchSpace {
    /// Tripartite: two XY angles (θ₁ for all first settings, θ₂ for all
    /// second settings). Bipartite: one chained angle θ giving settings
    /// (0, 2θ, 3θ, θ).
    Symmetric,
    /// One free XY angle per observable (6 or 4 parameters).
    FreeXy,
    /// One free Bloch direction per observable, parameterized by
    /// spherical (polar, azimuth) pairs (12 or 8 parameters).
    FreeBloch,
}

/// Best scenario found by the settings search.
#[derive(Debug, Clone)]
pub struct OptimizedScenario {
    pub scenario: Scenario,
    /// Margin of the returned scenario at the requested noise fraction.
    pub margin: f64,
    /// The parameter vector realizing it, in the search space's layout.
    pub params: Vec<f64>,
    pub space: SearchSpace,
}

fn settings_from_params(
    family: ScenarioFamily,
    space: SearchSpace,
    params: &[f64],
) -> Vec<BlochObservable> {
    match (space, family.settings_len()) {
        (SearchSpace::Symmetric, 6) => xy_symmetric_settings(params[0], params[1]).to_vec(),
        (SearchSpace::Symmetric, _) => chained_settings(params[0]),
        (SearchSpace::FreeXy, _) => params.iter().map(|&t| xy_observable(t)).collect(),
        (SearchSpace::FreeBloch, _) => params
            .chunks_exact(2)
            .map(|pa| {
                let (polar, azim) = (pa[0], pa[1]);
                BlochObservable::new([
                    polar.sin() * azim.cos(),
                    polar.sin() * azim.sin(),
                    polar.cos(),
                ])
                .expect("spherical parameterization is always unit-norm")
            })
            .collect(),
    }
}

fn param_count(family: ScenarioFamily, space: SearchSpace) -> usize {
    let k = family.settings_len();
    match space {
        SearchSpace::Symmetric => {
            if k == 6 {
                2
            } else {
                1
            }
        }
        SearchSpace::FreeXy => k,
        SearchSpace::FreeBloch => 2 * k,
    }
}

/// Derivative-free Nelder–Mead minimizer. Returns the best vertex once
/// the simplex diameter falls below [`SIMPLEX_TOL`] (or an iteration
/// cap is hit). Deterministic for fixed inputs.
fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    step: f64,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += step;
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let max_iter = 800 * n.max(1);
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .map(|(v, _)| {
                v.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if diameter < SIMPLEX_TOL {
            break;
        }

        let worst = simplex[n].clone();
        let second_worst = simplex[n - 1].1;
        let best = simplex[0].1;
        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let blend = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = blend(1.0);
        let fr = f(&reflected);
        if fr < best {
            let expanded = blend(2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < second_worst {
            simplex[n] = (reflected, fr);
        } else {
            let contracted = if fr < worst.1 { blend(0.5) } else { blend(-0.5) };
            let fc = f(&contracted);
            if fc < worst.1.min(fr) {
                simplex[n] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let anchor = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let v: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&anchor)
                        .map(|(x, a)| a + 0.5 * (x - a))
                        .collect();
                    let fv = f(&v);
                    *entry = (v, fv);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Searches the default space for the settings with the most negative
/// margin at noise fraction `p`: a coarse π/24 grid (symmetric
/// parameterization), then Nelder–Mead refinement with `restarts`
/// deterministic perturbed restarts.
///
/// For the bipartite family, if the coplanar chained optimum fails to
/// violate, the search widens to fully free Bloch directions.
pub fn optimize_settings(
    family: ScenarioFamily,
    state: &DensityMatrix,
    p: f64,
    restarts: usize,
) -> Result<OptimizedScenario> {
    let result = optimize_settings_in(family, state, p, restarts, SearchSpace::Symmetric)?;
    if family == ScenarioFamily::BipartiteBc && result.margin >= -VIOLATION_TOL {
        let free = optimize_settings_in(family, state, p, restarts, SearchSpace::FreeBloch)?;
        if free.margin < result.margin {
            return Ok(free);
        }
    }
    Ok(result)
}

/// [`optimize_settings`] over an explicit search space.
pub fn optimize_settings_in(
    family: ScenarioFamily,
    state: &DensityMatrix,
    p: f64,
    restarts: usize,
    space: SearchSpace,
) -> Result<OptimizedScenario> {
    if restarts < 1 {
        return Err(Error::OutOfRange {
            name: "restarts",
            value: restarts as f64,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    // Validate state/family compatibility once up front.
    Scenario::new(
        family,
        state.clone(),
        settings_from_params(family, space, &vec![0.1; param_count(family, space)]),
    )?;

    let eval = |params: &[f64]| -> f64 {
        let scenario = Scenario::new(
            family,
            state.clone(),
            settings_from_params(family, space, params),
        )
        .expect("validated family/state pair");
        margin_at(&scenario, p).expect("validated noise fraction")
    };

    // Coarse grid in the symmetric space; free spaces start from the
    // symmetric optimum since a grid over 4+ angles is impractical.
    let mut best: (Vec<f64>, f64) = match space {
        SearchSpace::Symmetric if family.settings_len() == 6 => {
            let grid: Vec<[f64; 2]> = (-24..24)
                .flat_map(|i| (-24..24).map(move |j| [i as f64 * GRID_STEP, j as f64 * GRID_STEP]))
                .collect();
            let margins = par_map(&grid, 1, |pt| eval(pt));
            let (idx, m) = margins
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap();
            (grid[idx].to_vec(), *m)
        }
        SearchSpace::Symmetric => {
            let grid: Vec<f64> = (0..24).map(|i| i as f64 * GRID_STEP).collect();
            let (pt, m) = grid
                .iter()
                .map(|&t| (t, eval(&[t])))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            (vec![pt], m)
        }
        _ => {
            let symmetric = optimize_settings_in(family, state, p, 1, SearchSpace::Symmetric)?;
            let start = embed_params(family, space, &symmetric.params);
            let m = eval(&start);
            (start, m)
        }
    };

    let mut eval_mut = eval;
    for r in 0..restarts {
        let mut rng = XorShift64Star::stream(OPTIMIZER_SEED, r as u64);
        let start: Vec<f64> = best
            .0
            .iter()
            .map(|&x| {
                if r == 0 {
                    x
                } else {
                    x + rng.next_range(-GRID_STEP, GRID_STEP)
                }
            })
            .collect();
        let (params, margin) = nelder_mead(&mut eval_mut, &start, GRID_STEP / 2.0);
        if margin < best.1 {
            best = (params, margin);
        }
    }

    let scenario = Scenario::new(
        family,
        state.clone(),
        settings_from_params(family, space, &best.0),
    )?;
    Ok(OptimizedScenario {
        scenario,
        margin: best.1,
        params: best.0,
        space,
    })
}

/// Lifts symmetric-space parameters into a richer space's layout.
fn embed_params(family: ScenarioFamily, space: SearchSpace, symmetric: &[f64]) -> Vec<f64> {
    let xy_angles: Vec<f64> = if family.settings_len() == 6 {
        let (t1, t2) = (symmetric[0], symmetric[1]);
        vec![t1, t2, t1, t2, t1, t2]
    } else {
        let t = symmetric[0];
        vec![0.0, 2.0 * t, 3.0 * t, t]
    };
    match space {
        SearchSpace::FreeXy => xy_angles,
        SearchSpace::FreeBloch => xy_angles
            .iter()
            .flat_map(|&t| [std::f64::consts::FRAC_PI_2, t])
            .collect(),
        SearchSpace::Symmetric => symmetric.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infometrics::binary_entropy;
    use crate::qstate::maximally_mixed;

    #[test]
    fn entropic_margin_closed_form() {
        // With the preset angles, lhs stays at 1 bit and each rhs term is
        // h(p/2), so margin(p) = 3·h(p/2) − 1.
        let scenario = Scenario::entropic3_preset();
        assert!((margin_at(&scenario, 0.0).unwrap() + 1.0).abs() < 1e-10);
        assert!((margin_at(&scenario, 1.0).unwrap() - 2.0).abs() < 1e-10);
        for i in 0..20 {
            let p = i as f64 / 19.0;
            let want = 3.0 * binary_entropy(p / 2.0).unwrap() - 1.0;
            let got = margin_at(&scenario, p).unwrap();
            assert!((got - want).abs() < 1e-10, "p = {}", p);
        }
    }

    #[test]
    fn margin_is_continuous_in_p() {
        // A 1e-6 step in p moves the margin by at most 1e-3 bits, even
        // near p = 0 where the slope of h(p/2) is steepest.
        let scenario = Scenario::entropic3_preset();
        for i in 0..20 {
            let p = i as f64 * 0.05;
            let m = margin_at(&scenario, p).unwrap();
            let m_eps = margin_at(&scenario, p + 1e-6).unwrap();
            assert!((m_eps - m).abs() <= 1e-3, "jump at p = {}", p);
        }
    }

    #[test]
    fn margin_rejects_bad_noise_fraction() {
        let scenario = Scenario::entropic3_preset();
        assert!(margin_at(&scenario, -0.01).is_err());
        assert!(margin_at(&scenario, 1.01).is_err());
    }

    #[test]
    fn entropic_threshold_is_near_twelve_percent() {
        let result = find_threshold(&Scenario::entropic3_preset(), 1e-4).unwrap();
        assert!(
            (0.121..=0.125).contains(&result.p_star),
            "p* = {}",
            result.p_star
        );
        assert!(result.bracket_width <= 1e-4);
        // The crossing solves 3·h(p/2) = 1.
        let crossing = 3.0 * binary_entropy(result.p_star / 2.0).unwrap();
        assert!((crossing - 1.0).abs() < 1e-3, "3h(p*/2) = {}", crossing);
        // Sanity on the bracket: violation below, none above.
        assert!(margin_at(&Scenario::entropic3_preset(), result.p_star - 1e-4).unwrap() < 0.0);
        assert!(
            margin_at(&Scenario::entropic3_preset(), result.p_star + 1e-4).unwrap() > -1e-10
        );
    }

    #[test]
    fn mermin_threshold_is_half() {
        let result = find_threshold(&Scenario::mermin3_preset(), 1e-4).unwrap();
        assert!((result.p_star - 0.5).abs() < 1e-3, "p* = {}", result.p_star);
    }

    #[test]
    fn threshold_is_deterministic() {
        let a = find_threshold(&Scenario::entropic3_preset(), 1e-4).unwrap();
        let b = find_threshold(&Scenario::entropic3_preset(), 1e-4).unwrap();
        assert_eq!(a.p_star.to_bits(), b.p_star.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn no_threshold_without_violation() {
        // All-X settings give margin 0 at p = 0: no violation to lose.
        let x = crate::qstate::BlochObservable::x();
        let scenario = Scenario::new(
            ScenarioFamily::TripartiteEntropic,
            ghz_state(3).unwrap(),
            vec![x; 6],
        )
        .unwrap();
        assert!(matches!(
            find_threshold(&scenario, 1e-4),
            Err(Error::NoThreshold(_))
        ));
    }

    #[test]
    fn optimizer_recovers_maximal_entropic_violation() {
        let best = optimize_settings(
            ScenarioFamily::TripartiteEntropic,
            &ghz_state(3).unwrap(),
            0.0,
            2,
        )
        .unwrap();
        assert!((best.margin + 1.0).abs() < 1e-6, "margin = {}", best.margin);
        // The refined scenario re-evaluates to the same margin.
        assert!((margin_at(&best.scenario, 0.0).unwrap() - best.margin).abs() < 1e-12);
    }

    #[test]
    fn optimizer_recovers_maximal_mermin_value() {
        let best = optimize_settings(
            ScenarioFamily::TripartiteMermin,
            &ghz_state(3).unwrap(),
            0.0,
            2,
        )
        .unwrap();
        // margin = 2 − M, so M = 4 corresponds to margin = −2.
        assert!((best.margin + 2.0).abs() < 1e-6, "margin = {}", best.margin);
    }

    #[test]
    fn optimizer_finds_bipartite_violation() {
        let best = optimize_settings(ScenarioFamily::BipartiteBc, &singlet_state(), 0.0, 2)
            .unwrap();
        assert!(best.margin < -0.4, "margin = {}", best.margin);
        assert_eq!(best.space, SearchSpace::Symmetric);
        // Optimal chained angle sits near 17.5 degrees.
        let theta = best.params[0];
        assert!((theta - 0.305).abs() < 0.02, "theta = {}", theta);
    }

    #[test]
    fn bipartite_threshold_band() {
        let best = optimize_settings(ScenarioFamily::BipartiteBc, &singlet_state(), 0.0, 1)
            .unwrap();
        let result = find_threshold(&best.scenario, 1e-4).unwrap();
        assert!(
            (0.03..=0.05).contains(&result.p_star),
            "p* = {}",
            result.p_star
        );
    }

    #[test]
    fn optimizer_is_deterministic_and_validates_restarts() {
        let a = optimize_settings(ScenarioFamily::TripartiteMermin, &ghz_state(3).unwrap(), 0.1, 3)
            .unwrap();
        let b = optimize_settings(ScenarioFamily::TripartiteMermin, &ghz_state(3).unwrap(), 0.1, 3)
            .unwrap();
        assert_eq!(a.margin.to_bits(), b.margin.to_bits());
        assert_eq!(a.params, b.params);
        assert!(optimize_settings(
            ScenarioFamily::TripartiteMermin,
            &ghz_state(3).unwrap(),
            0.1,
            0
        )
        .is_err());
    }

    #[test]
    fn free_spaces_do_not_regress_below_symmetric() {
        let sym = optimize_settings_in(
            ScenarioFamily::TripartiteEntropic,
            &ghz_state(3).unwrap(),
            0.05,
            1,
            SearchSpace::Symmetric,
        )
        .unwrap();
        let free = optimize_settings_in(
            ScenarioFamily::TripartiteEntropic,
            &ghz_state(3).unwrap(),
            0.05,
            1,
            SearchSpace::FreeXy,
        )
        .unwrap();
        assert!(free.margin <= sym.margin + 1e-9);
    }

    #[test]
    fn scenario_validation() {
        let x = crate::qstate::BlochObservable::x();
        assert!(Scenario::new(
            ScenarioFamily::TripartiteEntropic,
            ghz_state(3).unwrap(),
            vec![x; 4]
        )
        .is_err());
        assert!(Scenario::new(ScenarioFamily::BipartiteBc, ghz_state(3).unwrap(), vec![x; 4])
            .is_err());
        assert!(
            Scenario::new(ScenarioFamily::BipartiteBc, singlet_state(), vec![x; 4]).is_ok()
        );
        let mixed2 = maximally_mixed(2).unwrap();
        assert!(Scenario::new(ScenarioFamily::BipartiteBc, mixed2, vec![x; 4]).is_ok());
    }
}
