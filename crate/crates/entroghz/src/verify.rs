//! Randomized invariant suites.
//!
//! Each suite fuzzes one family of guarantees with deterministic seeds
//! and reports how many cases failed. The suites back the CLI's
//! `verify` command; they are intentionally redundant with the unit
//! tests so a shipped binary can re-certify itself without a test
//! harness.
//!
//! Available suites:
//! * `metric` — distance axioms (identity, non-negativity, symmetry,
//!   triangle) on random three-variable ±1 joints,
//! * `associativity` — the three-way product entropy equals the
//!   pairwise distance under every grouping,
//! * `chain` — both chaining steps of the tripartite bound plus their
//!   sum on random classical joints,
//! * `lhv` — the tripartite bound itself on random classical joints,
//!   the exhaustive product check over all 64 deterministic strategies,
//!   and spot feasibility round-trips through the linear solver,
//! * `codec` — lossless round-trips of both codecs on fuzzed inputs,
//!   degenerate lengths included,
//! * `sign-ghz` — the sign-based contradiction on the GHZ state.

use serde::Serialize;

use crate::bitstream::{block_huffman_compress, rle_elias_compress, BitString};
use crate::infometrics::{multi_delta, product_distance};
use crate::inequalities::sign_ghz_check;
use crate::lhv::{
    classical_entropic_mermin, derivation_chain_margins, lhv_feasibility, random_joint,
    strategy_product_check, DeterministicStrategy,
};
use crate::qstate::{ghz_state, JointOutcomeDistribution};
use crate::rng::XorShift64Star;
use crate::util::par_map;
use crate::{Error, Result};

/// Default number of fuzzed cases per suite.
pub const DEFAULT_SAMPLES: usize = 1000;

/// All suite names, in canonical execution order.
pub const SUITE_NAMES: [&str; 6] = [
    "metric",
    "associativity",
    "chain",
    "lhv",
    "codec",
    "sign-ghz",
];

/// Most failure details kept per suite (the count is always exact).
const MAX_DETAILS: usize = 8;

const METRIC_SEED: u64 = 0x6d65_7472_6963;
const ASSOC_SEED: u64 = 0x6173_736f_63;
const CODEC_SEED: u64 = 0x636f_6465_63;

/// Outcome of one invariant suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    /// Suite name as accepted by `run_suite`.
    pub name: String,
    /// Number of fuzzed cases executed.
    pub cases: usize,
    /// Number of failing cases.
    pub failures: usize,
    /// Messages for the first few failures.
    pub details: Vec<String>,
}

impl SuiteReport {
    fn collect(name: &str, cases: usize, mut details: Vec<String>) -> Self {
        let failures = details.len();
        if details.len() > MAX_DETAILS {
            let hidden = details.len() - MAX_DETAILS;
            details.truncate(MAX_DETAILS);
            details.push(format!("… and {} more", hidden));
        }
        Self {
            name: name.to_string(),
            cases,
            failures,
            details,
        }
    }

    /// True when every case passed.
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs one suite by name with `samples` fuzz cases across `jobs`
/// worker threads.
pub fn run_suite(name: &str, samples: usize, jobs: usize) -> Result<SuiteReport> {
    match name {
        "metric" => Ok(metric_suite(samples, jobs)),
        "associativity" => Ok(associativity_suite(samples, jobs)),
        "chain" => Ok(chain_suite(samples, jobs)),
        "lhv" => lhv_suite(samples, jobs),
        "codec" => Ok(codec_suite(samples, jobs)),
        "sign-ghz" => sign_ghz_suite(),
        other => Err(Error::Shape(format!(
            "unknown suite '{}' (expected one of {})",
            other,
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Runs every suite in canonical order.
pub fn run_all(samples: usize, jobs: usize) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, samples, jobs))
        .collect()
}

/// A random three-variable ±1 joint from the flat Dirichlet.
fn random_three_party(master: u64, id: u64) -> JointOutcomeDistribution {
    let mut rng = XorShift64Star::stream(master, id);
    let mut weights: Vec<f64> = (0..8).map(|_| rng.next_exp()).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    JointOutcomeDistribution::new(3, weights).expect("normalized weights")
}

/// Joint distribution of the two product variables over `s1` and `s2`.
fn pair_product_distribution(
    joint: &JointOutcomeDistribution,
    s1: &[usize],
    s2: &[usize],
) -> Result<JointOutcomeDistribution> {
    let mut cells = vec![0.0f64; 4];
    for (idx, &p) in joint.probabilities().iter().enumerate() {
        let sign = |parties: &[usize]| -> i8 {
            parties.iter().map(|&q| joint.outcome(idx, q)).product()
        };
        let hi = usize::from(sign(s1) == -1);
        let lo = usize::from(sign(s2) == -1);
        cells[(hi << 1) | lo] += p;
    }
    JointOutcomeDistribution::new(2, cells)
}

fn metric_suite(samples: usize, jobs: usize) -> SuiteReport {
    let seeds: Vec<u64> = (0..samples as u64).collect();
    let failures: Vec<String> = par_map(&seeds, jobs, |&seed| {
        let mut bad = Vec::new();
        let joint = random_three_party(METRIC_SEED, seed);
        // Identity: the distance from a variable to a perfectly
        // correlated copy of itself vanishes.
        for v in 0..3 {
            let p = joint.marginal(&[v]).unwrap().probabilities()[0];
            let dup = JointOutcomeDistribution::new(2, vec![p, 0.0, 0.0, 1.0 - p]).unwrap();
            let d = product_distance(&dup, 0, 1).unwrap().bits;
            if d.abs() > 1e-12 {
                bad.push(format!("seed {}: d(X,X) = {:.3e} for variable {}", seed, d, v));
            }
        }
        // Non-negativity and symmetry on every pair.
        let mut dist = [[0.0f64; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    dist[a][b] = product_distance(&joint, a, b).unwrap().bits;
                }
            }
        }
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if dist[a][b] < 0.0 {
                bad.push(format!("seed {}: negative distance d({},{})", seed, a, b));
            }
            if (dist[a][b] - dist[b][a]).abs() > 1e-12 {
                bad.push(format!("seed {}: asymmetry on pair ({},{})", seed, a, b));
            }
        }
        // Triangle inequality through every middle variable.
        for (a, mid, b) in [(0, 2, 1), (0, 1, 2), (1, 0, 2)] {
            let slack = dist[a][mid] + dist[mid][b] - dist[a][b];
            if slack < -1e-12 {
                bad.push(format!(
                    "seed {}: triangle d({a},{b}) > d({a},{mid}) + d({mid},{b}) by {:.3e}",
                    seed, -slack
                ));
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    SuiteReport::collect("metric", samples, failures)
}

fn associativity_suite(samples: usize, jobs: usize) -> SuiteReport {
    let seeds: Vec<u64> = (0..samples as u64).collect();
    let failures: Vec<String> = par_map(&seeds, jobs, |&seed| {
        let mut bad = Vec::new();
        let joint = random_three_party(ASSOC_SEED, seed);
        let delta = multi_delta(&joint, &[0, 1, 2]).unwrap().bits;
        for (single, pair) in [(0usize, [1usize, 2]), (1, [0, 2]), (2, [0, 1])] {
            let grouped = pair_product_distribution(&joint, &[single], &pair).unwrap();
            let d = product_distance(&grouped, 0, 1).unwrap().bits;
            if (d - delta).abs() > 1e-12 {
                bad.push(format!(
                    "seed {}: δ = {:.15} but d(X{}, product of {:?}) = {:.15}",
                    seed, delta, single, pair, d
                ));
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    SuiteReport::collect("associativity", samples, failures)
}

fn chain_suite(samples: usize, jobs: usize) -> SuiteReport {
    let seeds: Vec<u64> = (0..samples as u64).collect();
    let failures: Vec<String> = par_map(&seeds, jobs, |&seed| {
        let mut bad = Vec::new();
        let joint = random_joint(seed);
        let margins = derivation_chain_margins(&joint).unwrap();
        if margins.split_margin < -1e-10 {
            bad.push(format!("seed {}: split step margin {:.3e}", seed, margins.split_margin));
        }
        if margins.bridge_margin < -1e-10 {
            bad.push(format!("seed {}: bridge step margin {:.3e}", seed, margins.bridge_margin));
        }
        let report = classical_entropic_mermin(&joint).unwrap();
        if (margins.total_margin - report.margin).abs() > 1e-12 {
            bad.push(format!(
                "seed {}: chain total {:.15} differs from report margin {:.15}",
                seed, margins.total_margin, report.margin
            ));
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    SuiteReport::collect("chain", samples, failures)
}

fn lhv_suite(samples: usize, jobs: usize) -> Result<SuiteReport> {
    let mut failures: Vec<String> = Vec::new();
    // Exhaustive: every deterministic strategy multiplies to +1.
    for index in 0..64 {
        let check = strategy_product_check(&DeterministicStrategy::from_index(index)?);
        if check.product != 1 {
            failures.push(format!("strategy {} has product {}", index, check.product));
        }
    }
    let seeds: Vec<u64> = (0..samples as u64).collect();
    let fuzz: Vec<String> = par_map(&seeds, jobs, |&seed| {
        let mut bad = Vec::new();
        let joint = random_joint(seed);
        let report = classical_entropic_mermin(&joint).unwrap();
        if report.margin < -1e-10 || report.violated {
            bad.push(format!(
                "seed {}: classical joint violates the bound (margin {:.3e})",
                seed, report.margin
            ));
        }
        // Spot check: a classical joint's own context statistics must be
        // recognized as feasible by the solver.
        if seed % 250 == 0 {
            let contexts = [
                joint.context_marginal(0).unwrap(),
                joint.context_marginal(1).unwrap(),
                joint.context_marginal(2).unwrap(),
                joint.context_marginal(3).unwrap(),
            ];
            match lhv_feasibility(&contexts) {
                Ok(result) if result.is_feasible() => {}
                Ok(_) => bad.push(format!("seed {}: own marginals reported infeasible", seed)),
                Err(e) => bad.push(format!("seed {}: solver error {}", seed, e)),
            }
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    failures.extend(fuzz);
    Ok(SuiteReport::collect("lhv", samples + 64, failures))
}

fn codec_suite(samples: usize, jobs: usize) -> SuiteReport {
    let seeds: Vec<u64> = (0..samples as u64).collect();
    let failures: Vec<String> = par_map(&seeds, jobs, |&seed| {
        let mut bad = Vec::new();
        let input = fuzz_input(seed);
        match rle_elias_compress(&input) {
            Ok((report, _)) if report.lossless_verified => {}
            Ok(_) => bad.push(format!("seed {}: rle-elias round trip mismatch", seed)),
            Err(e) => bad.push(format!("seed {}: rle-elias error {}", seed, e)),
        }
        let block_bits = if seed % 2 == 0 { 8 } else { 4 };
        match block_huffman_compress(&input, block_bits) {
            Ok((report, _)) if report.lossless_verified => {}
            Ok(_) => bad.push(format!("seed {}: block-huffman round trip mismatch", seed)),
            Err(e) => bad.push(format!("seed {}: block-huffman error {}", seed, e)),
        }
        bad
    })
    .into_iter()
    .flatten()
    .collect();
    SuiteReport::collect("codec", samples, failures)
}

/// Deterministic fuzz inputs: a fixed menu of degenerate strings first,
/// then random lengths in 0–4096 with random bias.
fn fuzz_input(seed: u64) -> BitString {
    match seed {
        0 => BitString::new(),
        1 => BitString::from_bits(&[false]),
        2 => BitString::from_bits(&[true]),
        3 => BitString::repeated(false, 64),
        4 => BitString::repeated(true, 64),
        5 => BitString::repeated(false, 4096),
        6 => BitString::repeated(true, 4096),
        7 => {
            let mut s = BitString::new();
            for i in 0..1024 {
                s.push(i % 2 == 1);
            }
            s
        }
        _ => {
            let mut rng = XorShift64Star::stream(CODEC_SEED, seed);
            let len = (rng.next_u64() % 4097) as usize;
            let bias = rng.next_f64();
            let mut s = BitString::new();
            for _ in 0..len {
                s.push(rng.next_f64() < bias);
            }
            s
        }
    }
}

fn sign_ghz_suite() -> Result<SuiteReport> {
    let state = ghz_state(3)?;
    let check = sign_ghz_check(&state)?;
    let mut failures = Vec::new();
    let expectations = [
        ("YYX", check.e_yyx, -1.0),
        ("YXY", check.e_yxy, -1.0),
        ("XYY", check.e_xyy, -1.0),
        ("XXX", check.e_xxx, 1.0),
    ];
    for (label, value, want) in expectations {
        if (value - want).abs() > 1e-10 {
            failures.push(format!("⟨{}⟩ = {:.12}, expected {}", label, value, want));
        }
    }
    if !check.paradoxical {
        failures.push("sign contradiction flag not set".to_string());
    }
    Ok(SuiteReport::collect("sign-ghz", 5, failures))
}

/// Spot check that quantum statistics at the preset angles defeat the
/// feasibility solver while heavily noisy ones do not — used by tests;
/// the CLI exposes the pieces directly.
#[cfg(test)]
fn quantum_feasibility_flips() -> Result<(bool, bool)> {
    use crate::inequalities::preset_settings;
    use crate::lhv::context_distributions;
    use crate::qstate::noisy_state;
    let ghz = ghz_state(3)?;
    let pure = lhv_feasibility(&context_distributions(&ghz, &preset_settings())?)?;
    let noisy = noisy_state(&ghz, 0.9)?;
    let deep = lhv_feasibility(&context_distributions(&noisy, &preset_settings())?)?;
    Ok((pure.is_feasible(), deep.is_feasible()))
}
