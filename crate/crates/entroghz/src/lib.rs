//! Entropy-based multipartite correlation tests for ±1 observables.
//!
//! The crate is organized around one idea: the Shannon entropy of a
//! product of ±1 observables behaves like a distance, and local hidden
//! variable models bound how those distances can combine. Quantum states
//! break the bound, and the gap survives a quantified amount of white
//! noise.
//!
//! * [`qstate`] — density matrices, Bloch-vector observables, and exact
//!   projective measurement statistics for 2- and 3-qubit states.
//! * [`infometrics`] — Shannon entropies and the entropic distances
//!   (product distance, multi-party spread, conditional-entropy distance).
//! * [`inequalities`] — the tripartite entropic inequality, its
//!   sign-contradiction limit, and the bipartite chained variant, each
//!   packaged as a serializable report.
//! * [`noise`] — white-noise robustness: margins as a function of the
//!   noise fraction, bisection for critical thresholds, and measurement
//!   optimization.
//! * [`bitstream`] — an operational view: sampled ±1 outcome strings,
//!   XOR combinations, and two self-contained lossless codecs whose
//!   output lengths witness the entropic inequality empirically.
//! * [`lhv`] — explicit classical models: joint distributions over all
//!   observables at once, deterministic strategies, and a linear
//!   feasibility test showing no such model reproduces the quantum
//!   statistics.
//! * [`verify`] — self-check suites over randomized inputs, used by the
//!   CLI and by the acceptance tests.

pub mod bitstream;
pub mod complex;
pub mod infometrics;
pub mod inequalities;
pub mod lhv;
pub mod noise;
pub mod qstate;
pub mod rng;
pub mod util;
pub mod verify;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Matrix or vector dimensions do not line up.
    #[error("shape error: {0}")]
    Shape(String),

    /// The requested number of parties/qubits is outside the supported set.
    #[error("unsupported number of parties: {0}")]
    UnsupportedArity(usize),

    /// Party counts of two objects that must agree do not.
    #[error("arity mismatch: expected {expected} parties, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// A matrix fails the density-matrix contract (Hermitian, unit
    /// trace, positive semidefinite).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// An observable fails the ±1 contract (unit Bloch vector).
    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    /// A probability is negative beyond numerical tolerance.
    #[error("invalid probability {0}")]
    InvalidProbability(f64),

    /// Probabilities do not sum to 1 within tolerance.
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),

    /// A scalar parameter is outside its documented range.
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// An index does not address an existing element.
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// A party subset that must be non-empty is empty.
    #[error("empty party subset")]
    EmptySubset,

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// An encoded blob cannot be decoded.
    #[error("decode error: {0}")]
    Decode(String),

    /// A codec name is not recognized.
    #[error("unknown codec: {0}")]
    UnknownCodec(String),

    /// Threshold search found no sign change in the scanned interval.
    #[error("no threshold: {0}")]
    NoThreshold(String),

    /// The margin curve is not monotone where the search requires it.
    #[error("margin not monotone: {0}")]
    NonMonotone(String),

    /// Context marginals of a behavior disagree, so no joint model is
    /// even well-posed.
    #[error("no-signaling violated: {0}")]
    NoSignaling(String),

    /// Underlying file or stream I/O failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
