//! Operational compression test.
//!
//! Samples i.i.d. measurement rounds for the four contexts of the
//! tripartite inequality, forms per-context XOR bit strings, compresses
//! them with self-contained lossless codecs, and compares compressed
//! sizes: the XOR string of the (1,1,1) context against the sum over
//! the three mixed contexts. On states whose mixed-context products are
//! (near-)deterministic, the right-hand sides compress to O(log n) bits
//! while the left-hand side stays incompressible, so the size
//! inequality fails — a classical impossibility made measurable in
//! bits.
//!
//! Both codecs are deterministic and self-contained so that reported
//! sizes are bit-exact and platform-independent; external compressors
//! (gzip etc.) are deliberately not used.

pub mod bits;
pub mod huffman;
pub mod rle;

pub use bits::{xor_strings, BitReader, BitString, BitWriter};
pub use huffman::{huffman_decode, huffman_encode, HUFFMAN_HEADER_BITS, HUFFMAN_VERSION};
pub use rle::{rle_decode, rle_encode, RLE_HEADER_BITS, RLE_VERSION};

use serde::Serialize;

use crate::inequalities::{context, context_label, InequalityReport, SettingSextet, CONTEXTS};
use crate::qstate::{joint_outcome_distribution, DensityMatrix};
use crate::rng::XorShift64Star;
use crate::{Error, Result};

/// Default block width for the block-Huffman codec.
pub const DEFAULT_BLOCK_BITS: u8 = 8;

/// Multiplier in the logarithmic side condition: a right-hand-side
/// string counts as "compressed away" when its blob is at most
/// `64·log₂ n` bits. The constant dominates every header cost.
pub const SIDE_CONDITION_FACTOR: f64 = 64.0;

/// Outcome of one lossless compression run.
#[derive(Debug, Clone, Serialize)]
pub struct CompressionReport {
    /// Codec name (`rle-elias` or `block-huffman`).
    pub codec: String,
    /// Size of the input in bits.
    pub input_bits: usize,
    /// Size of the compressed blob in bits, including all headers.
    pub output_bits: usize,
    /// Whether decompressing the blob reproduced the input bit-exactly.
    pub lossless_verified: bool,
}

/// The self-contained codecs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Codec {
    /// Run-length encoding with Elias-gamma coded run lengths.
    RleElias,
    /// Canonical Huffman over fixed-width blocks (8-bit blocks).
    BlockHuffman,
}

impl Codec {
    /// Parses a codec name as used on the command line.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "rle-elias" => Ok(Codec::RleElias),
            "block-huffman" => Ok(Codec::BlockHuffman),
            other => Err(Error::UnknownCodec(other.to_string())),
        }
    }

    /// The canonical name of this codec.
    pub fn name(self) -> &'static str {
        match self {
            Codec::RleElias => "rle-elias",
            Codec::BlockHuffman => "block-huffman",
        }
    }

    /// Compresses `x`, returning the verified report and the blob.
    pub fn compress(self, x: &BitString) -> Result<(CompressionReport, Vec<u8>)> {
        match self {
            Codec::RleElias => rle_elias_compress(x),
            Codec::BlockHuffman => block_huffman_compress(x, DEFAULT_BLOCK_BITS),
        }
    }

    /// Decompresses a blob produced by this codec.
    pub fn decompress(self, blob: &[u8]) -> Result<BitString> {
        match self {
            Codec::RleElias => rle::rle_decode(blob),
            Codec::BlockHuffman => huffman::huffman_decode(blob),
        }
    }
}

fn verified_report(
    codec: Codec,
    x: &BitString,
    blob: Vec<u8>,
    output_bits: usize,
) -> Result<(CompressionReport, Vec<u8>)> {
    let lossless_verified = codec.decompress(&blob)? == *x;
    Ok((
        CompressionReport {
            codec: codec.name().to_string(),
            input_bits: x.len(),
            output_bits,
            lossless_verified,
        },
        blob,
    ))
}

/// Compresses with the RLE + Elias-gamma codec and verifies the round
/// trip.
pub fn rle_elias_compress(x: &BitString) -> Result<(CompressionReport, Vec<u8>)> {
    let (blob, bits) = rle::rle_encode(x)?;
    verified_report(Codec::RleElias, x, blob, bits)
}

/// Compresses with the canonical block-Huffman codec and verifies the
/// round trip.
pub fn block_huffman_compress(
    x: &BitString,
    block_bits: u8,
) -> Result<(CompressionReport, Vec<u8>)> {
    let (blob, bits) = huffman::huffman_encode(x, block_bits)?;
    verified_report(Codec::BlockHuffman, x, blob, bits)
}

/// The three per-party strings recorded for one measurement context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextStrings {
    /// First party's outcome bits, round by round.
    pub a: BitString,
    /// Second party's outcome bits.
    pub b: BitString,
    /// Third party's outcome bits.
    pub c: BitString,
}

/// Bit strings from `n` i.i.d. rounds of each of the four contexts.
///
/// Each context is sampled on its own fresh state copies, so strings
/// from different contexts are statistically independent. The six
/// setting-labeled accessors ([`a1`](Self::a1), [`b2`](Self::b2), …)
/// return each observable's string from the first context (in
/// [`CONTEXTS`] order) that measures it; XOR strings are always formed
/// within a single context, because the three outcomes of one round are
/// only jointly defined when they were measured together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundSamples {
    contexts: [ContextStrings; 4],
    n: usize,
    seed: u64,
}

impl RoundSamples {
    /// Number of rounds per context.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Master seed that generated the samples.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The per-party strings of context `index` (0–3, in [`CONTEXTS`]
    /// order).
    pub fn context_strings(&self, index: usize) -> Result<&ContextStrings> {
        self.contexts.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.contexts.len(),
        })
    }

    /// Label of context `index`, e.g. `"A1B1C1"`.
    pub fn context_name(&self, index: usize) -> Result<String> {
        let (ia, ib, ic) = *CONTEXTS.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: CONTEXTS.len(),
        })?;
        Ok(context_label(ia, ib, ic))
    }

    /// First party's string at its first setting (context `A1B1C1`).
    pub fn a1(&self) -> &BitString {
        &self.contexts[0].a
    }

    /// First party's string at its second setting (context `A2B1C2`).
    pub fn a2(&self) -> &BitString {
        &self.contexts[2].a
    }

    /// Second party's string at its first setting (context `A1B1C1`).
    pub fn b1(&self) -> &BitString {
        &self.contexts[0].b
    }

    /// Second party's string at its second setting (context `A1B2C2`).
    pub fn b2(&self) -> &BitString {
        &self.contexts[1].b
    }

    /// Third party's string at its first setting (context `A1B1C1`).
    pub fn c1(&self) -> &BitString {
        &self.contexts[0].c
    }

    /// Third party's string at its second setting (context `A1B2C2`).
    pub fn c2(&self) -> &BitString {
        &self.contexts[1].c
    }

    /// Round-by-round XOR of the three party strings of context
    /// `index`; equals the bit image of the product observable.
    pub fn xor_string(&self, index: usize) -> Result<BitString> {
        let ctx = self.context_strings(index)?;
        xor_strings(&ctx.a, &ctx.b, &ctx.c)
    }
}

/// Samples `n` i.i.d. rounds of each of the four contexts on `state`.
///
/// Context `k` draws from its exact joint outcome distribution with an
/// independent deterministic PRNG stream (stream id = context index),
/// via inverse-CDF over the eight outcomes in index order. Outcomes map
/// to bits as `bit = (1 − outcome)/2`.
pub fn sample_rounds(
    state: &DensityMatrix,
    settings: &SettingSextet,
    n: usize,
    seed: u64,
) -> Result<RoundSamples> {
    if state.n_qubits() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: state.n_qubits(),
        });
    }
    if n < 1 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let mut contexts = Vec::with_capacity(4);
    for (stream_id, &(ia, ib, ic)) in CONTEXTS.iter().enumerate() {
        let joint = joint_outcome_distribution(state, &context(settings, ia, ib, ic))?;
        let mut cdf = [0.0f64; 8];
        let mut acc = 0.0;
        for (cell, &p) in cdf.iter_mut().zip(joint.probabilities()) {
            acc += p;
            *cell = acc;
        }
        let mut rng = XorShift64Star::stream(seed, stream_id as u64);
        let (mut a, mut b, mut c) = (BitString::new(), BitString::new(), BitString::new());
        for _ in 0..n {
            let u = rng.next_f64();
            let idx = cdf.iter().position(|&cum| u < cum).unwrap_or(7);
            a.push((idx >> 2) & 1 == 1);
            b.push((idx >> 1) & 1 == 1);
            c.push(idx & 1 == 1);
        }
        contexts.push(ContextStrings { a, b, c });
    }
    let contexts: [ContextStrings; 4] = contexts.try_into().expect("exactly four contexts");
    Ok(RoundSamples { contexts, n, seed })
}

/// Compression-size inequality with its logarithmic side condition.
#[derive(Debug, Clone, Serialize)]
pub struct CompressionVerdict {
    /// Size inequality in bits: compressed `A1B1C1` XOR string against
    /// the sum of the three mixed-context XOR strings.
    #[serde(flatten)]
    pub report: InequalityReport,
    /// The operational `O(log n)` cutoff, `64·log₂ n`, in bits.
    pub side_condition_bound_bits: f64,
    /// Whether each rhs term is within the cutoff, in `rhs_terms` order.
    pub rhs_within_bound: Vec<bool>,
    /// True when every rhs term is within the cutoff, so a violation is
    /// meaningful rather than a header-cost artifact.
    pub side_condition_met: bool,
    /// Per-string codec reports in context order (lhs first).
    pub strings: Vec<CompressionReport>,
}

/// Compresses the four per-context XOR strings of `samples` with the
/// named codec and reports the size inequality.
pub fn compression_inequality_report(
    samples: &RoundSamples,
    codec: &str,
) -> Result<CompressionVerdict> {
    let codec = Codec::from_name(codec)?;
    let mut sizes = Vec::with_capacity(4);
    let mut strings = Vec::with_capacity(4);
    let mut labels = Vec::with_capacity(4);
    for (index, &(ia, ib, ic)) in CONTEXTS.iter().enumerate() {
        let (report, _blob) = codec.compress(&samples.xor_string(index)?)?;
        sizes.push(report.output_bits as f64);
        strings.push(report);
        labels.push(context_label(ia, ib, ic));
    }
    let lhs = sizes.remove(0);
    let report = InequalityReport::new(lhs, sizes, labels);
    let bound = SIDE_CONDITION_FACTOR * (samples.n() as f64).log2();
    let rhs_within_bound: Vec<bool> = report.rhs_terms.iter().map(|&t| t <= bound).collect();
    let side_condition_met = rhs_within_bound.iter().all(|&ok| ok);
    Ok(CompressionVerdict {
        report,
        side_condition_bound_bits: bound,
        rhs_within_bound,
        side_condition_met,
        strings,
    })
}
