//! Canonical block-Huffman codec.
//!
//! The input is split into fixed-width blocks of `block_bits` bits
//! (1–16); the final partial block, if any, is stored raw. Blob layout
//! (bit-level, MSB-first within bytes):
//!
//! ```text
//! [ 8 bits  version = 0x01 ]
//! [32 bits  input length in bits ]
//! [ 8 bits  block_bits ]
//! [ 8 bits  mode ]
//! mode 0 (input shorter than one block): raw input bits
//! mode 1 (single distinct block value): [16b symbol][32b block count][tail raw]
//! mode 2 (general): [5 bits per possible symbol: canonical code length]
//!                   [coded blocks][tail raw]
//! ```
//!
//! Code lengths come from a Huffman tree with deterministic
//! tie-breaking (equal frequencies resolved toward the smaller symbol,
//! then toward leaves) and are capped at 31 bits by halving frequencies
//! and rebuilding if ever exceeded. Codes are assigned canonically:
//! symbols sorted by (length, symbol), codewords counting up. The
//! decoder validates completeness of the code (Kraft sum exactly 1), so
//! any bit sequence either decodes unambiguously or is rejected.

use super::bits::{BitReader, BitString, BitWriter};
use crate::{Error, Result};

/// Version byte of the blob format.
pub const HUFFMAN_VERSION: u8 = 0x01;

/// Header size in bits: version, length, block width, mode.
pub const HUFFMAN_HEADER_BITS: usize = 56;

/// Maximum canonical code length representable in the 5-bit table.
const MAX_CODE_LEN: u32 = 31;

const MODE_RAW: u8 = 0;
const MODE_SINGLE: u8 = 1;
const MODE_TABLE: u8 = 2;

/// Encodes `input` with the given block width, returning the blob and
/// its exact size in bits.
pub fn huffman_encode(input: &BitString, block_bits: u8) -> Result<(Vec<u8>, usize)> {
    if !(1..=16).contains(&block_bits) {
        return Err(Error::OutOfRange {
            name: "block_bits",
            value: block_bits as f64,
            min: 1.0,
            max: 16.0,
        });
    }
    if input.len() > u32::MAX as usize {
        return Err(Error::Shape(format!(
            "input of {} bits exceeds the 32-bit length field",
            input.len()
        )));
    }
    let b = block_bits as usize;
    let n_blocks = input.len() / b;
    let blocks: Vec<u16> = (0..n_blocks)
        .map(|i| {
            let mut v = 0u16;
            for j in 0..b {
                v = (v << 1) | u16::from(input.get(i * b + j).unwrap());
            }
            v
        })
        .collect();
    let tail_start = n_blocks * b;

    let mut w = BitWriter::new();
    w.push_bits(HUFFMAN_VERSION as u64, 8);
    w.push_bits(input.len() as u64, 32);
    w.push_bits(block_bits as u64, 8);

    let push_tail = |w: &mut BitWriter, input: &BitString| {
        for i in tail_start..input.len() {
            w.push_bit(input.get(i).unwrap());
        }
    };

    let mut freqs = vec![0u64; 1 << block_bits];
    for &s in &blocks {
        freqs[s as usize] += 1;
    }
    let distinct = freqs.iter().filter(|&&f| f > 0).count();

    if n_blocks == 0 {
        w.push_bits(MODE_RAW as u64, 8);
        push_tail(&mut w, input);
    } else if distinct == 1 {
        let symbol = freqs.iter().position(|&f| f > 0).unwrap();
        w.push_bits(MODE_SINGLE as u64, 8);
        w.push_bits(symbol as u64, 16);
        w.push_bits(n_blocks as u64, 32);
        push_tail(&mut w, input);
    } else {
        let lengths = build_code_lengths(&freqs);
        let codes = canonical_codes(&lengths);
        w.push_bits(MODE_TABLE as u64, 8);
        for &len in &lengths {
            w.push_bits(len as u64, 5);
        }
        for &s in &blocks {
            let (len, code) = codes[s as usize];
            w.push_bits(code as u64, len);
        }
        push_tail(&mut w, input);
    }
    let bits = w.bit_len();
    Ok((w.into_bytes(), bits))
}

/// Decodes a blob produced by [`huffman_encode`].
pub fn huffman_decode(blob: &[u8]) -> Result<BitString> {
    let mut r = BitReader::new(blob);
    let version = r.read_bits(8)?;
    if version != HUFFMAN_VERSION as u64 {
        return Err(Error::Decode(format!(
            "unsupported version byte 0x{:02x}",
            version
        )));
    }
    let total = r.read_bits(32)? as usize;
    let block_bits = r.read_bits(8)? as u8;
    if !(1..=16).contains(&block_bits) {
        return Err(Error::Decode(format!("invalid block width {}", block_bits)));
    }
    let b = block_bits as usize;
    let n_blocks = total / b;
    let tail_len = total % b;
    let mode = r.read_bits(8)? as u8;

    let mut out = BitString::new();
    match mode {
        MODE_RAW => {
            if n_blocks != 0 {
                return Err(Error::Decode(format!(
                    "raw mode used for {} full blocks",
                    n_blocks
                )));
            }
        }
        MODE_SINGLE => {
            let symbol = r.read_bits(16)?;
            let count = r.read_bits(32)? as usize;
            if symbol >= 1 << block_bits {
                return Err(Error::Decode(format!(
                    "symbol {} outside {}-bit alphabet",
                    symbol, block_bits
                )));
            }
            if count != n_blocks {
                return Err(Error::Decode(format!(
                    "block count {} disagrees with declared length ({} blocks)",
                    count, n_blocks
                )));
            }
            for _ in 0..count {
                for j in (0..b).rev() {
                    out.push((symbol >> j) & 1 != 0);
                }
            }
        }
        MODE_TABLE => {
            let mut lengths = vec![0u32; 1 << block_bits];
            for len in lengths.iter_mut() {
                *len = r.read_bits(5)? as u32;
            }
            let decoder = CanonicalDecoder::new(&lengths)?;
            for _ in 0..n_blocks {
                let symbol = decoder.read_symbol(&mut r)?;
                for j in (0..b).rev() {
                    out.push((symbol >> j) & 1 != 0);
                }
            }
        }
        other => {
            return Err(Error::Decode(format!("unknown mode byte {}", other)));
        }
    }
    for _ in 0..tail_len {
        out.push(r.read_bit()?);
    }
    if out.len() != total {
        return Err(Error::Decode(format!(
            "decoded {} bits, header declared {}",
            out.len(),
            total
        )));
    }
    Ok(out)
}

/// Huffman code lengths for the nonzero-frequency symbols, capped at
/// [`MAX_CODE_LEN`]. Requires at least two distinct symbols.
///
/// Uses the two-queue construction over leaves sorted by (frequency,
/// symbol); on equal keys a leaf is merged before an internal node, so
/// the tree — and therefore every length — is deterministic.
fn build_code_lengths(freqs: &[u64]) -> Vec<u32> {
    let mut freqs = freqs.to_vec();
    loop {
        let lengths = huffman_lengths_once(&freqs);
        if lengths.iter().all(|&l| l <= MAX_CODE_LEN) {
            return lengths;
        }
        // Flatten the distribution and rebuild; terminates because all
        // frequencies eventually reach 1 (a balanced tree of ≤ 2¹⁶
        // leaves is at most 16 deep).
        for f in freqs.iter_mut() {
            if *f > 0 {
                *f = (*f).div_ceil(2);
            }
        }
    }
}

fn huffman_lengths_once(freqs: &[u64]) -> Vec<u32> {
    #[derive(Clone, Copy)]
    struct Node {
        freq: u64,
        left: usize,
        right: usize, // usize::MAX marks a leaf
        symbol: usize,
    }
    let mut nodes: Vec<Node> = Vec::new();
    let mut leaves: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (0..freqs.len()).filter(|&s| freqs[s] > 0).collect();
    order.sort_by_key(|&s| (freqs[s], s));
    for s in order {
        leaves.push(nodes.len());
        nodes.push(Node {
            freq: freqs[s],
            left: usize::MAX,
            right: usize::MAX,
            symbol: s,
        });
    }
    assert!(leaves.len() >= 2, "table mode requires two distinct symbols");

    let mut internals: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    let mut leaf_pos = 0;
    let take = |nodes: &Vec<Node>,
                    leaf_pos: &mut usize,
                    internals: &mut std::collections::VecDeque<usize>|
     -> usize {
        let leaf = leaves.get(*leaf_pos).copied();
        let internal = internals.front().copied();
        match (leaf, internal) {
            (Some(l), Some(i)) => {
                if nodes[l].freq <= nodes[i].freq {
                    *leaf_pos += 1;
                    l
                } else {
                    internals.pop_front();
                    i
                }
            }
            (Some(l), None) => {
                *leaf_pos += 1;
                l
            }
            (None, Some(i)) => {
                internals.pop_front();
                i
            }
            (None, None) => unreachable!("queue bookkeeping"),
        }
    };

    let total = leaves.len();
    for _ in 0..total - 1 {
        let a = take(&nodes, &mut leaf_pos, &mut internals);
        let b = take(&nodes, &mut leaf_pos, &mut internals);
        let merged = Node {
            freq: nodes[a].freq + nodes[b].freq,
            left: a,
            right: b,
            symbol: usize::MAX,
        };
        internals.push_back(nodes.len());
        nodes.push(merged);
    }
    let root = *internals.back().expect("at least one merge happened");

    let mut lengths = vec![0u32; freqs.len()];
    let mut stack = vec![(root, 0u32)];
    while let Some((idx, depth)) = stack.pop() {
        let node = nodes[idx];
        if node.right == usize::MAX {
            lengths[node.symbol] = depth.max(1); // two-symbol tree: depth ≥ 1
        } else {
            stack.push((node.left, depth + 1));
            stack.push((node.right, depth + 1));
        }
    }
    lengths
}

/// Canonical (length, codeword) per symbol: symbols sorted by
/// (length, symbol), codewords counting upward.
fn canonical_codes(lengths: &[u32]) -> Vec<(u32, u32)> {
    let mut symbols: Vec<usize> = (0..lengths.len()).filter(|&s| lengths[s] > 0).collect();
    symbols.sort_by_key(|&s| (lengths[s], s));
    let mut codes = vec![(0u32, 0u32); lengths.len()];
    let mut code = 0u32;
    let mut prev_len = 0u32;
    for &s in &symbols {
        code <<= lengths[s] - prev_len;
        codes[s] = (lengths[s], code);
        prev_len = lengths[s];
        code += 1;
    }
    codes
}

/// Table-driven canonical decoder with completeness validation.
struct CanonicalDecoder {
    /// First canonical code of each length.
    first_code: [u32; MAX_CODE_LEN as usize + 1],
    /// Number of codes of each length.
    count: [u32; MAX_CODE_LEN as usize + 1],
    /// Offset into `symbols` of each length's first symbol.
    offset: [usize; MAX_CODE_LEN as usize + 1],
    /// Symbols sorted by (length, symbol).
    symbols: Vec<u16>,
}

impl CanonicalDecoder {
    fn new(lengths: &[u32]) -> Result<Self> {
        let mut count = [0u32; MAX_CODE_LEN as usize + 1];
        let mut kraft = 0u64;
        let mut used = 0usize;
        for &len in lengths {
            if len > MAX_CODE_LEN {
                return Err(Error::Decode(format!("code length {} exceeds 31", len)));
            }
            if len > 0 {
                count[len as usize] += 1;
                kraft += 1u64 << (MAX_CODE_LEN - len);
                used += 1;
            }
        }
        if used < 2 {
            return Err(Error::Decode(
                "code table must contain at least two symbols".into(),
            ));
        }
        if kraft != 1u64 << MAX_CODE_LEN {
            return Err(Error::Decode(
                "code lengths do not form a complete prefix code".into(),
            ));
        }
        let mut first_code = [0u32; MAX_CODE_LEN as usize + 1];
        let mut offset = [0usize; MAX_CODE_LEN as usize + 1];
        let mut code = 0u32;
        let mut total = 0usize;
        for len in 1..=MAX_CODE_LEN as usize {
            first_code[len] = code;
            offset[len] = total;
            code = (code + count[len]) << 1;
            total += count[len] as usize;
        }
        let mut symbols: Vec<u16> = (0..lengths.len())
            .filter(|&s| lengths[s] > 0)
            .map(|s| s as u16)
            .collect();
        symbols.sort_by_key(|&s| (lengths[s as usize], s));
        Ok(Self {
            first_code,
            count,
            offset,
            symbols,
        })
    }

    fn read_symbol(&self, r: &mut BitReader) -> Result<u16> {
        let mut code = 0u32;
        for len in 1..=MAX_CODE_LEN as usize {
            code = (code << 1) | u32::from(r.read_bit()?);
            let c = self.count[len];
            if c > 0 && code >= self.first_code[len] && code - self.first_code[len] < c {
                return Ok(self.symbols[self.offset[len] + (code - self.first_code[len]) as usize]);
            }
        }
        Err(Error::Decode("code word longer than 31 bits".into()))
    }
}
