//! Run-length codec with Elias-gamma run lengths.
//!
//! Blob layout (bit-level, MSB-first within bytes):
//!
//! ```text
//! [ 8 bits  version = 0x01 ]
//! [31 bits  input length in bits ]
//! [ 1 bit   value of the first run (0 for the empty string) ]
//! [ gamma(run₁) gamma(run₂) … ]      runs alternate in value
//! ```
//!
//! The 40-bit header plus one gamma code make a constant n-bit string
//! cost 40 + 2·⌊log₂ n⌋ + 1 bits — logarithmic in n, which is what the
//! deterministic XOR strings of the compression test need. Runs of
//! length 1 cost 1 bit each, so adversarially alternating input grows
//! past its original size; this codec is a certificate generator for
//! near-constant strings, not a general-purpose compressor.

use super::bits::{BitReader, BitString, BitWriter};
use crate::{Error, Result};

/// Version byte of the blob format.
pub const RLE_VERSION: u8 = 0x01;

/// Header size in bits: version byte, 31-bit length, leading-bit flag.
pub const RLE_HEADER_BITS: usize = 40;

const MAX_LEN: usize = (1 << 31) - 1;

/// Encodes `input`, returning the blob and its exact size in bits
/// (the blob is zero-padded to whole bytes).
pub fn rle_encode(input: &BitString) -> Result<(Vec<u8>, usize)> {
    if input.len() > MAX_LEN {
        return Err(Error::Shape(format!(
            "input of {} bits exceeds the 31-bit length field",
            input.len()
        )));
    }
    let mut w = BitWriter::new();
    w.push_bits(RLE_VERSION as u64, 8);
    w.push_bits(input.len() as u64, 31);
    let leading = if input.is_empty() {
        false
    } else {
        input.get(0)?
    };
    w.push_bit(leading);

    let mut current = leading;
    let mut run: u64 = 0;
    for bit in input.iter() {
        if bit == current {
            run += 1;
        } else {
            push_gamma(&mut w, run);
            current = bit;
            run = 1;
        }
    }
    if run > 0 {
        push_gamma(&mut w, run);
    }
    let bits = w.bit_len();
    Ok((w.into_bytes(), bits))
}

/// Decodes a blob produced by [`rle_encode`].
pub fn rle_decode(blob: &[u8]) -> Result<BitString> {
    let mut r = BitReader::new(blob);
    let version = r.read_bits(8)?;
    if version != RLE_VERSION as u64 {
        return Err(Error::Decode(format!(
            "unsupported version byte 0x{:02x}",
            version
        )));
    }
    let total = r.read_bits(31)? as usize;
    let mut value = r.read_bit()?;
    let mut out = BitString::new();
    while out.len() < total {
        let run = read_gamma(&mut r)?;
        let remaining = (total - out.len()) as u64;
        if run == 0 || run > remaining {
            return Err(Error::Decode(format!(
                "run of {} bits overflows the {} declared remaining",
                run, remaining
            )));
        }
        for _ in 0..run {
            out.push(value);
        }
        value = !value;
    }
    Ok(out)
}

/// Elias-gamma: ⌊log₂ n⌋ zeros, then n in binary (leading 1 first).
/// Defined for n ≥ 1; 2·⌊log₂ n⌋ + 1 bits.
fn push_gamma(w: &mut BitWriter, n: u64) {
    debug_assert!(n >= 1);
    let width = 64 - n.leading_zeros(); // position of the leading 1
    for _ in 0..width - 1 {
        w.push_bit(false);
    }
    w.push_bits(n, width);
}

fn read_gamma(r: &mut BitReader) -> Result<u64> {
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(Error::Decode("gamma code longer than 64 bits".into()));
        }
    }
    let mut value = 1u64;
    for _ in 0..zeros {
        value = (value << 1) | u64::from(r.read_bit()?);
    }
    Ok(value)
}
