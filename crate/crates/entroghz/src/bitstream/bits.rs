//! Packed bit strings and bit-level readers/writers.
//!
//! Bits are packed MSB-first within bytes everywhere: bit index 0 of a
//! string is the most significant bit of byte 0. The on-disk format is
//! an 8-byte little-endian length (in bits) followed by the packed
//! payload; trailing pad bits in the final byte must be zero.

use crate::{Error, Result};

/// An immutable-length sequence of bits, packed MSB-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString {
    len: usize,
    bytes: Vec<u8>,
}

impl BitString {
    /// Empty string of length 0.
    pub fn new() -> Self {
        Self {
            len: 0,
            bytes: Vec::new(),
        }
    }

    /// A string of `len` copies of `bit`.
    pub fn repeated(bit: bool, len: usize) -> Self {
        let mut bytes = vec![if bit { 0xFF } else { 0x00 }; len.div_ceil(8)];
        if bit && len % 8 != 0 {
            // Zero the pad bits of the final byte.
            *bytes.last_mut().unwrap() = 0xFFu8 << (8 - len % 8);
        }
        Self { len, bytes }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut out = Self::new();
        for &b in bits {
            out.push(b);
        }
        out
    }

    /// Wraps pre-packed bytes. The byte count must match the bit length
    /// and pad bits must be zero.
    pub fn from_packed(len: usize, bytes: Vec<u8>) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Decode(format!(
                "{} bits need {} payload bytes, got {}",
                len,
                len.div_ceil(8),
                bytes.len()
            )));
        }
        if len % 8 != 0 {
            let pad_mask = 0xFFu8 >> (len % 8);
            if bytes.last().copied().unwrap_or(0) & pad_mask != 0 {
                return Err(Error::Decode("nonzero pad bits in final byte".into()));
            }
        }
        Ok(Self { len, bytes })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed payload, MSB-first, pad bits zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn get(&self, index: usize) -> Result<bool> {
        if index >= self.len {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len,
            });
        }
        Ok(self.bytes[index / 8] & (0x80 >> (index % 8)) != 0)
    }

    pub fn push(&mut self, bit: bool) {
        if self.len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Serializes to the file format: u64 little-endian bit count, then
    /// the packed payload.
    pub fn to_file_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.bytes.len());
        out.extend_from_slice(&(self.len as u64).to_le_bytes());
        out.extend_from_slice(&self.bytes);
        out
    }

    /// Parses the file format produced by [`Self::to_file_bytes`].
    pub fn from_file_bytes(data: &[u8]) -> Result<Self> {
        if data.len() < 8 {
            return Err(Error::Decode(format!(
                "bit-string file needs an 8-byte header, got {} bytes",
                data.len()
            )));
        }
        let len = u64::from_le_bytes(data[..8].try_into().unwrap());
        let len: usize = len
            .try_into()
            .map_err(|_| Error::Decode(format!("bit length {} exceeds address space", len)))?;
        if len.div_ceil(8) != data.len() - 8 {
            return Err(Error::Decode(format!(
                "{} bits need {} payload bytes, got {}",
                len,
                len.div_ceil(8),
                data.len() - 8
            )));
        }
        Self::from_packed(len, data[8..].to_vec())
    }
}

impl Default for BitString {
    fn default() -> Self {
        Self::new()
    }
}

/// Bitwise XOR of three equal-length strings. Under the project-wide
/// mapping (+1 ↦ 0, −1 ↦ 1) the XOR of outcome bits is the bit of the
/// outcome product.
pub fn xor_strings(x: &BitString, y: &BitString, z: &BitString) -> Result<BitString> {
    if x.len() != y.len() || x.len() != z.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: if y.len() != x.len() { y.len() } else { z.len() },
        });
    }
    let bytes: Vec<u8> = x
        .bytes
        .iter()
        .zip(&y.bytes)
        .zip(&z.bytes)
        .map(|((a, b), c)| a ^ b ^ c)
        .collect();
    // Pad bits stay zero: 0^0^0 = 0.
    Ok(BitString {
        len: x.len(),
        bytes,
    })
}

/// Accumulates bits MSB-first into bytes.
#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_bit(&mut self, bit: bool) {
        if self.len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            self.bytes[self.len / 8] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Writes the low `count` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, count: u32) {
        assert!(count <= 64);
        for i in (0..count).rev() {
            self.push_bit((value >> i) & 1 != 0);
        }
    }

    /// Number of bits written so far.
    pub fn bit_len(&self) -> usize {
        self.len
    }

    /// Final blob, padded with zero bits to a whole byte.
    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// Reads bits MSB-first from a byte slice, with bounds checking.
#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        if self.pos >= self.bytes.len() * 8 {
            return Err(Error::Decode("bit stream exhausted".into()));
        }
        let bit = self.bytes[self.pos / 8] & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `count` bits MSB-first into the low bits of a u64.
    pub fn read_bits(&mut self, count: u32) -> Result<u64> {
        if count > 64 {
            return Err(Error::Decode(format!("cannot read {} bits at once", count)));
        }
        let mut value = 0u64;
        for _ in 0..count {
            value = (value << 1) | u64::from(self.read_bit()?);
        }
        Ok(value)
    }

    /// Bits consumed so far.
    pub fn bit_pos(&self) -> usize {
        self.pos
    }
}
