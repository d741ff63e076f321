//! Replays every checked-in fuzz corpus seed through the same
//! invariants the fuzz harnesses assert, so a plain `cargo test` run
//! exercises the corpus without a fuzzing toolchain. The decoder
//! corpora contain only valid blobs (they were produced by the real
//! encoders), so decoding them must succeed outright.

use std::fs;
use std::path::PathBuf;

use entroghz::bitstream::{
    huffman_decode, huffman_encode, rle_decode, rle_encode, BitString,
};

fn corpus_dir(target: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

fn corpus_files(target: &str, expect_at_least: usize) -> Vec<(String, Vec<u8>)> {
    let dir = corpus_dir(target);
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("corpus dir {} missing: {}", dir.display(), e))
        .map(|entry| {
            let entry = entry.unwrap();
            let name = entry.file_name().to_string_lossy().into_owned();
            let bytes = fs::read(entry.path()).unwrap();
            (name, bytes)
        })
        .collect();
    files.sort();
    assert!(
        files.len() >= expect_at_least,
        "corpus {} shrank to {} seeds",
        target,
        files.len()
    );
    files
}

/// The shared input interpretation of the encode-side harnesses: a
/// selector byte, then the remaining bytes as bits MSB-first, with up
/// to 7 bits trimmed so non-byte lengths get coverage.
fn bits_from_raw(rest: &[u8], trim: usize) -> BitString {
    let total = (rest.len() * 8).saturating_sub(trim);
    let mut bits = BitString::new();
    for i in 0..total {
        bits.push(rest[i / 8] & (0x80 >> (i % 8)) != 0);
    }
    bits
}

#[test]
fn bits_file_corpus_parses_and_reencodes_byte_identically() {
    for (name, data) in corpus_files("bits_file_decode", 5) {
        let bits = BitString::from_file_bytes(&data).unwrap_or_else(|e| panic!("{}: {}", name, e));
        assert_eq!(bits.to_file_bytes(), data, "{} is not canonical", name);
    }
}

#[test]
fn rle_corpus_decodes_and_roundtrips() {
    for (name, data) in corpus_files("rle_decode", 5) {
        let bits = rle_decode(&data).unwrap_or_else(|e| panic!("{}: {}", name, e));
        let (blob, blob_bits) = rle_encode(&bits).unwrap();
        assert!(blob.len() * 8 - blob_bits < 8);
        assert_eq!(rle_decode(&blob).unwrap(), bits, "{} round-trip", name);
    }
}

#[test]
fn huffman_corpus_decodes_and_roundtrips() {
    for (name, data) in corpus_files("huffman_decode", 5) {
        let bits = huffman_decode(&data).unwrap_or_else(|e| panic!("{}: {}", name, e));
        let block_bits = data[5];
        let (blob, _) = huffman_encode(&bits, block_bits).unwrap();
        assert_eq!(huffman_decode(&blob).unwrap(), bits, "{} round-trip", name);
    }
}

#[test]
fn rle_roundtrip_corpus_encodes_losslessly() {
    for (name, data) in corpus_files("rle_roundtrip", 5) {
        let Some((&first, rest)) = data.split_first() else {
            continue;
        };
        let bits = bits_from_raw(rest, (first % 8) as usize);
        let (blob, blob_bits) = rle_encode(&bits).unwrap();
        assert!(blob.len() * 8 - blob_bits < 8);
        assert_eq!(rle_decode(&blob).unwrap(), bits, "{} round-trip", name);
    }
}

#[test]
fn huffman_roundtrip_corpus_encodes_losslessly() {
    for (name, data) in corpus_files("huffman_roundtrip", 5) {
        let Some((&first, rest)) = data.split_first() else {
            continue;
        };
        let block_bits = (first % 16) + 1;
        let bits = bits_from_raw(rest, (first >> 4) as usize % 8);
        let (blob, _) = huffman_encode(&bits, block_bits).unwrap();
        assert_eq!(huffman_decode(&blob).unwrap(), bits, "{} round-trip", name);
    }
}
