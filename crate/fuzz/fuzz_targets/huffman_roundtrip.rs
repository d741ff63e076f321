//! Fuzzes the block-Huffman encode side: any bit string at any block
//! width in 1..=16 must encode and decode back to itself.

#![no_main]

use entroghz::bitstream::{huffman_decode, huffman_encode, BitString};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let block_bits = (first % 16) + 1;
    // The high bits of the selector trim up to 7 bits so non-byte
    // lengths get coverage.
    let total = (rest.len() * 8).saturating_sub((first >> 4) as usize % 8);
    let mut bits = BitString::new();
    for i in 0..total {
        bits.push(rest[i / 8] & (0x80 >> (i % 8)) != 0);
    }

    let (blob, _) = huffman_encode(&bits, block_bits).expect("any short string encodes");
    assert_eq!(huffman_decode(&blob).expect("own blob decodes"), bits);
});
