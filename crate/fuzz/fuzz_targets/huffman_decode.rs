//! Fuzzes the block-Huffman blob decoder: arbitrary bytes must either
//! decode or return an error, never panic. A successful decode must
//! round-trip through the encoder at the same block width (the encoder
//! may legitimately pick a different mode for the same content).

#![no_main]

use entroghz::bitstream::{huffman_decode, huffman_encode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(bits) = huffman_decode(data) {
        // Byte 5 is the block width; a successful parse guarantees 1..=16.
        let block_bits = data[5];
        let (blob, _) = huffman_encode(&bits, block_bits).expect("decoded string re-encodes");
        assert_eq!(huffman_decode(&blob).expect("canonical blob decodes"), bits);
    }
});
