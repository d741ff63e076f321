//! Fuzzes the run-length blob decoder: arbitrary bytes must either
//! decode or return an error, never panic. Blobs may carry trailing pad
//! bits, so decoding is not byte-canonical; instead a successful decode
//! must survive a re-encode/re-decode cycle unchanged.

#![no_main]

use entroghz::bitstream::{rle_decode, rle_encode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(bits) = rle_decode(data) {
        let (blob, blob_bits) = rle_encode(&bits).expect("decoded string re-encodes");
        assert!(blob.len() * 8 - blob_bits < 8);
        assert_eq!(rle_decode(&blob).expect("canonical blob decodes"), bits);
    }
});
