//! Fuzzes the run-length encode side: any bit string (including lengths
//! that are not whole bytes) must encode and decode back to itself.

#![no_main]

use entroghz::bitstream::{rle_decode, rle_encode, BitString};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    // The first byte trims up to 7 bits so non-byte lengths get coverage.
    let total = (rest.len() * 8).saturating_sub((first % 8) as usize);
    let mut bits = BitString::new();
    for i in 0..total {
        bits.push(rest[i / 8] & (0x80 >> (i % 8)) != 0);
    }

    let (blob, blob_bits) = rle_encode(&bits).expect("any short string encodes");
    assert!(blob.len() * 8 - blob_bits < 8);
    assert_eq!(rle_decode(&blob).expect("own blob decodes"), bits);
});
