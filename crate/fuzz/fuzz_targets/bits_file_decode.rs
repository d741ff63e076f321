//! Fuzzes the bit-string file format: arbitrary bytes must either parse
//! or return an error, never panic. The format is canonical (exact
//! payload length, zero pad bits), so a successful parse must re-encode
//! to the original bytes.

#![no_main]

use entroghz::bitstream::BitString;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(bits) = BitString::from_file_bytes(data) {
        assert_eq!(bits.to_file_bytes(), data);
    }
});
