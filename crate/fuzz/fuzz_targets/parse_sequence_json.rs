#![no_main]

use libfuzzer_sys::fuzz_target;
use pathcalc_core::path::parse_sequence_json;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_sequence_json(s);
    }
});
