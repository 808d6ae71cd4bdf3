#![no_main]

use libfuzzer_sys::fuzz_target;
use minhit::io::parse_weights;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_weights(text) {
        Ok(weights) => assert!(weights.values().all(|w| w.is_finite() && *w >= 0.0)),
        Err(e) => assert!(e.line >= 1 && e.column >= 1),
    }
});
