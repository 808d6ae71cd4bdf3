#![no_main]

use libfuzzer_sys::fuzz_target;
use minhit::reduction::{emit_asp_core2, parse_asp_core2};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_asp_core2(text) {
        Ok((program, names)) => {
            let emitted = emit_asp_core2(&program, &names);
            assert_eq!(parse_asp_core2(&emitted), Ok((program, names)));
        }
        Err(e) => assert!(e.line >= 1 && e.column >= 1),
    }
});
