#![no_main]

use libfuzzer_sys::fuzz_target;
use minhit::io::{parse_instance_bytes, print_instance};

fuzz_target!(|data: &[u8]| {
    match parse_instance_bytes(data) {
        Ok(family) => {
            assert!(family.sets().iter().all(|s| !s.is_empty()));
            let again = parse_instance_bytes(print_instance(&family).as_bytes()).expect("printed form parses");
            assert_eq!(again, family);
        }
        Err(e) => assert!(e.line >= 1 && e.column >= 1),
    }
});
