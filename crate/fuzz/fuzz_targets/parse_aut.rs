#![no_main]

use libfuzzer_sys::fuzz_target;
use opsem::lts::{parse_aut, write_aut};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = parse_aut(src) {
        let text = write_aut(&doc);
        let again = parse_aut(&text).expect("writer output parses");
        assert_eq!(write_aut(&again), text);
    }
});
