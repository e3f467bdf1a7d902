#![no_main]

use libfuzzer_sys::fuzz_target;
use opsem::ccs::{explore_lts, parse_defs, Process};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(defs) = parse_defs(src) {
        assert_eq!(parse_defs(&defs.to_string()).as_ref(), Ok(&defs));
        let roots: Vec<Process> = defs.iter().map(|(k, _)| Process::constant(k)).take(2).collect();
        let _ = explore_lts(&defs, &roots, 64);
    }
});
