#![no_main]

use libfuzzer_sys::fuzz_target;
use opsem::ccs::{decompose, parse_process, transitions, Defs};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_process(src) {
        assert_eq!(parse_process(&p.to_string()).as_ref(), Ok(&p));
        let (ctx, leaf) = decompose(&p);
        assert_eq!(ctx.fill(leaf.to_process()), p);
        // no constants are bound, so this may only fail on one of them
        let _ = transitions(&Defs::new(), &p);
    }
});
