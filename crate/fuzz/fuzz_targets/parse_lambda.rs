#![no_main]

use libfuzzer_sys::fuzz_target;
use opsem::lambda::{eval, parse_term, parse_ty, typecheck_fsub, typecheck_stlc, TypingCtx};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(parsed) = parse_term(src) {
        let printed = parsed.names.print_term(&parsed.term);
        parse_term(&printed).expect("printer output parses");
        let empty = TypingCtx::new();
        let _ = typecheck_stlc(&empty, &parsed.term);
        let _ = typecheck_fsub(&empty, &parsed.term);
        let _ = eval(&parsed.term, true, 16);
    }
    if let Ok(ty) = parse_ty(src) {
        assert_eq!(parse_ty(&ty.to_string()), Ok(ty));
    }
});
