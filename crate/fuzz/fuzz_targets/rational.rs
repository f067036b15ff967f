#![no_main]

use libfuzzer_sys::fuzz_target;
use mondrian::exactnum::{format_rational, parse_rational};

// Parsing is a left inverse of canonical formatting.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some(r) = parse_rational(text) else { return };
    assert_eq!(parse_rational(&format_rational(&r)), Some(r));
});
