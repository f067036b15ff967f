#![no_main]

use libfuzzer_sys::fuzz_target;
use mondrian::app::parse_aspect;
use mondrian::exactnum::{parse_rational, rat};

// Accepted aspects are positive and agree with the plain rational parser.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_aspect(text) {
        assert!(r > rat(0, 1));
        assert_eq!(parse_rational(text), Some(r));
    }
});
