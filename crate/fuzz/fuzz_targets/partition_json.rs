#![no_main]

use libfuzzer_sys::fuzz_target;
use mondrian::app::{from_json, to_json};
use mondrian::geometry::verify_tiling;

// Accepted documents are certified tilings and survive a write/read cycle unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = from_json(text) else { return };
    assert!(verify_tiling(&p).0);
    let again = from_json(&to_json(&p)).expect("re-reading written JSON");
    assert_eq!(again.rects(), p.rects());
});
