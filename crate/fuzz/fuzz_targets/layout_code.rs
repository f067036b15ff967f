#![no_main]

use libfuzzer_sys::fuzz_target;
use mondrian::layouts::Layout;

// A parsed layout prints a code that parses back into the same class.
fuzz_target!(|data: &[u8]| {
    let Ok(code) = std::str::from_utf8(data) else { return };
    let Ok(layout) = Layout::from_code(code) else { return };
    let back = Layout::from_code(&layout.code()).expect("re-parsing a printed code");
    assert!(back.same_class(&layout));
});
