#![no_main]

use libfuzzer_sys::fuzz_target;
use weyl_lie::dsl;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Err(d) = dsl::parse(text) {
        assert!(d.line >= 1 && d.column >= 1);
    }
});
