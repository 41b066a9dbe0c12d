#![no_main]

use libfuzzer_sys::fuzz_target;
use weyl_lie::dsl;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = usize::from(first % 4) + 1;
    if let Ok(p) = dsl::parse_expression(text, n) {
        assert_eq!(p.modes(), n);
    }
});
