#![no_main]

use libfuzzer_sys::fuzz_target;
use weyl_lie::dsl;

// Anything that parses must print back to a file with the same definitions.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = dsl::parse(text) else { return };
    let printed = file.to_source();
    let again = dsl::parse(&printed).unwrap_or_else(|d| panic!("{d}\n{printed}"));
    assert_eq!(again.n, file.n);
    assert_eq!(again.no_free, file.no_free);
    assert_eq!(again.definitions(), file.definitions());
});
