#![no_main]

use libfuzzer_sys::fuzz_target;
use weyl_lie::dsl;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match dsl::parse_basis_label(text) {
        Ok((_, gamma)) => {
            let (_, again) = dsl::parse_basis_label(&gamma.to_string()).expect("display form parses");
            assert_eq!(again, gamma);
        }
        Err(d) => assert!(d.line >= 1 && d.column >= 1),
    }
});
