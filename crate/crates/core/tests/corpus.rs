//! Replays the checked-in fuzz corpus: `ok_*` seeds must parse, `bad_*`
//! seeds must fail with a positioned diagnostic.

use std::fs;
use std::path::PathBuf;

use weyl_lie::dsl::{self, ParseDiagnostic};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .filter(|(name, _)| name.starts_with("ok_") || name.starts_with("bad_"))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn check<T: std::fmt::Debug>(name: &str, result: Result<T, ParseDiagnostic>) -> Option<T> {
    match (name.starts_with("ok_"), result) {
        (true, Ok(v)) => Some(v),
        (true, Err(d)) => panic!("{name}: {d}"),
        (false, Ok(v)) => panic!("{name} was accepted: {v:?}"),
        (false, Err(d)) => {
            assert!(d.line >= 1 && d.column >= 1, "{name}: {d:?}");
            assert!(!d.message.is_empty());
            None
        }
    }
}

#[test]
fn source_seeds() {
    for (name, bytes) in seeds("parse_source") {
        check(&name, dsl::parse(std::str::from_utf8(&bytes).unwrap()));
    }
}

#[test]
fn roundtrip_seeds() {
    for (name, bytes) in seeds("parse_roundtrip") {
        let file = check(&name, dsl::parse(std::str::from_utf8(&bytes).unwrap())).unwrap();
        let again = dsl::parse(&file.to_source()).unwrap();
        assert_eq!((again.n, again.no_free), (file.n, file.no_free), "{name}");
        assert_eq!(again.definitions(), file.definitions(), "{name}");
    }
}

#[test]
fn expression_seeds() {
    for (name, bytes) in seeds("parse_expression") {
        let (first, rest) = bytes.split_first().unwrap();
        let n = usize::from(first % 4) + 1;
        check(&name, dsl::parse_expression(std::str::from_utf8(rest).unwrap(), n));
    }
}

#[test]
fn basis_label_seeds() {
    for (name, bytes) in seeds("parse_basis_label") {
        if let Some((_, gamma)) = check(&name, dsl::parse_basis_label(std::str::from_utf8(&bytes).unwrap())) {
            assert_eq!(dsl::parse_basis_label(&gamma.to_string()).unwrap().1, gamma);
        }
    }
}

mod random_text {
    use proptest::prelude::*;
    use weyl_lie::dsl;

    /// Strings over the input alphabet, weighted towards well-formed fragments.
    fn dsl_text() -> impl Strategy<Value = String> {
        let piece = prop_oneof![
            Just("a[1]".to_string()),
            Just("ad[2]".to_string()),
            Just("i".to_string()),
            Just("x = ".to_string()),
            Just(";\n".to_string()),
            Just("#modes 3\n".to_string()),
            Just("#no-free\n".to_string()),
            "[-+*^()/;=]".prop_map(String::from),
            "[0-9]{1,3}".prop_map(String::from),
            "[ a-z\\[\\]#\n]{1,3}".prop_map(String::from),
        ];
        proptest::collection::vec(piece, 0..24).prop_map(|v| v.concat())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn parse_never_panics_and_roundtrips(text in dsl_text()) {
            match dsl::parse(&text) {
                Ok(file) => {
                    let again = dsl::parse(&file.to_source()).unwrap();
                    prop_assert_eq!(again.definitions(), file.definitions());
                }
                Err(d) => prop_assert!(d.line >= 1 && d.column >= 1),
            }
        }

        #[test]
        fn expressions_never_panic(text in dsl_text(), n in 1usize..=4) {
            let _ = dsl::parse_expression(&text, n);
        }

        #[test]
        fn labels_never_panic(text in "[g+\\-(),;0-9 ]{0,16}") {
            if let Ok((_, g)) = dsl::parse_basis_label(&text) {
                prop_assert_eq!(dsl::parse_basis_label(&g.to_string()).unwrap().1, g);
            }
        }
    }
}
