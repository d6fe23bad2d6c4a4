use hurwitz::{c64, CMat, MatrixPolynomial};
use hurwitz_cli::format::{self, FractionFile, PolynomialFile};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        Just(0.0),
        Just(-0.0),
        (-300i32..300).prop_map(|e| 1.234_567_890_123_4 * 10f64.powi(e)),
        Just(f64::MIN_POSITIVE),
        Just(f64::MAX),
    ]
}

fn polynomial() -> impl Strategy<Value = MatrixPolynomial> {
    (1usize..=3, 0usize..=4).prop_flat_map(|(p, n)| {
        prop::collection::vec((finite(), finite()), p * p * (n + 1)).prop_map(move |xs| {
            let coeffs: Vec<CMat> = (0..=n)
                .map(|k| {
                    CMat::from_fn(p, p, |i, j| {
                        if k == 0 && i == j {
                            c64(1.0, 0.0)
                        } else {
                            let (re, im) = xs[k * p * p + i * p + j];
                            c64(re, im)
                        }
                    })
                })
                .collect();
            MatrixPolynomial::new(p, coeffs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn polynomial_files_round_trip(
        f in polynomial(),
        name in proptest::option::of("[ -~]{0,20}"),
        seed in proptest::option::of(any::<u64>()),
    ) {
        let file = PolynomialFile { name, seed, kind: Some("stable".into()), polynomial: f };
        let once = format::write_polynomial(&file);
        let back = format::parse_polynomial(&once).unwrap();
        prop_assert_eq!(&back.polynomial, &file.polynomial);
        prop_assert_eq!(format::write_polynomial(&back), once);
    }

    #[test]
    fn fraction_files_round_trip(q in polynomial(), seed in any::<u64>()) {
        let p = q.p();
        let den = hurwitz::generate::random_structured(p, 2, seed, hurwitz::generate::Kind::Stable);
        let file = FractionFile { name: None, numerator: q, denominator: den };
        let once = format::write_fraction(&file);
        let back = format::parse_fraction(&once).unwrap();
        prop_assert_eq!(format::write_fraction(&back), once);
    }
}

#[test]
fn committed_fixtures_are_canonical() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/generated");
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        assert_eq!(format::write_polynomial(&format::parse_polynomial(&text).unwrap()), text);
    }
}

#[test]
fn fraction_without_degree_field_is_rejected() {
    let text = r#"{"p": 1, "numerator": {"coefficients": [[[[1, 0]]]]}, "denominator": {"degree": 0, "coefficients": [[[[1, 0]]]]}}"#;
    let err = format::parse_fraction(text).unwrap_err().to_string();
    assert!(err.contains("degree"), "{err}");
}

#[test]
fn non_finite_numbers_are_rejected() {
    let text = r#"{"p": 1, "degree": 0, "coefficients": [[[[1e999, 0]]]]}"#;
    assert!(format::parse_polynomial(text).is_err());
}
