use num_bigint::BigInt;
use proptest::prelude::*;
use qlp::metric::{profile, validate, FamilySpec, ValidationError};

fn dims(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn known_profiles() {
    let cases: Vec<(FamilySpec, i64, usize, Vec<i64>)> = vec![
        (
            FamilySpec::QHamming { q: 2, n: 3 },
            8,
            3,
            vec![1, 9, 27, 27],
        ),
        (FamilySpec::QHamming { q: 3, n: 2 }, 9, 2, vec![1, 16, 64]),
        (FamilySpec::Su2 { n: 4 }, 5, 4, vec![1, 3, 5, 7, 9]),
        (FamilySpec::SuqSym { q: 3, n: 2 }, 6, 2, vec![1, 8, 27]),
        (FamilySpec::SunExt { n: 4, w: 2 }, 6, 2, vec![1, 15, 20]),
        (FamilySpec::SunExt { n: 5, w: 1 }, 5, 1, vec![1, 24]),
        (FamilySpec::CliffordOdd { n: 2 }, 4, 2, vec![1, 5, 10]),
        (FamilySpec::CliffordEven { n: 2 }, 4, 4, vec![1, 4, 6, 4, 1]),
        (FamilySpec::Spinorial { n: 2 }, 4, 2, vec![1, 10, 5]),
        (FamilySpec::Semispinorial { n: 4 }, 8, 2, vec![1, 28, 35]),
        (FamilySpec::Semispinorial { n: 5 }, 16, 2, vec![1, 45, 210]),
    ];
    for (spec, dh, r, dv) in cases {
        let p = profile(&spec).unwrap();
        assert_eq!(p.dim_h, BigInt::from(dh), "{spec}");
        assert_eq!(p.r, r, "{spec}");
        assert_eq!(p.dim_v, dims(&dv), "{spec}");
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(validate(&FamilySpec::QHamming { q: 3, n: 0 }).is_err());
    assert!(validate(&FamilySpec::QHamming { q: 1, n: 3 }).is_err());
    assert!(validate(&FamilySpec::SunExt { n: 4, w: 4 }).is_err());
    assert!(validate(&FamilySpec::SunExt { n: 4, w: 0 }).is_err());
    assert!(validate(&FamilySpec::Semispinorial { n: 1 }).is_err());
    assert!(validate(&FamilySpec::Su2 { n: 0 }).is_err());
    assert!(matches!(
        FamilySpec::from_parts("qhamming", Some(2), None, None),
        Err(ValidationError::MissingParam { .. })
    ));
    assert!(matches!(
        FamilySpec::from_parts("nope", None, Some(2), None),
        Err(ValidationError::UnknownFamily(_))
    ));
}

#[test]
fn family_json_round_trip() {
    let spec = FamilySpec::SunExt { n: 6, w: 3 };
    let s = serde_json::to_string(&spec).unwrap();
    assert_eq!(s, r#"{"su-ext":{"n":6,"w":3}}"#);
    let back: FamilySpec = serde_json::from_str(&s).unwrap();
    assert_eq!(back, spec);
    let su2: FamilySpec = serde_json::from_str(r#"{"su2":{"n":6}}"#).unwrap();
    assert_eq!(su2, FamilySpec::Su2 { n: 6 });
}

pub fn any_spec() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (2u32..5, 1u32..7).prop_map(|(q, n)| FamilySpec::QHamming { q, n }),
        (1u32..30).prop_map(|n| FamilySpec::Su2 { n }),
        (2u32..5, 1u32..10).prop_map(|(q, n)| FamilySpec::SuqSym { q, n }),
        (2u32..13)
            .prop_flat_map(|n| (Just(n), 1..n))
            .prop_map(|(n, w)| FamilySpec::SunExt { n, w }),
        (1u32..12).prop_map(|n| FamilySpec::CliffordOdd { n }),
        (1u32..12).prop_map(|n| FamilySpec::CliffordEven { n }),
        (1u32..12).prop_map(|n| FamilySpec::Spinorial { n }),
        (2u32..12).prop_map(|n| FamilySpec::Semispinorial { n }),
    ]
}

proptest! {
    #[test]
    fn layer_dimensions_fill_operator_space(spec in any_spec()) {
        let p = profile(&spec).unwrap();
        let total: BigInt = p.dim_v.iter().sum();
        prop_assert_eq!(total, &p.dim_h * &p.dim_h);
        prop_assert_eq!(p.dim_v.len(), p.r + 1);
        prop_assert_eq!(p.dim_v[0].clone(), BigInt::from(1));
    }
}
