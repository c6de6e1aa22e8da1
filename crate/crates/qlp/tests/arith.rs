use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use qlp::arith::rational::{checked_div, to_decimal};
use qlp::arith::surd::squarefree_split;
use qlp::arith::{
    format_rational, gr_div, gr_int, int, parse_rational, rat, ArithError, GaussianRational,
    SurdSum,
};

fn sqrt_int(n: i64) -> SurdSum {
    SurdSum::sqrt(&int(n)).unwrap()
}

#[test]
fn rational_strings() {
    assert_eq!(format_rational(&rat(6, 4)), "3/2");
    assert_eq!(format_rational(&rat(-8, 4)), "-2");
    assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
    assert_eq!(parse_rational("1/1").unwrap(), int(1));
    assert_eq!(parse_rational("-7").unwrap(), int(-7));
    assert!(parse_rational("x/2").is_err());
    assert_eq!(parse_rational("1/0"), Err(ArithError::DivisionByZero));
    assert_eq!(
        checked_div(&int(1), &int(0)),
        Err(ArithError::DivisionByZero)
    );
}

#[test]
fn decimal_rendering() {
    assert_eq!(to_decimal(&rat(19, 9), 3), "2.111");
    assert_eq!(to_decimal(&rat(80, 3), 3), "26.667");
    assert_eq!(to_decimal(&rat(56, 5), 3), "11.2");
    assert_eq!(to_decimal(&int(8), 3), "8");
    assert_eq!(to_decimal(&rat(1, 2000), 3), "0.001");
}

#[test]
fn gaussian_basics() {
    let i = gr_int(0, 1);
    assert_eq!(&i * &i, gr_int(-1, 0));
    assert_eq!(gr_div(&gr_int(1, 0), &i).unwrap(), gr_int(0, -1));
    assert_eq!(gr_div(&i, &gr_int(0, 0)), Err(ArithError::DivisionByZero));
    let z: GaussianRational = gr_int(3, -4);
    assert_eq!(z.norm_sqr(), int(25));
}

#[test]
fn surd_products_reduce() {
    assert_eq!(
        &sqrt_int(6) * &sqrt_int(10),
        SurdSum::term(int(2), BigUint::from(15u32))
    );
    assert_eq!(&sqrt_int(2) * &sqrt_int(8), SurdSum::from_rational(int(4)));
    assert_eq!(sqrt_int(12), SurdSum::term(int(2), BigUint::from(3u32)));
    let half = SurdSum::sqrt(&rat(1, 2)).unwrap();
    assert_eq!(&half * &half, SurdSum::from_rational(rat(1, 2)));
    assert_eq!(SurdSum::sqrt(&int(-1)), Err(ArithError::NegativeRadicand));
    assert_eq!(sqrt_int(0), SurdSum::zero());
    let s = &sqrt_int(2) - &sqrt_int(2);
    assert!(s.is_zero());
}

#[test]
fn surd_json_round_trip() {
    let s = &SurdSum::from_rational(rat(1, 3)) + &SurdSum::term(rat(-1, 2), BigUint::from(6u32));
    let js = serde_json::to_string(&s).unwrap();
    assert_eq!(js, r#"[{"c":"1/3","r":1},{"c":"-1/2","r":6}]"#);
    let back: SurdSum = serde_json::from_str(&js).unwrap();
    assert_eq!(back, s);
    let unnormalised: SurdSum = serde_json::from_str(r#"[{"c":"1/1","r":8}]"#).unwrap();
    assert_eq!(unnormalised, SurdSum::term(int(2), BigUint::from(2u32)));
}

#[test]
fn squarefree_of_large_inputs() {
    let p = BigUint::from(1_000_003u64);
    let (s, f) = squarefree_split(&(&p * &p * 12u32));
    assert_eq!(s, &p * 2u32);
    assert_eq!(f, BigUint::from(3u32));
    let q = BigUint::from(1_000_033u64);
    let (s, f) = squarefree_split(&(&p * &q));
    assert_eq!(s, BigUint::from(1u32));
    assert_eq!(f, &p * &q);
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..30).prop_map(|(p, q)| rat(p, q))
}

fn small_surd() -> impl Strategy<Value = SurdSum> {
    proptest::collection::vec((small_rat(), 1u64..40), 0..4).prop_map(|ts| {
        ts.into_iter().fold(SurdSum::zero(), |acc, (c, r)| {
            &acc + &SurdSum::term(c, BigUint::from(r))
        })
    })
}

proptest! {
    #[test]
    fn rational_string_round_trip(x in small_rat()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn gaussian_field_axioms(a in small_rat(), b in small_rat(), c in small_rat(), d in small_rat()) {
        let x = qlp::arith::gr(a, b);
        let y = qlp::arith::gr(c, d);
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.re.eq(&int(0)) || !y.im.eq(&int(0)) {
            let q = gr_div(&x, &y).unwrap();
            prop_assert_eq!(&q * &y, x.clone());
        }
        prop_assert_eq!((&x * &x.conj()).im, int(0));
    }

    #[test]
    fn surd_ring_laws(a in small_surd(), b in small_surd(), c in small_surd()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        let sq = &a * &a;
        prop_assert!(sq.to_f64() >= -1e-9);
    }

    #[test]
    fn surd_sqrt_squares_back(x in (0i64..500, 1i64..100).prop_map(|(p, q)| rat(p, q))) {
        let s = SurdSum::sqrt(&x).unwrap();
        prop_assert_eq!((&s * &s).to_rational(), Some(x));
    }

    #[test]
    fn squarefree_split_is_exact(m in 1u64..2_000_000) {
        let (s, f) = squarefree_split(&BigUint::from(m));
        prop_assert_eq!(&s * &s * &f, BigUint::from(m));
        let mut k = 2u64;
        while k * k <= 2_000_000 {
            prop_assert!(&f % BigUint::from(k * k) != BigUint::from(0u32));
            k += 1;
        }
    }
}
