use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use qlp::arith::rational::pow2;
use qlp::arith::{int, rat};
use qlp::lp::*;
use qlp::metric::{profile, FamilySpec};

/// Fourier-Motzkin elimination over `x >= 0`: decides feasibility of a
/// small system without any pivoting.
fn fm_feasible(nvars: usize, cons: &[LinearConstraint]) -> bool {
    // every row as `a . x >= b`
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for c in cons {
        let neg = |v: &[BigRational]| v.iter().map(|x| -x).collect::<Vec<_>>();
        match c.rel {
            Relation::Ge => rows.push((c.coeffs.clone(), c.rhs.clone())),
            Relation::Le => rows.push((neg(&c.coeffs), -&c.rhs)),
            Relation::Eq => {
                rows.push((c.coeffs.clone(), c.rhs.clone()));
                rows.push((neg(&c.coeffs), -&c.rhs));
            }
        }
    }
    for i in 0..nvars {
        let mut e = vec![BigRational::zero(); nvars];
        e[i] = int(1);
        rows.push((e, BigRational::zero()));
    }
    for v in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[v].is_positive() {
                pos.push(r);
            } else if r.0[v].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (fp, fn_) = (-&n.0[v], p.0[v].clone());
                let a: Vec<BigRational> =
                    p.0.iter()
                        .zip(&n.0)
                        .map(|(x, y)| x * &fp + y * &fn_)
                        .collect();
                rest.push((a, &p.1 * &fp + &n.1 * &fn_));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

fn constraint() -> impl Strategy<Value = LinearConstraint> {
    (
        proptest::collection::vec(-4i64..5, 3),
        prop_oneof![Just(Relation::Eq), Just(Relation::Ge), Just(Relation::Le)],
        -6i64..7,
    )
        .prop_map(|(c, rel, b)| LinearConstraint {
            coeffs: c.into_iter().map(int).collect(),
            rel,
            rhs: int(b),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn simplex_agrees_with_elimination(cons in proptest::collection::vec(constraint(), 1..6)) {
        let warm = find_feasible(3, &cons);
        let cold = find_feasible_cold(3, &cons);
        let fm = fm_feasible(3, &cons);
        prop_assert_eq!(warm.is_some(), fm);
        prop_assert_eq!(cold.is_some(), fm);
        for x in warm.iter().chain(cold.iter()) {
            prop_assert!(x.iter().all(|v| !v.is_negative()));
            prop_assert!(cons.iter().all(|c| c.holds(x)));
        }
    }
}

#[test]
fn simplex_small_cases() {
    let c = |v: &[i64], rel, b| LinearConstraint {
        coeffs: v.iter().map(|&x| int(x)).collect(),
        rel,
        rhs: int(b),
    };
    // x + y = 1, x - y >= 2: infeasible with x, y >= 0... x = 1, y = 0 gives 1 < 2
    assert!(find_feasible(
        2,
        &[c(&[1, 1], Relation::Eq, 1), c(&[1, -1], Relation::Ge, 2)]
    )
    .is_none());
    let x = find_feasible(
        2,
        &[c(&[1, 1], Relation::Eq, 3), c(&[1, -1], Relation::Ge, 2)],
    )
    .unwrap();
    assert_eq!(&x[0] + &x[1], int(3));
    assert!(&x[0] - &x[1] >= int(2));
}

#[test]
fn su2_distance_two_is_half_n() {
    for n in [4u32, 6, 10] {
        let spec = FamilySpec::Su2 { n };
        let k = rat(n as i64, 2);
        match feasible_at(&spec, &k, 2, LpOptions::default()).unwrap() {
            Feasibility::Feasible(a) => {
                // the distribution at the bound is unique
                let mut expect = vec![BigRational::zero(); n as usize + 1];
                expect[0] = k.clone();
                expect[n as usize] = &k + int(1);
                assert_eq!(a, expect);
            }
            Feasibility::Infeasible => panic!("su2({n}) should be feasible at n/2"),
        }
        let above = &k + rat(1, 1000);
        assert!(!feasible_at(&spec, &above, 2, LpOptions::default())
            .unwrap()
            .is_feasible());
    }
}

#[test]
fn table_values() {
    let sd = BoundOptions {
        lp: LpOptions {
            self_dual: true,
            pure: false,
        },
        ..BoundOptions::default()
    };
    let plain = BoundOptions::default();
    let near = |r: &BoundResult, v: BigRational| {
        let tol = rat(1, 1000);
        let lo = r.feasible_at.clone().unwrap();
        let hi = r.infeasible_at.clone().unwrap();
        assert!(
            (&lo - &v).abs() <= tol && (&hi - &v).abs() <= tol,
            "{:?} vs {}",
            r,
            v
        );
    };
    near(
        &lp_bound(&FamilySpec::Su2 { n: 8 }, 3, &sd).unwrap(),
        rat(2111, 1000),
    );
    near(
        &lp_bound(&FamilySpec::SuqSym { q: 3, n: 5 }, 3, &plain).unwrap(),
        rat(1667, 1000),
    );
    near(
        &lp_bound(&FamilySpec::CliffordOdd { n: 8 }, 3, &sd).unwrap(),
        rat(112, 10),
    );
    near(
        &lp_bound(&FamilySpec::CliffordEven { n: 6 }, 3, &plain).unwrap(),
        rat(4571, 1000),
    );
}

#[test]
fn integer_mode() {
    let opts = BoundOptions {
        lp: LpOptions {
            self_dual: true,
            pure: false,
        },
        integer: true,
        ..BoundOptions::default()
    };
    let r = lp_bound(&FamilySpec::CliffordOdd { n: 8 }, 3, &opts).unwrap();
    assert_eq!(r.integer_bound, Some(BigInt::from(11)));
    let r = lp_bound(&FamilySpec::CliffordOdd { n: 7 }, 3, &opts).unwrap();
    assert_eq!(r.integer_bound, Some(BigInt::from(8)));
}

#[test]
fn trivial_distances() {
    // d = 1 places no detection requirement beyond A_0 = K
    let spec = FamilySpec::QHamming { q: 2, n: 3 };
    let r = lp_bound(&spec, 1, &BoundOptions::default()).unwrap();
    assert_eq!(r.feasible_at, Some(int(8)));
    assert_eq!(r.infeasible_at, None);
    assert!(feasible_at(&spec, &int(1), 4, LpOptions::default())
        .unwrap()
        .is_feasible());
}

#[test]
fn system_errors() {
    let spec = FamilySpec::Su2 { n: 4 };
    assert!(matches!(
        build_system(&spec, &int(1), 6, LpOptions::default()),
        Err(LpError::DistanceOutOfRange { .. })
    ));
    assert!(matches!(
        build_system(&spec, &int(0), 2, LpOptions::default()),
        Err(LpError::NonPositiveK)
    ));
    let opts = LpOptions {
        self_dual: true,
        pure: false,
    };
    assert!(matches!(
        build_system(&FamilySpec::QHamming { q: 3, n: 2 }, &int(1), 2, opts),
        Err(LpError::NotSelfDual(_))
    ));
    let bad = BoundOptions {
        tolerance: int(0),
        ..BoundOptions::default()
    };
    assert!(matches!(
        lp_bound(&spec, 2, &bad),
        Err(LpError::BadTolerance)
    ));
}

#[test]
fn analytic_bounds() {
    for n in 2..=12u32 {
        let ni = n as i64;
        assert_eq!(
            dist2_bound(&FamilySpec::QHamming { q: 3, n }).unwrap(),
            AnalyticBound::Value(int(3).pow(ni as i32 - 2))
        );
        assert_eq!(
            dist2_bound(&FamilySpec::Su2 { n }).unwrap(),
            AnalyticBound::Value(rat(ni, 2))
        );
        assert_eq!(
            dist2_bound(&FamilySpec::CliffordEven { n }).unwrap(),
            AnalyticBound::Value(pow2(n - 1))
        );
        assert_eq!(
            dist2_bound(&FamilySpec::CliffordOdd { n }).unwrap(),
            AnalyticBound::NotApplicable
        );
        assert_eq!(
            dist2_bound_pure(&FamilySpec::Su2 { n }).unwrap(),
            rat(ni, 2)
        );
        assert_eq!(
            dist2_bound_pure(&FamilySpec::CliffordOdd { n }).unwrap(),
            int(2 * ni - 1) / int(4 * ni) * pow2(n)
        );
        if n >= 4 {
            assert_eq!(
                dist2_bound(&FamilySpec::Spinorial { n }).unwrap(),
                AnalyticBound::Value(pow2(n - 1) / int(ni + 1))
            );
        }
    }
    assert_eq!(
        dist2_bound(&FamilySpec::Spinorial { n: 3 }).unwrap(),
        AnalyticBound::Value(int(2))
    );
    assert_eq!(
        volume_bound(&FamilySpec::CliffordOdd { n: 7 }, 3).unwrap(),
        int(8)
    );
    assert_eq!(volume_bound(&FamilySpec::Su2 { n: 5 }, 2).unwrap(), int(6));
    assert_eq!(volume_bound(&FamilySpec::Su2 { n: 5 }, 1).unwrap(), int(6));
}

#[test]
fn bound_dominance() {
    for spec in [
        FamilySpec::Su2 { n: 6 },
        FamilySpec::QHamming { q: 2, n: 4 },
        FamilySpec::CliffordEven { n: 4 },
        FamilySpec::Spinorial { n: 5 },
    ] {
        let plain = lp_bound(&spec, 2, &BoundOptions::default()).unwrap();
        let sd = lp_bound(
            &spec,
            2,
            &BoundOptions {
                lp: LpOptions {
                    self_dual: true,
                    pure: false,
                },
                ..BoundOptions::default()
            },
        )
        .unwrap();
        assert!(sd.feasible_at <= plain.feasible_at);
        if let AnalyticBound::Value(v) = dist2_bound(&spec).unwrap() {
            assert!(plain.feasible_at.clone().unwrap() <= v);
        }
        assert!(plain.feasible_at.clone().unwrap() <= profile(&spec).unwrap().dim_h_q());
    }
}

#[test]
fn bound_json() {
    let r = lp_bound(&FamilySpec::Su2 { n: 4 }, 2, &BoundOptions::default()).unwrap();
    let js = serde_json::to_value(&r).unwrap();
    assert_eq!(js["feasible_at"], "2");
    let back: BoundResult = serde_json::from_value(js).unwrap();
    assert_eq!(back, r);
}

fn lp_cell() -> impl Strategy<Value = (FamilySpec, usize, bool)> {
    prop_oneof![
        (2u32..9).prop_map(|n| FamilySpec::Su2 { n }),
        (1u32..5).prop_map(|n| FamilySpec::QHamming { q: 2, n }),
        (1u32..4).prop_map(|n| FamilySpec::QHamming { q: 3, n }),
        (1u32..7).prop_map(|n| FamilySpec::CliffordOdd { n }),
        (1u32..5).prop_map(|n| FamilySpec::CliffordEven { n }),
        (2u32..6).prop_map(|n| FamilySpec::SuqSym { q: 3, n }),
        (2u32..8).prop_map(|n| FamilySpec::Semispinorial { n }),
    ]
    .prop_flat_map(|s| {
        let r = profile(&s).unwrap().r;
        (Just(s), 1..=r + 1, any::<bool>())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witnesses_fill_the_space((spec, d, sd) in lp_cell(), num in 1i64..40) {
        let sd = sd && qlp::lambda_signature(&spec).unwrap().signs().is_some();
        let p = profile(&spec).unwrap();
        let k = p.dim_h_q() * rat(num, 40);
        if k < int(1) {
            return Ok(());
        }
        let sys = build_system(&spec, &k, d, LpOptions { self_dual: sd, pure: false }).unwrap();
        if let Feasibility::Feasible(a) = check_feasible(&sys) {
            let total: BigRational = a.iter().sum();
            prop_assert_eq!(total, p.dim_h_q());
            prop_assert!(sys.satisfied_by(&a));
            let cold = find_feasible_cold(sys.nvars(), &sys.rows.iter().map(|r| r.constraint.clone()).collect::<Vec<_>>());
            prop_assert!(cold.is_some());
        }
    }
}

proptest! {
    #[test]
    fn simplest_fraction_in_interval(p in 1i64..500, q in 1i64..60, w in 1i64..400) {
        let a = rat(p, q);
        let b = &a + rat(w, 997);
        let s = simplest_between(&a, &b);
        prop_assert!(s >= a && s <= b);
        let top: i64 = s.denom().try_into().unwrap();
        for den in 1..top {
            let den = int(den);
            let num = (&a * &den).ceil();
            prop_assert!(num > &b * &den, "{} has a simpler fraction", s);
        }
    }
}

#[test]
fn bisection_lands_on_simple_optima() {
    let opts = BoundOptions {
        lp: LpOptions::default(),
        tolerance: default_tolerance(),
        integer: false,
    };
    let r = lp_bound(&FamilySpec::CliffordOdd { n: 5 }, 2, &opts).unwrap();
    assert_eq!(r.feasible_at, Some(int(16)));
    let r = lp_bound(&FamilySpec::Su2 { n: 7 }, 3, &opts).unwrap();
    assert_eq!(r.feasible_at, Some(int(2)));
}
