use num_traits::One;
use proptest::prelude::*;
use qlp::arith::{rat, BigRational, SurdSum};
use qlp::codefile::{CodeFile, LoadedCode};
use qlp::su2::*;

fn sq(p: i64, q: i64) -> SurdSum {
    SurdSum::sqrt(&rat(p, q)).unwrap()
}

fn tabulated_quarter_dim(n: u32) -> usize {
    let n = n as usize;
    match n % 4 {
        0 => n / 4 + 1,
        1 => (n - 1) / 4,
        2 => (n + 2) / 4,
        _ => (n + 1) / 4,
    }
}

fn tabulated_third_dim(n: u32) -> usize {
    let n = n as usize;
    match n % 6 {
        0 => 2 * (n / 6) + 1,
        1 => 2 * ((n - 1) / 6),
        2 => 2 * ((n - 2) / 6) + 1,
        3 => 2 * ((n - 3) / 6) + 1,
        4 => 2 * ((n + 2) / 6),
        _ => 2 * ((n + 1) / 6),
    }
}

type Dense = Vec<Vec<f64>>;

fn idx(n: u32, k: i64) -> usize {
    ((k + n as i64) / 2) as usize
}

/// `E`, `F` in floating point, straight from the matrix action.
fn dense_ef(n: u32) -> (Dense, Dense) {
    let d = n as usize + 1;
    let nn = n as f64;
    let mut e = vec![vec![0.0; d]; d];
    let mut f = vec![vec![0.0; d]; d];
    for k in weights(n) {
        let kf = k as f64;
        if k < n as i64 {
            e[idx(n, k + 2)][idx(n, k)] = ((nn - kf) * (nn + kf + 2.0) / 4.0).sqrt();
        }
        if k > -(n as i64) {
            f[idx(n, k - 2)][idx(n, k)] = ((nn + kf) * (nn - kf + 2.0) / 4.0).sqrt();
        }
    }
    (e, f)
}

fn mm(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    let mut c = vec![vec![0.0; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] != 0.0 {
                for j in 0..d {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn msub(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// Minimum distance by compressing each error to the code with
/// orthonormalised floating point vectors.
fn float_distance(n: u32, vectors: &[Su2Vector]) -> usize {
    let d = n as usize + 1;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut x = vec![0.0; d];
        for (k, a) in v.amps() {
            x[idx(n, *k)] = a.to_f64();
        }
        for b in &basis {
            let c: f64 = b.iter().zip(&x).map(|(p, q)| p * q).sum();
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi -= c * bi;
            }
        }
        let nrm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        basis.push(x.iter().map(|t| t / nrm).collect());
    }
    if basis.len() == 1 {
        return d;
    }
    let (e, f) = dense_ef(n);
    let mut et: Dense = (0..d)
        .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for t in 1..=n as usize {
        et = mm(&e, &et);
        let mut x = et.clone();
        for k in 0..=2 * t {
            if k > 0 {
                x = msub(&mm(&f, &x), &mm(&x, &f));
            }
            let m: Vec<Vec<f64>> = basis
                .iter()
                .map(|wi| {
                    basis
                        .iter()
                        .map(|wj| {
                            (0..d)
                                .map(|a| wi[a] * (0..d).map(|b| x[a][b] * wj[b]).sum::<f64>())
                                .sum()
                        })
                        .collect()
                })
                .collect();
            let scale = x.iter().flatten().map(|v| v.abs()).fold(1.0, f64::max);
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    let want = if i == j { m[0][0] } else { 0.0 };
                    if (m[i][j] - want).abs() > 1e-9 * scale {
                        return t;
                    }
                }
            }
        }
    }
    d
}

#[test]
fn action_examples() {
    let v = Su2Vector::basis(2, 0).unwrap();
    let e = apply(2, Su2Letter::E, &v);
    assert_eq!(e, Su2Vector::from_amps(2, [(2, sq(2, 1))]).unwrap());
    let h = apply(2, Su2Letter::H, &Su2Vector::basis(2, -2).unwrap());
    assert_eq!(
        h,
        Su2Vector::basis(2, -2)
            .unwrap()
            .scale(&SurdSum::from_rational(rat(-2, 1)))
    );
    for n in 0..8 {
        assert!(apply(n, Su2Letter::E, &Su2Vector::basis(n, n as i64).unwrap()).is_zero());
        assert!(apply(n, Su2Letter::F, &Su2Vector::basis(n, -(n as i64)).unwrap()).is_zero());
    }
    assert!(Su2Vector::basis(3, 0).is_err());
    assert!(Su2Vector::basis(3, 5).is_err());
}

fn scaled(x: &ShiftOp, c: i64) -> ShiftOp {
    ShiftOp {
        coeffs: x
            .coeffs
            .iter()
            .map(|(k, v)| (*k, v.scale(&rat(c, 1))))
            .collect(),
        ..x.clone()
    }
}

#[test]
fn commutation_relations() {
    for n in 0..12 {
        let e = ShiftOp::letter(n, Su2Letter::E);
        let f = ShiftOp::letter(n, Su2Letter::F);
        let h = ShiftOp::letter(n, Su2Letter::H);
        assert_eq!(e.compose(&f).sub(&f.compose(&e)), h);
        assert_eq!(h.compose(&e).sub(&e.compose(&h)), scaled(&e, 2));
        assert_eq!(h.compose(&f).sub(&f.compose(&h)), scaled(&f, -2));
        assert_eq!(f.ad(&e), h);
    }
}

#[test]
fn words_apply_right_to_left() {
    let n = 4;
    let v = Su2Vector::basis(n, 0).unwrap();
    let ef = apply_word(n, &[Su2Letter::E, Su2Letter::F], &v);
    let fe = apply_word(n, &[Su2Letter::F, Su2Letter::E], &v);
    // EF - FE = H and H|0> = 0
    assert_eq!(ef, fe);
    let direct = apply(n, Su2Letter::E, &apply(n, Su2Letter::F, &v));
    assert_eq!(ef, direct);
}

fn arb_vector(n: u32) -> impl Strategy<Value = Su2Vector> {
    let len = n as usize + 1;
    proptest::collection::vec((-4i64..5, 1i64..4, 0usize..3), len).prop_map(move |cs| {
        let radicands = [1i64, 2, 3];
        Su2Vector::from_amps(
            n,
            weights(n)
                .zip(cs)
                .map(|(k, (c, q, r))| (k, sq(radicands[r], 1).scale(&rat(c, q)))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn e_and_f_are_adjoint((n, u, v) in (0u32..9).prop_flat_map(|n| (Just(n), arb_vector(n), arb_vector(n)))) {
        let lhs = apply(n, Su2Letter::E, &u).inner(&v);
        let rhs = u.inner(&apply(n, Su2Letter::F, &v));
        prop_assert_eq!(lhs, rhs);
        let lh = apply(n, Su2Letter::H, &u).inner(&v);
        prop_assert_eq!(lh, u.inner(&apply(n, Su2Letter::H, &v)));
    }
}

fn assert_orthonormal(vs: &[Su2Vector]) {
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let g = a.inner(b).to_rational().expect("rational Gram entry");
            let want = if i == j {
                BigRational::one()
            } else {
                rat(0, 1)
            };
            assert_eq!(g, want, "Gram entry ({i},{j})");
        }
    }
}

#[test]
fn constructed_codes_are_orthonormal_with_tabulated_dimensions() {
    for n in 1..=30 {
        let q = code_quarter(n);
        assert_orthonormal(&q);
        assert_eq!(q.len(), tabulated_quarter_dim(n), "quarter n={n}");
    }
    for n in 4..=30 {
        let c = code_third(n).unwrap();
        assert_orthonormal(&c);
        assert_eq!(c.len(), tabulated_third_dim(n), "third n={n}");
    }
    assert_eq!(code_quarter(8).len(), 3);
    assert_eq!(code_quarter(5).len(), 1);
    assert_eq!(code_quarter(7).len(), 2);
    assert_eq!(code_third(12).unwrap().len(), 5);
    assert_eq!(code_third(7).unwrap().len(), 2);
    assert!(matches!(code_third(3), Err(Su2Error::TooSmall(3))));
}

#[test]
fn psi_pairs_have_expected_amplitudes() {
    let [a, b] = psi_pair(8, 8);
    assert_eq!(a.amp(-6), sq(8, 14));
    assert_eq!(a.amp(8), -sq(6, 14));
    assert_eq!(b.amp(-8), sq(6, 14));
    assert_eq!(b.amp(6), sq(8, 14));
}

#[test]
fn third_codes_have_distance_two() {
    for n in 4..=20 {
        let c = code_third(n).unwrap();
        assert_eq!(min_distance(n, &c).unwrap(), 2, "n={n}");
    }
    let c6 = code_third(6).unwrap();
    assert_eq!(c6.len(), 3);
    assert_eq!(min_distance(6, &c6).unwrap(), 2);
}

#[test]
fn quarter_codes_have_distance_two() {
    assert_eq!(min_distance(8, &code_quarter(8)).unwrap(), 2);
    for n in 3..=24 {
        let c = code_quarter(n);
        let want = if c.len() == 1 { n as usize + 1 } else { 2 };
        assert_eq!(min_distance(n, &c).unwrap(), want, "n={n}");
    }
}

#[test]
fn exact_distance_matches_floating_point() {
    for n in 4..=12 {
        let c = code_third(n).unwrap();
        assert_eq!(min_distance(n, &c).unwrap(), float_distance(n, &c));
        let q = code_quarter(n);
        if !q.is_empty() {
            assert_eq!(min_distance(n, &q).unwrap(), float_distance(n, &q));
        }
    }
    // small ad hoc codes, including ones of larger distance
    let cases: Vec<(u32, Vec<Vec<(i64, i64)>>)> = vec![
        (4, vec![vec![(4, 1)], vec![(-4, 1)]]),
        (6, vec![vec![(6, 1)], vec![(-6, 1)]]),
        (5, vec![vec![(5, 1), (-5, 1)], vec![(1, 1)]]),
        (4, vec![vec![(2, 1)], vec![(0, 1)]]),
    ];
    for (n, vs) in cases {
        let vs: Vec<Su2Vector> = vs
            .into_iter()
            .map(|v| {
                Su2Vector::from_amps(
                    n,
                    v.into_iter()
                        .map(|(k, c)| (k, SurdSum::from_rational(rat(c, 1)))),
                )
                .unwrap()
            })
            .collect();
        assert_eq!(
            min_distance(n, &vs).unwrap(),
            float_distance(n, &vs),
            "n={n}"
        );
    }
}

#[test]
fn single_vectors_detect_everything() {
    let v = vec![Su2Vector::basis(3, 3).unwrap()];
    assert_eq!(min_distance(3, &v).unwrap(), 4);
}

#[test]
fn bad_inputs_are_rejected() {
    let a = Su2Vector::basis(4, 0).unwrap();
    let b = a.add(&Su2Vector::basis(4, 2).unwrap());
    assert!(matches!(
        min_distance(4, &[a.clone(), b]),
        Err(Su2Error::NotOrthogonal(0, 1))
    ));
    let irr = Su2Vector::from_amps(4, [(0, sq(2, 1).add_one())]).unwrap();
    assert!(matches!(
        min_distance(4, &[irr]),
        Err(Su2Error::IrrationalNorm(0))
    ));
    assert!(matches!(min_distance(4, &[]), Err(Su2Error::EmptyCode)));
    assert!(matches!(
        min_distance(5, &[a]),
        Err(Su2Error::Mismatch { .. })
    ));
}

trait AddOne {
    fn add_one(&self) -> SurdSum;
}

impl AddOne for SurdSum {
    fn add_one(&self) -> SurdSum {
        self + &SurdSum::one()
    }
}

#[test]
fn code_files_round_trip() {
    for n in [6u32, 9, 13] {
        let c = code_third(n).unwrap();
        let text = CodeFile::from_su2(n, &c).to_json();
        let back = CodeFile::parse(&text).unwrap().load().unwrap();
        assert_eq!(back, LoadedCode::Su2 { n, vectors: c });
    }
    let text = r#"{"family":{"su2":{"n":2}},"kind":"su2-vectors",
        "vectors":[[{"k":-2,"amp":[{"c":"1/1","r":6}]}]]}"#;
    let LoadedCode::Su2 { n, vectors } = CodeFile::parse(text).unwrap().load().unwrap() else {
        panic!("expected an su(2) code");
    };
    assert_eq!(n, 2);
    assert_eq!(vectors[0].amp(-2), sq(6, 1));
    let bad = r#"{"family":{"su2":{"n":2}},"kind":"su2-vectors","vectors":[[{"k":1,"amp":[]}]]}"#;
    assert!(CodeFile::parse(bad).unwrap().load().is_err());
    assert!(CodeFile::parse("{\"kind\": \"su2-vectors\",").is_err());
}

#[test]
fn psi_four_block_with_vacuum_has_distance_one() {
    // |0>, sqrt(2/3)|-2> - sqrt(1/3)|4>, sqrt(1/3)|-4> + sqrt(2/3)|2>
    let n = 6;
    let listed = vec![
        Su2Vector::basis(n, 0).unwrap(),
        Su2Vector::from_amps(n, [(-2, sq(2, 3)), (4, -sq(1, 3))]).unwrap(),
        Su2Vector::from_amps(n, [(-4, sq(1, 3)), (2, sq(2, 3))]).unwrap(),
    ];
    assert_orthonormal(&listed);
    assert_eq!(min_distance(n, &listed).unwrap(), 1);
    assert_eq!(float_distance(n, &listed), 1);
    let [a, b] = psi_pair(n, 4);
    assert_eq!((a, b), (listed[1].clone(), listed[2].clone()));
}
