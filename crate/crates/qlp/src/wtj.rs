//! Closed-form coefficients `W_t(j)`: the eigenvalue of the projected
//! twirl `Phi_t` on the layer `V_j`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{binomial_q, factorial_q, int, pow2, serde_rat, sign};
use crate::metric::{profile, FamilySpec, MetricProfile, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtjMatrix {
    pub family: FamilySpec,
    /// `entries[t][j] = W_t(j)`.
    #[serde(with = "serde_rat::mat")]
    pub entries: Vec<Vec<BigRational>>,
}

impl WtjMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, t: usize, j: usize) -> &BigRational {
        &self.entries[t][j]
    }

    pub fn row(&self, t: usize) -> &[BigRational] {
        &self.entries[t]
    }

    /// `W * v`.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn square(&self) -> Vec<Vec<BigRational>> {
        let m = self.size();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|k| {
                        (0..m)
                            .map(|j| &self.entries[i][j] * &self.entries[j][k])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Eigenvalues of `X -> Lambda conj(X) Lambda^*` on each layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelfDualSignature {
    SelfDual(Vec<i8>),
    NotSelfDual,
}

impl SelfDualSignature {
    pub fn signs(&self) -> Option<&[i8]> {
        match self {
            SelfDualSignature::SelfDual(v) => Some(v),
            SelfDualSignature::NotSelfDual => None,
        }
    }
}

fn qhamming(q: i64, n: i64, t: i64, j: i64) -> BigRational {
    let mut acc = BigRational::zero();
    let qq = int(q * q - 1);
    for s in 0..=t {
        let term = binomial_q(j, s) * binomial_q(n - j, t - s);
        if term.is_zero() {
            continue;
        }
        acc += sign(s) * num_traits::pow(qq.clone(), (t - s) as usize) * term;
    }
    acc / int(q).pow(n as i32)
}

fn su2(n: i64, t: i64, j: i64) -> BigRational {
    let f = factorial_q;
    let pre = sign(t + j) * int(2 * t + 1) * f(t).pow(2) * f(j).pow(2) * f(n - t) * f(n - j)
        / (f(n + t + 1) * f(n + j + 1));
    let mut acc = BigRational::zero();
    for s in t.max(j)..=(t + j).min(n) {
        acc += sign(s) * f(n + s + 1)
            / (f(s - t).pow(2) * f(s - j).pow(2) * f(t + j - s).pow(2) * f(n - s));
    }
    pre * acc
}

fn su_sym(q: i64, n: i64, t: i64, j: i64) -> BigRational {
    let f = factorial_q;
    let pre = int(2 * t + q - 1) * f(n - j) * f(n + j + q - 1) / (f(n - t) * f(n + t + q - 1));
    let mut acc = BigRational::zero();
    for s in 0.max(t + j - n)..=t {
        acc += sign(s) * f(2 * t + q - 2 - s) * f(s + n - t).pow(2)
            / (f(s) * f(s - (t + j - n)) * f(s + n - t + j + q - 1) * f(t - s).pow(2));
    }
    pre * acc
}

fn su_ext(n: i64, w: i64, t: i64, j: i64) -> BigRational {
    let f = factorial_q;
    let r = w.min(n - w);
    let pre = int(n - 2 * t + 1) * f(r - j) * f(n - r - t) / (f(r - t) * f(n - r - j));
    let mut acc = BigRational::zero();
    for s in 0.max(t + j - r)..=t {
        acc += sign(s) * f(n - r + t - j - s) * f(s + r - t).pow(2)
            / (f(s) * f(s - (t + j - r)) * f(s + n - 2 * t + 1) * f(t - s).pow(2));
    }
    pre * acc
}

/// Signed Krawtchouk sum `sum_s (-1)^s C(j,s) C(m-j,t-s)`.
fn krawtchouk(m: i64, t: i64, j: i64) -> BigRational {
    (0..=t)
        .map(|s| sign(s) * binomial_q(j, s) * binomial_q(m - j, t - s))
        .sum()
}

fn clifford(m: i64, n: i64, t: i64, j: i64) -> BigRational {
    sign(t * j) * krawtchouk(m, t, j) / pow2(n as u32)
}

fn spinorial(n: i64, t: i64, j: i64) -> BigRational {
    krawtchouk(2 * n + 1, 2 * t, 2 * j) / pow2(n as u32)
}

fn semispinorial(n: i64, t: i64, j: i64) -> BigRational {
    let k = krawtchouk(2 * n, 2 * t, 2 * j);
    if 2 * t == n {
        k / pow2(n as u32)
    } else {
        k / pow2(n as u32 - 1)
    }
}

/// One coefficient `W_t(j)` from its closed form.
pub fn entry(spec: &FamilySpec, t: usize, j: usize) -> BigRational {
    let (t, j) = (t as i64, j as i64);
    match *spec {
        FamilySpec::QHamming { q, n } => qhamming(q as i64, n as i64, t, j),
        FamilySpec::Su2 { n } => su2(n as i64, t, j),
        FamilySpec::SuqSym { q, n } => su_sym(q as i64, n as i64, t, j),
        FamilySpec::SunExt { n, w } => su_ext(n as i64, w as i64, t, j),
        FamilySpec::CliffordOdd { n } => clifford(2 * n as i64 + 1, n as i64, t, j),
        FamilySpec::CliffordEven { n } => clifford(2 * n as i64, n as i64, t, j),
        FamilySpec::Spinorial { n } => spinorial(n as i64, t, j),
        FamilySpec::Semispinorial { n } => semispinorial(n as i64, t, j),
    }
}

/// Builds the full matrix without consulting the cache.
pub fn compute_matrix(spec: &FamilySpec) -> Result<WtjMatrix, ValidationError> {
    let p = profile(spec)?;
    let entries = (0..=p.r)
        .map(|t| (0..=p.r).map(|j| entry(spec, t, j)).collect())
        .collect();
    Ok(WtjMatrix {
        family: *spec,
        entries,
    })
}

fn cache() -> &'static Mutex<HashMap<FamilySpec, Arc<WtjMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<FamilySpec, Arc<WtjMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached `W` matrix for a family.
pub fn wtj_matrix(spec: &FamilySpec) -> Result<Arc<WtjMatrix>, ValidationError> {
    if let Some(m) = cache().lock().unwrap().get(spec) {
        return Ok(m.clone());
    }
    let m = Arc::new(compute_matrix(spec)?);
    cache().lock().unwrap().entry(*spec).or_insert(m.clone());
    Ok(m)
}

pub fn lambda_signature(spec: &FamilySpec) -> Result<SelfDualSignature, ValidationError> {
    let p = profile(spec)?;
    let alternating = || (0..=p.r).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
    let sig = match *spec {
        FamilySpec::QHamming { q, .. } | FamilySpec::SuqSym { q, .. } => {
            if q == 2 {
                SelfDualSignature::SelfDual(alternating())
            } else {
                SelfDualSignature::NotSelfDual
            }
        }
        FamilySpec::Su2 { .. } | FamilySpec::Spinorial { .. } => {
            SelfDualSignature::SelfDual(alternating())
        }
        FamilySpec::SunExt { n, w } => {
            if n == 2 * w {
                SelfDualSignature::SelfDual(alternating())
            } else {
                SelfDualSignature::NotSelfDual
            }
        }
        FamilySpec::Semispinorial { n } => {
            if n % 2 == 0 {
                SelfDualSignature::SelfDual(alternating())
            } else {
                SelfDualSignature::NotSelfDual
            }
        }
        FamilySpec::CliffordOdd { n } | FamilySpec::CliffordEven { n } => {
            let n = n as usize;
            SelfDualSignature::SelfDual(
                (0..=p.r)
                    .map(|j| {
                        if (j * (j + 2 * n - 1) / 2) % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect(),
            )
        }
    };
    Ok(sig)
}

/// Checks that the spinorial matrix agrees with the odd Clifford matrix at
/// doubled indices, folding `2t > n` back via `V_t = V_{2n+1-t}`.
pub fn spinorial_consistency(n: u32) -> bool {
    let spin = compute_matrix(&FamilySpec::Spinorial { n }).expect("n >= 1");
    let odd = compute_matrix(&FamilySpec::CliffordOdd { n }).expect("n >= 1");
    let n = n as usize;
    let fold = |k: usize| if k > n { 2 * n + 1 - k } else { k };
    (0..=n).all(|t| (0..=n).all(|j| spin.entries[t][j] == odd.entries[fold(2 * t)][fold(2 * j)]))
}

/// The four identities every `W` must satisfy, reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtjChecks {
    pub involution: bool,
    pub symmetry: bool,
    pub first_column: bool,
    pub first_row: bool,
}

impl WtjChecks {
    pub fn all(&self) -> bool {
        self.involution && self.symmetry && self.first_column && self.first_row
    }
}

pub fn check_identities(w: &WtjMatrix, p: &MetricProfile) -> WtjChecks {
    let m = w.size();
    let sq = w.square();
    let involution = (0..m).all(|i| {
        (0..m).all(|k| {
            sq[i][k]
                == if i == k {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
        })
    });
    let symmetry = (0..m).all(|t| {
        (0..m).all(|j| &w.entries[t][j] * p.dim_v_q(j) == &w.entries[j][t] * p.dim_v_q(t))
    });
    let dh = p.dim_h_q();
    let first_column = (0..m).all(|t| w.entries[t][0] == p.dim_v_q(t) / &dh);
    let first_row = (0..m).all(|j| w.entries[0][j] == dh.recip());
    WtjChecks {
        involution,
        symmetry,
        first_column,
        first_row,
    }
}
