//! Catalog of error-metric families and their Hilbert-space profiles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilySpec {
    #[serde(rename = "qhamming")]
    QHamming { q: u32, n: u32 },
    #[serde(rename = "su2")]
    Su2 { n: u32 },
    #[serde(rename = "su-sym")]
    SuqSym { q: u32, n: u32 },
    #[serde(rename = "su-ext")]
    SunExt { n: u32, w: u32 },
    #[serde(rename = "clifford-odd")]
    CliffordOdd { n: u32 },
    #[serde(rename = "clifford-even")]
    CliffordEven { n: u32 },
    #[serde(rename = "spinorial")]
    Spinorial { n: u32 },
    #[serde(rename = "semispinorial")]
    Semispinorial { n: u32 },
}

pub const FAMILY_NAMES: [&str; 8] = [
    "qhamming",
    "su2",
    "su-sym",
    "su-ext",
    "clifford-odd",
    "clifford-even",
    "spinorial",
    "semispinorial",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` needs parameter `{param}`")]
    MissingParam { family: String, param: &'static str },
    #[error("invalid parameters for {0}: {1}")]
    OutOfRange(String, String),
}

impl FamilySpec {
    /// Builds a spec from a CLI family name and optional parameters.
    pub fn from_parts(
        name: &str,
        q: Option<u32>,
        n: Option<u32>,
        w: Option<u32>,
    ) -> Result<FamilySpec, ValidationError> {
        let need = |v: Option<u32>, param: &'static str| {
            v.ok_or(ValidationError::MissingParam {
                family: name.to_string(),
                param,
            })
        };
        let spec = match name {
            "qhamming" => FamilySpec::QHamming {
                q: need(q, "q")?,
                n: need(n, "n")?,
            },
            "su2" => FamilySpec::Su2 { n: need(n, "n")? },
            "su-sym" => FamilySpec::SuqSym {
                q: need(q, "q")?,
                n: need(n, "n")?,
            },
            "su-ext" => FamilySpec::SunExt {
                n: need(n, "n")?,
                w: need(w, "w")?,
            },
            "clifford-odd" => FamilySpec::CliffordOdd { n: need(n, "n")? },
            "clifford-even" => FamilySpec::CliffordEven { n: need(n, "n")? },
            "spinorial" => FamilySpec::Spinorial { n: need(n, "n")? },
            "semispinorial" => FamilySpec::Semispinorial { n: need(n, "n")? },
            other => return Err(ValidationError::UnknownFamily(other.to_string())),
        };
        validate(&spec)?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::QHamming { .. } => "qhamming",
            FamilySpec::Su2 { .. } => "su2",
            FamilySpec::SuqSym { .. } => "su-sym",
            FamilySpec::SunExt { .. } => "su-ext",
            FamilySpec::CliffordOdd { .. } => "clifford-odd",
            FamilySpec::CliffordEven { .. } => "clifford-even",
            FamilySpec::Spinorial { .. } => "spinorial",
            FamilySpec::Semispinorial { .. } => "semispinorial",
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            FamilySpec::QHamming { n, .. }
            | FamilySpec::Su2 { n }
            | FamilySpec::SuqSym { n, .. }
            | FamilySpec::SunExt { n, .. }
            | FamilySpec::CliffordOdd { n }
            | FamilySpec::CliffordEven { n }
            | FamilySpec::Spinorial { n }
            | FamilySpec::Semispinorial { n } => n,
        }
    }

    /// Same family with `n` replaced.
    pub fn with_n(&self, n: u32) -> FamilySpec {
        let mut s = *self;
        match &mut s {
            FamilySpec::QHamming { n: m, .. }
            | FamilySpec::Su2 { n: m }
            | FamilySpec::SuqSym { n: m, .. }
            | FamilySpec::SunExt { n: m, .. }
            | FamilySpec::CliffordOdd { n: m }
            | FamilySpec::CliffordEven { n: m }
            | FamilySpec::Spinorial { n: m }
            | FamilySpec::Semispinorial { n: m } => *m = n,
        }
        s
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::QHamming { q, n } => write!(f, "qhamming(q={q},n={n})"),
            FamilySpec::SuqSym { q, n } => write!(f, "su-sym(q={q},n={n})"),
            FamilySpec::SunExt { n, w } => write!(f, "su-ext(n={n},w={w})"),
            other => write!(f, "{}(n={})", other.name(), other.n()),
        }
    }
}

pub fn validate(spec: &FamilySpec) -> Result<(), ValidationError> {
    let bad = |msg: &str| {
        Err(ValidationError::OutOfRange(
            spec.to_string(),
            msg.to_string(),
        ))
    };
    match *spec {
        FamilySpec::QHamming { q, n } | FamilySpec::SuqSym { q, n } => {
            if q < 2 {
                return bad("q must be at least 2");
            }
            if n < 1 {
                return bad("n must be at least 1");
            }
        }
        FamilySpec::SunExt { n, w } => {
            if n < 2 {
                return bad("n must be at least 2");
            }
            if w < 1 || w >= n {
                return bad("w must satisfy 1 <= w <= n-1");
            }
        }
        FamilySpec::Semispinorial { n } => {
            if n < 2 {
                return bad("n must be at least 2");
            }
        }
        FamilySpec::Su2 { n }
        | FamilySpec::CliffordOdd { n }
        | FamilySpec::CliffordEven { n }
        | FamilySpec::Spinorial { n } => {
            if n < 1 {
                return bad("n must be at least 1");
            }
        }
    }
    Ok(())
}

/// Hilbert-space dimension, metric diameter and the dimensions of the
/// operator layers `V_0..V_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricProfile {
    pub family: FamilySpec,
    pub dim_h: BigInt,
    pub r: usize,
    pub dim_v: Vec<BigInt>,
}

impl MetricProfile {
    pub fn dim_h_q(&self) -> BigRational {
        BigRational::from_integer(self.dim_h.clone())
    }

    pub fn dim_v_q(&self, t: usize) -> BigRational {
        BigRational::from_integer(self.dim_v[t].clone())
    }
}

fn pow(base: u64, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

fn exact(x: BigRational) -> BigInt {
    assert!(x.is_integer(), "layer dimension is not an integer");
    x.to_integer()
}

pub fn profile(spec: &FamilySpec) -> Result<MetricProfile, ValidationError> {
    validate(spec)?;
    let (dim_h, r, dim_v): (BigInt, usize, Vec<BigInt>) = match *spec {
        FamilySpec::QHamming { q, n } => {
            let q = q as u64;
            let v = (0..=n)
                .map(|t| pow(q * q - 1, t) * binomial(n as i64, t as i64))
                .collect();
            (pow(q, n), n as usize, v)
        }
        FamilySpec::Su2 { n } => {
            let v = (0..=n as i64).map(|t| BigInt::from(2 * t + 1)).collect();
            (BigInt::from(n + 1), n as usize, v)
        }
        FamilySpec::SuqSym { q, n } => {
            let (q, n) = (q as i64, n as i64);
            let v = (0..=n)
                .map(|t| {
                    let c = binomial(q + t - 2, q - 2);
                    exact(
                        BigRational::new((2 * t + q - 1).into(), (q - 1).into())
                            * BigRational::from_integer(&c * &c),
                    )
                })
                .collect();
            (binomial(n + q - 1, q - 1), n as usize, v)
        }
        FamilySpec::SunExt { n, w } => {
            let (n, w) = (n as i64, w as i64);
            let r = w.min(n - w);
            let v = (0..=r)
                .map(|t| {
                    let c = binomial(n + 1, t);
                    exact(
                        BigRational::new((n - 2 * t + 1).into(), (n + 1).into())
                            * BigRational::from_integer(&c * &c),
                    )
                })
                .collect();
            (binomial(n, w), r as usize, v)
        }
        FamilySpec::CliffordOdd { n } => {
            let v = (0..=n as i64)
                .map(|t| binomial(2 * n as i64 + 1, t))
                .collect();
            (pow(2, n), n as usize, v)
        }
        FamilySpec::CliffordEven { n } => {
            let v = (0..=2 * n as i64)
                .map(|t| binomial(2 * n as i64, t))
                .collect();
            (pow(2, n), 2 * n as usize, v)
        }
        FamilySpec::Spinorial { n } => {
            let v = (0..=n as i64)
                .map(|t| binomial(2 * n as i64 + 1, 2 * t))
                .collect();
            (pow(2, n), n as usize, v)
        }
        FamilySpec::Semispinorial { n } => {
            let n = n as i64;
            let v = (0..=n / 2)
                .map(|t| {
                    let c = binomial(2 * n, 2 * t);
                    if 2 * t == n {
                        c / 2
                    } else {
                        c
                    }
                })
                .collect();
            (pow(2, n as u32 - 1), (n / 2) as usize, v)
        }
    };
    Ok(MetricProfile {
        family: *spec,
        dim_h,
        r,
        dim_v,
    })
}
