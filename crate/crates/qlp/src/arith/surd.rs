use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, from_bigint, parse_rational};
use super::ArithError;

/// A finite sum `sum_i c_i * sqrt(r_i)` with rational `c_i` and distinct
/// squarefree radicands `r_i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SurdSum {
    terms: BTreeMap<BigUint, BigRational>,
}

const TRIAL_CUTOFF: u64 = 1 << 20;

/// Splits `m` into `(s, f)` with `m = s^2 * f` and `f` squarefree.
pub fn squarefree_split(m: &BigUint) -> (BigUint, BigUint) {
    if m.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = m.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    loop {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p == TRIAL_CUTOFF {
            // every prime factor left is at least the cutoff
            let r = rest.sqrt();
            if &r * &r == rest {
                return (square * r, free);
            }
            if rest < &pb * &pb * &pb {
                break;
            }
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= rest;
    (square, free)
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn one() -> Self {
        SurdSum::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut s = SurdSum::zero();
        s.add_term(BigUint::one(), c);
        s
    }

    /// `c * sqrt(r)` for arbitrary positive integer `r`.
    pub fn term(c: BigRational, r: BigUint) -> Self {
        let (sq, free) = squarefree_split(&r);
        let c = c * from_bigint(sq.into());
        let mut s = SurdSum::zero();
        s.add_term(free, c);
        s
    }

    /// Exact square root of a nonnegative rational.
    pub fn sqrt(x: &BigRational) -> Result<Self, ArithError> {
        if x.is_negative() {
            return Err(ArithError::NegativeRadicand);
        }
        if x.is_zero() {
            return Ok(SurdSum::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let p = x.numer().magnitude().clone();
        let q = x.denom().magnitude().clone();
        let c = BigRational::new(1.into(), q.clone().into());
        Ok(SurdSum::term(c, p * q))
    }

    fn add_term(&mut self, r: BigUint, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(r.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&r);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return SurdSum::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(r, x)| (r.clone(), x * c)).collect(),
        }
    }

    pub fn div_rational(&self, c: &BigRational) -> Result<Self, ArithError> {
        if c.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.scale(&c.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }
}

impl Add for &SurdSum {
    type Output = SurdSum;
    fn add(self, o: &SurdSum) -> SurdSum {
        let mut s = self.clone();
        for (r, c) in &o.terms {
            s.add_term(r.clone(), c.clone());
        }
        s
    }
}

impl Sub for &SurdSum {
    type Output = SurdSum;
    fn sub(self, o: &SurdSum) -> SurdSum {
        let mut s = self.clone();
        for (r, c) in &o.terms {
            s.add_term(r.clone(), -c.clone());
        }
        s
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| (r.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &SurdSum {
    type Output = SurdSum;
    fn mul(self, o: &SurdSum) -> SurdSum {
        let mut s = SurdSum::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &o.terms {
                // both squarefree: sqrt(a) sqrt(b) = g sqrt(a/g * b/g)
                let g = ra.gcd(rb);
                let r = (ra / &g) * (rb / &g);
                s.add_term(r, ca * cb * from_bigint(g.into()));
            }
        }
        s
    }
}

impl Add for SurdSum {
    type Output = SurdSum;
    fn add(self, o: SurdSum) -> SurdSum {
        &self + &o
    }
}

impl Sub for SurdSum {
    type Output = SurdSum;
    fn sub(self, o: SurdSum) -> SurdSum {
        &self - &o
    }
}

impl Mul for SurdSum {
    type Output = SurdSum;
    fn mul(self, o: SurdSum) -> SurdSum {
        &self * &o
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| {
                if r.is_one() {
                    format_rational(c)
                } else {
                    format!("{}*sqrt({})", format_rational(c), r)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TermRepr {
    c: String,
    r: serde_json::Value,
}

impl serde::Serialize for SurdSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(r, c)| TermRepr {
                c: format_rational(c),
                r: match r.to_u64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(r.to_string()),
                },
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for SurdSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut s = SurdSum::zero();
        for t in v {
            let c = parse_rational(&t.c).map_err(D::Error::custom)?;
            let r: BigUint = match &t.r {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| D::Error::custom("radicand must be a positive integer"))?,
                serde_json::Value::String(x) => x.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("bad radicand")),
            };
            if r.is_zero() {
                return Err(D::Error::custom("radicand must be positive"));
            }
            s = &s + &SurdSum::term(c, r);
        }
        Ok(s)
    }
}
