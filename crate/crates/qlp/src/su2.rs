//! The (n+1)-dimensional irreducible representation of su(2) with exact
//! surd matrix entries, and codes of minimum distance 2 inside it.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{int, rat};
use crate::arith::SurdSum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Su2Error {
    #[error("weight {k} is not admissible for n = {n}")]
    BadWeight { n: u32, k: i64 },
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("vector {0} has an irrational squared norm")]
    IrrationalNorm(usize),
    #[error("vectors {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("vector {index} lives in n = {found}, expected {expected}")]
    Mismatch {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error("the code is zero-dimensional")]
    EmptyCode,
    #[error("density 1/3 codes need n >= 4, got {0}")]
    TooSmall(u32),
}

/// A vector in the weight basis `|k>`, `k = -n, -n+2, .., n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Su2Vector {
    n: u32,
    amps: BTreeMap<i64, SurdSum>,
}

/// One weight component, as stored in code files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su2Entry {
    pub k: i64,
    pub amp: SurdSum,
}

pub fn admissible(n: u32, k: i64) -> bool {
    let n = n as i64;
    k.abs() <= n && (n - k) % 2 == 0
}

impl Su2Vector {
    pub fn zero(n: u32) -> Self {
        Su2Vector {
            n,
            amps: BTreeMap::new(),
        }
    }

    /// The weight vector `|k>`.
    pub fn basis(n: u32, k: i64) -> Result<Self, Su2Error> {
        Su2Vector::from_amps(n, [(k, SurdSum::one())])
    }

    pub fn from_amps(
        n: u32,
        amps: impl IntoIterator<Item = (i64, SurdSum)>,
    ) -> Result<Self, Su2Error> {
        let mut v = Su2Vector::zero(n);
        for (k, a) in amps {
            if !admissible(n, k) {
                return Err(Su2Error::BadWeight { n, k });
            }
            v.add_at(k, &a);
        }
        Ok(v)
    }

    pub fn from_entries(n: u32, entries: &[Su2Entry]) -> Result<Self, Su2Error> {
        Su2Vector::from_amps(n, entries.iter().map(|e| (e.k, e.amp.clone())))
    }

    pub fn entries(&self) -> Vec<Su2Entry> {
        self.amps
            .iter()
            .map(|(k, a)| Su2Entry {
                k: *k,
                amp: a.clone(),
            })
            .collect()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amp(&self, k: i64) -> SurdSum {
        self.amps.get(&k).cloned().unwrap_or_default()
    }

    pub fn amps(&self) -> &BTreeMap<i64, SurdSum> {
        &self.amps
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    fn add_at(&mut self, k: i64, a: &SurdSum) {
        if a.is_zero() {
            return;
        }
        let e = self.amps.entry(k).or_default();
        *e = &*e + a;
        if e.is_zero() {
            self.amps.remove(&k);
        }
    }

    pub fn add(&self, o: &Su2Vector) -> Su2Vector {
        let mut v = self.clone();
        for (k, a) in &o.amps {
            v.add_at(*k, a);
        }
        v
    }

    pub fn scale(&self, c: &SurdSum) -> Su2Vector {
        let mut v = Su2Vector::zero(self.n);
        for (k, a) in &self.amps {
            v.add_at(*k, &(a * c));
        }
        v
    }

    /// `<self|o>`; amplitudes are real.
    pub fn inner(&self, o: &Su2Vector) -> SurdSum {
        let mut s = SurdSum::zero();
        for (k, a) in &self.amps {
            if let Some(b) = o.amps.get(k) {
                s = &s + &(a * b);
            }
        }
        s
    }

    /// Squared norm, if rational.
    pub fn norm2(&self) -> Option<BigRational> {
        self.inner(self).to_rational()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Su2Letter {
    E,
    F,
    H,
}

fn sqrt_q(x: BigRational) -> SurdSum {
    SurdSum::sqrt(&x).expect("nonnegative radicand")
}

/// Coefficient of `E|k>` on `|k+2>`.
pub fn e_coeff(n: u32, k: i64) -> SurdSum {
    let n = n as i64;
    if k >= n {
        return SurdSum::zero();
    }
    sqrt_q(rat((n - k) * (n + k + 2), 4))
}

/// Coefficient of `F|k>` on `|k-2>`.
pub fn f_coeff(n: u32, k: i64) -> SurdSum {
    let n = n as i64;
    if k <= -n {
        return SurdSum::zero();
    }
    sqrt_q(rat((n + k) * (n - k + 2), 4))
}

pub fn apply(n: u32, op: Su2Letter, v: &Su2Vector) -> Su2Vector {
    let mut out = Su2Vector::zero(n);
    for (k, a) in &v.amps {
        match op {
            Su2Letter::E => out.add_at(k + 2, &(a * &e_coeff(n, *k))),
            Su2Letter::F => out.add_at(k - 2, &(a * &f_coeff(n, *k))),
            Su2Letter::H => out.add_at(*k, &a.scale(&int(*k))),
        }
    }
    out
}

/// Applies a product of letters, rightmost first.
pub fn apply_word(n: u32, word: &[Su2Letter], v: &Su2Vector) -> Su2Vector {
    word.iter()
        .rev()
        .fold(v.clone(), |acc, &op| apply(n, op, &acc))
}

/// An operator moving every weight by the same `shift`:
/// `X|k> = coeffs[k] |k + shift>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftOp {
    pub n: u32,
    pub shift: i64,
    pub coeffs: BTreeMap<i64, SurdSum>,
}

impl ShiftOp {
    fn from_fn(n: u32, shift: i64, f: impl Fn(i64) -> SurdSum) -> Self {
        let coeffs = weights(n)
            .map(|k| (k, f(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ShiftOp { n, shift, coeffs }
    }

    pub fn identity(n: u32) -> Self {
        ShiftOp::from_fn(n, 0, |_| SurdSum::one())
    }

    pub fn letter(n: u32, op: Su2Letter) -> Self {
        match op {
            Su2Letter::E => ShiftOp::from_fn(n, 2, |k| e_coeff(n, k)),
            Su2Letter::F => ShiftOp::from_fn(n, -2, |k| f_coeff(n, k)),
            Su2Letter::H => ShiftOp::from_fn(n, 0, |k| SurdSum::from_rational(int(k))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self * o`.
    pub fn compose(&self, o: &ShiftOp) -> ShiftOp {
        let mut coeffs = BTreeMap::new();
        for (k, b) in &o.coeffs {
            if let Some(a) = self.coeffs.get(&(k + o.shift)) {
                coeffs.insert(*k, a * b);
            }
        }
        ShiftOp {
            n: self.n,
            shift: self.shift + o.shift,
            coeffs,
        }
    }

    pub fn sub(&self, o: &ShiftOp) -> ShiftOp {
        assert_eq!(self.shift, o.shift, "shift mismatch");
        let mut coeffs = self.coeffs.clone();
        for (k, b) in &o.coeffs {
            let e = coeffs.entry(*k).or_default();
            *e = &*e - b;
            if e.is_zero() {
                coeffs.remove(k);
            }
        }
        ShiftOp {
            n: self.n,
            shift: self.shift,
            coeffs,
        }
    }

    pub fn pow(&self, e: usize) -> ShiftOp {
        (0..e).fold(ShiftOp::identity(self.n), |acc, _| acc.compose(self))
    }

    /// `[a, self]`.
    pub fn ad(&self, a: &ShiftOp) -> ShiftOp {
        a.compose(self).sub(&self.compose(a))
    }

    pub fn apply(&self, v: &Su2Vector) -> Su2Vector {
        let mut out = Su2Vector::zero(self.n);
        for (k, a) in &v.amps {
            if let Some(c) = self.coeffs.get(k) {
                out.add_at(k + self.shift, &(a * c));
            }
        }
        out
    }
}

pub fn weights(n: u32) -> impl Iterator<Item = i64> {
    let n = n as i64;
    (0..=n).map(move |i| -n + 2 * i)
}

/// The spanning set `ad_F^k(E^t)`, `0 <= k <= 2t`, of the distance-`t`
/// error space.
pub fn error_span(n: u32, t: usize) -> Vec<ShiftOp> {
    let f = ShiftOp::letter(n, Su2Letter::F);
    let mut x = ShiftOp::letter(n, Su2Letter::E).pow(t);
    let mut out = Vec::with_capacity(2 * t + 1);
    for k in 0..=2 * t {
        if k > 0 {
            x = x.ad(&f);
        }
        out.push(x.clone());
    }
    out
}

fn phi(n: u32, k: i64) -> Su2Vector {
    let h = SurdSum::sqrt(&rat(1, 2)).unwrap();
    Su2Vector::from_amps(n, [(k, h.clone()), (-k, h)]).unwrap()
}

fn zero_weight(n: u32) -> Su2Vector {
    Su2Vector::basis(n, 0).unwrap()
}

/// The density 1/4 code: `(|k>+|-k>)/sqrt 2` for `k = n, n-4, ..`, plus `|0>`
/// when `n` is even.
pub fn code_quarter(n: u32) -> Vec<Su2Vector> {
    let n_i = n as i64;
    let low = match n % 4 {
        0 => 4,
        1 => 5,
        2 => 6,
        _ => 3,
    };
    let mut out: Vec<Su2Vector> = (0..)
        .map(|i| n_i - 4 * i)
        .take_while(|&k| k >= low)
        .map(|k| phi(n, k))
        .collect();
    if n % 2 == 0 {
        out.push(zero_weight(n));
    }
    out
}

/// The pair `psi_k^1, psi_k^2` supported on `-k, -(k-2), k-2, k`.
pub fn psi_pair(n: u32, k: i64) -> [Su2Vector; 2] {
    let a = SurdSum::sqrt(&rat(k, 2 * k - 2)).unwrap();
    let b = SurdSum::sqrt(&rat(k - 2, 2 * k - 2)).unwrap();
    [
        Su2Vector::from_amps(n, [(-(k - 2), a.clone()), (k, -&b)]).unwrap(),
        Su2Vector::from_amps(n, [(-k, b), (k - 2, a)]).unwrap(),
    ]
}

/// The density 1/3 code built from blocks `psi_k` with `k = n, n-6, ..`.
pub fn code_third(n: u32) -> Result<Vec<Su2Vector>, Su2Error> {
    if n < 4 {
        return Err(Su2Error::TooSmall(n));
    }
    let n_i = n as i64;
    let low = [6, 7, 8, 9, 4, 5][(n % 6) as usize];
    let mut out = Vec::new();
    let mut k = n_i;
    while k >= low {
        out.extend(psi_pair(n, k));
        k -= 6;
    }
    match n % 6 {
        0 | 2 => out.push(zero_weight(n)),
        3 => out.push(phi(n, 3)),
        _ => {}
    }
    Ok(out)
}

/// Squared norms after checking that the vectors are nonzero, pairwise
/// orthogonal and of rational squared norm.
pub fn check_orthogonal(n: u32, vectors: &[Su2Vector]) -> Result<Vec<BigRational>, Su2Error> {
    if vectors.is_empty() {
        return Err(Su2Error::EmptyCode);
    }
    let mut norms = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.n != n {
            return Err(Su2Error::Mismatch {
                index: i,
                expected: n,
                found: v.n,
            });
        }
        if v.is_zero() {
            return Err(Su2Error::ZeroVector(i));
        }
        let nu = v.norm2().ok_or(Su2Error::IrrationalNorm(i))?;
        debug_assert!(nu.is_positive());
        norms.push(nu);
        for (j, w) in vectors[..i].iter().enumerate() {
            if !v.inner(w).is_zero() {
                return Err(Su2Error::NotOrthogonal(j, i));
            }
        }
    }
    Ok(norms)
}

/// Whether `X` is detected: `<w_i|X|w_j> = 0` for `i != j` and
/// `<w_i|X|w_i> / <w_i|w_i>` is the same for every `i`.
pub fn detects(vectors: &[Su2Vector], norms: &[BigRational], x: &ShiftOp) -> bool {
    let images: Vec<Su2Vector> = vectors.iter().map(|v| x.apply(v)).collect();
    let mut slope: Option<SurdSum> = None;
    for (i, w) in vectors.iter().enumerate() {
        for (j, xv) in images.iter().enumerate() {
            let m = w.inner(xv);
            if i != j {
                if !m.is_zero() {
                    return false;
                }
                continue;
            }
            let s = m.scale(&norms[i].recip());
            match &slope {
                None => slope = Some(s),
                Some(s0) => {
                    if *s0 != s {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The minimum distance of the span of pairwise orthogonal vectors;
/// a code detecting everything reports `n + 1`.
pub fn min_distance(n: u32, vectors: &[Su2Vector]) -> Result<usize, Su2Error> {
    let norms = check_orthogonal(n, vectors)?;
    if vectors.len() == 1 {
        return Ok(n as usize + 1);
    }
    for t in 1..=n as usize {
        if error_span(n, t)
            .iter()
            .any(|x| !detects(vectors, &norms, x))
        {
            return Ok(t);
        }
    }
    Ok(n as usize + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Su2Report {
    pub n: u32,
    pub dimension: usize,
    pub min_distance: usize,
}

pub fn su2_report(n: u32, vectors: &[Su2Vector]) -> Result<Su2Report, Su2Error> {
    Ok(Su2Report {
        n,
        dimension: vectors.len(),
        min_distance: min_distance(n, vectors)?,
    })
}
