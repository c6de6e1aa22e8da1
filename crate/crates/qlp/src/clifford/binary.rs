use std::fmt;

use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::CliffordError;

pub const MAX_LEN: usize = 64;

/// A vector over F_2 of length at most 64. Component `i` (0-based) is bit
/// `i` of `bits` and the `i`-th character of the string form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    bits: u64,
}

fn mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl BinaryVector {
    pub fn zero(len: usize) -> Self {
        assert!(
            len <= MAX_LEN,
            "binary vectors are limited to {MAX_LEN} components"
        );
        BinaryVector { len, bits: 0 }
    }

    pub fn ones(len: usize) -> Self {
        BinaryVector::from_bits(len, mask(len))
    }

    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len);
        BinaryVector::from_bits(len, 1 << i)
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(
            len <= MAX_LEN,
            "binary vectors are limited to {MAX_LEN} components"
        );
        BinaryVector {
            len,
            bits: bits & mask(len),
        }
    }

    pub fn from_slice(bits: &[u8]) -> Self {
        let mut v = BinaryVector::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b % 2 == 1 {
                v.bits |= 1 << i;
            }
        }
        v
    }

    pub fn parse(s: &str) -> Result<Self, CliffordError> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(CliffordError::Parse(format!(
                "`{s}` is longer than {MAX_LEN} bits"
            )));
        }
        let mut v = BinaryVector::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.bits |= 1 << i,
                _ => return Err(CliffordError::Parse(format!("`{s}` is not a bit string"))),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len);
        if b {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn dot(&self, o: &BinaryVector) -> u32 {
        (self.bits & o.bits).count_ones() % 2
    }

    pub fn add(&self, o: &BinaryVector) -> BinaryVector {
        assert_eq!(self.len, o.len, "length mismatch");
        BinaryVector {
            len: self.len,
            bits: self.bits ^ o.bits,
        }
    }

    /// The first `len` components.
    pub fn truncate(&self, len: usize) -> BinaryVector {
        BinaryVector::from_bits(len.min(self.len), self.bits)
    }

    /// `(x, y)` as one vector.
    pub fn concat(&self, o: &BinaryVector) -> BinaryVector {
        BinaryVector::from_bits(self.len + o.len, self.bits | (o.bits << self.len))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for BinaryVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BinaryVector::parse(&s).map_err(D::Error::custom)
    }
}

fn same_len(x: &BinaryVector, y: &BinaryVector) -> Result<(), CliffordError> {
    if x.len != y.len {
        Err(CliffordError::LengthMismatch {
            expected: x.len,
            found: y.len,
        })
    } else {
        Ok(())
    }
}

/// `wt(x) wt(y) + x . y` over F_2.
pub fn q_form(x: &BinaryVector, y: &BinaryVector) -> Result<u32, CliffordError> {
    same_len(x, y)?;
    Ok((x.weight() * y.weight() + x.dot(y)) % 2)
}

pub fn is_q_isotropic(s: &[BinaryVector]) -> Result<bool, CliffordError> {
    for (i, x) in s.iter().enumerate() {
        for y in &s[i..] {
            if q_form(x, y)? == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row-reduced basis of a span over F_2, each row keyed by its pivot bit.
#[derive(Debug, Clone)]
pub struct F2Basis {
    len: usize,
    rows: Vec<(u32, u64)>,
}

impl F2Basis {
    pub fn new(len: usize) -> Self {
        F2Basis {
            len,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors(vs: &[BinaryVector]) -> (Self, bool) {
        let len = vs.first().map_or(0, |v| v.len);
        let mut b = F2Basis::new(len);
        let mut independent = true;
        for v in vs {
            independent &= b.insert(v.bits);
        }
        (b, independent)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `x` against the basis; zero iff `x` lies in the span.
    pub fn reduce(&self, mut x: u64) -> u64 {
        for &(p, r) in &self.rows {
            if (x >> p) & 1 == 1 {
                x ^= r;
            }
        }
        x
    }

    pub fn contains(&self, x: u64) -> bool {
        self.reduce(x) == 0
    }

    /// Adds `x`; returns false if it was already in the span.
    pub fn insert(&mut self, x: u64) -> bool {
        let x = self.reduce(x);
        if x == 0 {
            return false;
        }
        let p = x.trailing_zeros();
        for (_, r) in self.rows.iter_mut() {
            if (*r >> p) & 1 == 1 {
                *r ^= x;
            }
        }
        self.rows.push((p, x));
        true
    }

    pub fn vectors(&self) -> Vec<BinaryVector> {
        self.rows
            .iter()
            .map(|&(_, r)| BinaryVector::from_bits(self.len, r))
            .collect()
    }
}

pub fn f2_rank(vs: &[BinaryVector]) -> usize {
    F2Basis::from_vectors(vs).0.rank()
}

/// Basis of `{y : v . y = 0 for all v}`.
pub fn nullspace(len: usize, vs: &[BinaryVector]) -> Vec<BinaryVector> {
    let (b, _) = F2Basis::from_vectors(vs);
    let pivots: Vec<(u32, u64)> = b.rows.clone();
    let is_pivot = |i: usize| pivots.iter().any(|&(p, _)| p as usize == i);
    let mut out = Vec::new();
    for free in (0..len).filter(|&i| !is_pivot(i)) {
        let mut y: u64 = 1 << free;
        for &(p, r) in &pivots {
            if (r >> free) & 1 == 1 {
                y |= 1 << p;
            }
        }
        out.push(BinaryVector::from_bits(len, y));
    }
    out
}

/// Every element of the span of `basis`, visited in Gray-code order.
pub fn for_each_in_span(basis: &[BinaryVector], mut f: impl FnMut(u64)) {
    let m = basis.len();
    assert!(m < 63, "span too large to enumerate");
    let mut x = 0u64;
    f(x);
    for i in 1u64..(1u64 << m) {
        x ^= basis[i.trailing_zeros() as usize].bits;
        f(x);
    }
}
