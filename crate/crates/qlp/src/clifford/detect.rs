use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gaussian::serde_gr_map;
use crate::arith::rational::{binomial, binomial_q, serde_rat, sign};
use crate::arith::GaussianRational;
use crate::matrix::{inner, rank, SparseVec};
use crate::metric::FamilySpec;

use super::binary::{nullspace, BinaryVector, F2Basis};
use super::code::{CodeObject, StabilizerCode, MATRIX_MAX_QUBITS};
use super::pauli::{gamma_pauli, PauliString};
use super::CliffordError;

/// How the layers of a metric split the even Clifford operators `Gamma_x`,
/// `x` in `F_2^{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Even,
    Odd,
    Spinorial,
}

impl Reading {
    pub fn parse(s: &str) -> Option<Reading> {
        match s {
            "even" => Some(Reading::Even),
            "odd" => Some(Reading::Odd),
            "spinorial" => Some(Reading::Spinorial),
            _ => None,
        }
    }

    pub fn for_family(spec: &FamilySpec) -> Option<(Reading, usize)> {
        match *spec {
            FamilySpec::CliffordEven { n } => Some((Reading::Even, n as usize)),
            FamilySpec::CliffordOdd { n } => Some((Reading::Odd, n as usize)),
            FamilySpec::Spinorial { n } => Some((Reading::Spinorial, n as usize)),
            _ => None,
        }
    }

    pub fn family(&self, n: usize) -> FamilySpec {
        let n = n as u32;
        match self {
            Reading::Even => FamilySpec::CliffordEven { n },
            Reading::Odd => FamilySpec::CliffordOdd { n },
            Reading::Spinorial => FamilySpec::Spinorial { n },
        }
    }

    /// Largest layer index.
    pub fn r(&self, n: usize) -> usize {
        match self {
            Reading::Even => 2 * n,
            Reading::Odd | Reading::Spinorial => n,
        }
    }

    /// Layer of `Gamma_x` for a label of weight `w`.
    pub fn layer(&self, n: usize, w: usize) -> usize {
        match self {
            Reading::Even => w,
            Reading::Odd => w.min(2 * n + 1 - w),
            Reading::Spinorial => {
                if w % 2 == 0 {
                    w / 2
                } else {
                    (2 * n + 1 - w) / 2
                }
            }
        }
    }

    /// Label weights making up layer `t`.
    pub fn weights(&self, n: usize, t: usize) -> Vec<usize> {
        (0..=2 * n).filter(|&w| self.layer(n, w) == t).collect()
    }

    fn layer_size(&self, n: usize, t: usize) -> BigInt {
        self.weights(n, t)
            .into_iter()
            .map(|w| binomial(2 * n as i64, w as i64))
            .sum()
    }
}

/// All `len`-bit words of weight `w`, in increasing order.
pub(crate) fn words_of_weight(len: usize, w: usize) -> Vec<u64> {
    if w > len {
        return Vec::new();
    }
    if w == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << w) - 1;
    let limit: u128 = 1u128 << len;
    while (x as u128) < limit {
        out.push(x);
        // next word with the same popcount
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

fn layer_labels(reading: Reading, n: usize, t: usize) -> Vec<u64> {
    reading
        .weights(n, t)
        .into_iter()
        .flat_map(|w| words_of_weight(2 * n, w))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectionPath {
    Symbolic,
    Matrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub reading: Reading,
    pub path: DetectionPath,
    pub n: usize,
    pub dimension: u64,
    pub r: usize,
    pub min_distance: usize,
    /// Nonzero values of `epsilon(Gamma_x)` over the detected layers; every
    /// other label there has `epsilon = 0`.
    #[serde(with = "serde_gr_map")]
    pub slope_values: BTreeMap<String, GaussianRational>,
    pub is_pure: bool,
    pub is_nondegenerate: bool,
}

fn label_string(n: usize, x: u64) -> String {
    BinaryVector::from_bits(2 * n, x).to_string()
}

/// Outcome of testing one error.
#[derive(Debug, Clone, PartialEq)]
enum Detect {
    Slope(GaussianRational),
    Undetected,
}

const SYMBOLIC_ENUMERATION_LIMIT: usize = 22;
const BALL_LIMIT: usize = 1 << 20;

struct Symbolic<'a> {
    code: &'a StabilizerCode,
    group: HashMap<u64, PauliString>,
    span: F2Basis,
    /// `g + wt(g) 1` for each generator: `q(x, g) = x . row`.
    q_rows: Vec<u64>,
}

impl<'a> Symbolic<'a> {
    fn new(code: &'a StabilizerCode) -> Result<Self, CliffordError> {
        code.check()?;
        let ones = BinaryVector::ones(2 * code.n).bits();
        let q_rows = code
            .generators
            .iter()
            .map(|g| g.bits() ^ if g.weight() % 2 == 1 { ones } else { 0 })
            .collect();
        Ok(Symbolic {
            code,
            group: code.group()?,
            span: code.span(),
            q_rows,
        })
    }

    fn pauli(&self, x: u64) -> PauliString {
        gamma_pauli(self.code.n, &BinaryVector::from_bits(2 * self.code.n, x))
            .expect("label length")
    }

    /// `epsilon` of a Pauli string carrying the given label.
    fn detect_pauli(&self, label: u64, p: &PauliString) -> Detect {
        if let Some(s) = self.group.get(&label) {
            return Detect::Slope(p.ratio(s).expect("same label, same support"));
        }
        if self
            .q_rows
            .iter()
            .any(|r| (r & label).count_ones() % 2 == 1)
        {
            Detect::Slope(GaussianRational::zero())
        } else {
            Detect::Undetected
        }
    }

    fn detect(&self, x: u64) -> Detect {
        self.detect_pauli(x, &self.pauli(x))
    }

    fn dual_basis(&self) -> Vec<BinaryVector> {
        let rows: Vec<BinaryVector> = self
            .q_rows
            .iter()
            .map(|&r| BinaryVector::from_bits(2 * self.code.n, r))
            .collect();
        nullspace(2 * self.code.n, &rows)
    }
}

fn min_distance_symbolic(s: &Symbolic, reading: Reading) -> usize {
    let n = s.code.n;
    let r = reading.r(n);
    let dual = s.dual_basis();
    if dual.len() <= SYMBOLIC_ENUMERATION_LIMIT {
        let mut best = r + 1;
        super::binary::for_each_in_span(&dual, |y| {
            if !s.span.contains(y) {
                best = best.min(reading.layer(n, y.count_ones() as usize));
            }
        });
        return best;
    }
    for t in 1..=r {
        if layer_labels(reading, n, t)
            .into_iter()
            .any(|x| s.detect(x) == Detect::Undetected)
        {
            return t;
        }
    }
    r + 1
}

fn ball(reading: Reading, n: usize, radius: usize) -> Result<Vec<u64>, CliffordError> {
    let size: BigInt = (0..=radius).map(|t| reading.layer_size(n, t)).sum();
    if size > BigInt::from(BALL_LIMIT) {
        return Err(CliffordError::TooLarge(format!(
            "error ball of {size} operators for the nondegeneracy form"
        )));
    }
    Ok((0..=radius)
        .flat_map(|t| layer_labels(reading, n, t))
        .collect())
}

pub fn detection_report_symbolic(
    code: &StabilizerCode,
    reading: Reading,
) -> Result<DetectionReport, CliffordError> {
    let s = Symbolic::new(code)?;
    let n = code.n;
    let d = min_distance_symbolic(&s, reading);
    let mut slope_values = BTreeMap::new();
    for &x in s.group.keys() {
        if reading.layer(n, x.count_ones() as usize) < d {
            if let Detect::Slope(e) = s.detect(x) {
                slope_values.insert(label_string(n, x), e);
            }
        }
    }
    let is_pure = slope_values.len() == 1;
    // Gamma_x P and Gamma_y P are proportional exactly when x + y lies in
    // the span, and orthogonal otherwise
    let mut seen = HashSet::new();
    let is_nondegenerate = ball(reading, n, (d - 1) / 2)?
        .into_iter()
        .all(|x| seen.insert(s.span.reduce(x)));
    Ok(DetectionReport {
        reading,
        path: DetectionPath::Symbolic,
        n,
        dimension: 1u64 << code.log2_dimension(),
        r: reading.r(n),
        min_distance: d,
        slope_values,
        is_pure,
        is_nondegenerate,
    })
}

/// Orthogonal code basis with the index of the vectors touching each
/// computational basis state.
struct MatrixChecker {
    n: usize,
    basis: Vec<SparseVec>,
    norms: Vec<GaussianRational>,
    owners: HashMap<usize, Vec<usize>>,
}

impl MatrixChecker {
    fn new(code: &CodeObject) -> Result<Self, CliffordError> {
        if code.n > MATRIX_MAX_QUBITS {
            return Err(CliffordError::TooLarge(format!(
                "{} qubits exceeds the matrix limit of {MATRIX_MAX_QUBITS}; use the symbolic path",
                code.n
            )));
        }
        let basis = code.orthogonal_basis()?;
        let norms = basis.iter().map(|w| inner(w, w)).collect();
        let mut owners: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, w) in basis.iter().enumerate() {
            for &k in w.keys() {
                owners.entry(k).or_default().push(i);
            }
        }
        Ok(MatrixChecker {
            n: code.n,
            basis,
            norms,
            owners,
        })
    }

    fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `<w_i|E|w_j>` for every pair with a nonzero value.
    fn elements(&self, p: &PauliString) -> Vec<(usize, usize, GaussianRational)> {
        let mut out = Vec::new();
        for (j, w) in self.basis.iter().enumerate() {
            let u = p.apply(w);
            let mut hit: Vec<usize> = u
                .keys()
                .filter_map(|k| self.owners.get(k))
                .flatten()
                .copied()
                .collect();
            hit.sort_unstable();
            hit.dedup();
            for i in hit {
                let m = inner(&self.basis[i], &u);
                if !m.is_zero() {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    fn detect(&self, p: &PauliString) -> Detect {
        let els = self.elements(p);
        let mut diag = vec![GaussianRational::zero(); self.dimension()];
        for (i, j, m) in els {
            if i != j {
                return Detect::Undetected;
            }
            diag[i] = m / &self.norms[i];
        }
        if diag.iter().all(|x| *x == diag[0]) {
            Detect::Slope(diag.swap_remove(0))
        } else {
            Detect::Undetected
        }
    }

    fn pauli(&self, x: u64) -> PauliString {
        gamma_pauli(self.n, &BinaryVector::from_bits(2 * self.n, x)).expect("label length")
    }
}

pub fn detection_report_matrix(
    code: &CodeObject,
    reading: Reading,
) -> Result<DetectionReport, CliffordError> {
    let m = MatrixChecker::new(code)?;
    let n = code.n;
    let r = reading.r(n);
    let mut slopes: HashMap<u64, GaussianRational> = HashMap::new();
    slopes.insert(0, GaussianRational::one());
    let mut d = r + 1;
    for t in 1..=r {
        let labels = layer_labels(reading, n, t);
        let results: Vec<(u64, Detect)> = labels
            .par_iter()
            .map(|&x| (x, m.detect(&m.pauli(x))))
            .collect();
        if results.iter().any(|(_, e)| *e == Detect::Undetected) {
            d = t;
            break;
        }
        for (x, e) in results {
            if let Detect::Slope(e) = e {
                if !e.is_zero() {
                    slopes.insert(x, e);
                }
            }
        }
    }
    let is_pure = slopes.len() == 1;
    // products of two ball errors lie in the scanned layers, where every
    // label missing from the slope map has epsilon zero
    let ball = ball(reading, n, (d - 1) / 2)?;
    let paulis: Vec<PauliString> = ball.iter().map(|&x| m.pauli(x)).collect();
    let form: Vec<Vec<GaussianRational>> = ball
        .par_iter()
        .zip(&paulis)
        .map(|(&x, a)| {
            ball.iter()
                .zip(&paulis)
                .map(|(&y, b)| match slopes.get(&(x ^ y)) {
                    Some(e) => {
                        let phase = a
                            .dagger()
                            .mul(b)
                            .ratio(&m.pauli(x ^ y))
                            .expect("same label");
                        phase * e
                    }
                    None => GaussianRational::zero(),
                })
                .collect()
        })
        .collect();
    let is_nondegenerate = rank(&form) == ball.len();
    let slope_values = slopes
        .into_iter()
        .map(|(x, e)| (label_string(n, x), e))
        .collect();
    Ok(DetectionReport {
        reading,
        path: DetectionPath::Matrix,
        n,
        dimension: m.dimension() as u64,
        r,
        min_distance: d,
        slope_values,
        is_pure,
        is_nondegenerate,
    })
}

/// Symbolic rule for stabilizer codes, cross-checked against the matrix
/// condition when the code is small enough; matrix condition otherwise.
pub fn detection_report(
    code: &CodeObject,
    reading: Reading,
) -> Result<DetectionReport, CliffordError> {
    match code.stabilizer() {
        Some(stab) => {
            let sym = detection_report_symbolic(stab, reading)?;
            if code.n <= MATRIX_MAX_QUBITS {
                let mat = detection_report_matrix(code, reading)?;
                let same = sym.dimension == mat.dimension
                    && sym.min_distance == mat.min_distance
                    && sym.slope_values == mat.slope_values
                    && sym.is_pure == mat.is_pure
                    && sym.is_nondegenerate == mat.is_nondegenerate;
                if !same {
                    return Err(CliffordError::CrossCheck(format!(
                        "symbolic {sym:?} against matrix {mat:?}"
                    )));
                }
            }
            Ok(sym)
        }
        None => detection_report_matrix(code, reading),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceDistribution {
    pub family: FamilySpec,
    #[serde(with = "serde_rat::vec")]
    pub a: Vec<BigRational>,
    #[serde(with = "serde_rat::vec")]
    pub b: Vec<BigRational>,
}

fn reading_for(code: &CodeObject, family: &FamilySpec) -> Result<Reading, CliffordError> {
    match Reading::for_family(family) {
        Some((reading, n)) if n == code.n => Ok(reading),
        _ => Err(CliffordError::UnsupportedFamily(family.to_string())),
    }
}

/// Krawtchouk value `K_w(i)` for words of length `len`.
fn krawtchouk(len: usize, w: usize, i: usize) -> BigRational {
    let (len, w, i) = (len as i64, w as i64, i as i64);
    (0..=w)
        .map(|s| sign(s) * binomial_q(i, s) * binomial_q(len - i, w - s))
        .sum()
}

fn distribution_symbolic(
    stab: &StabilizerCode,
    family: FamilySpec,
    reading: Reading,
) -> Result<DistanceDistribution, CliffordError> {
    let s = Symbolic::new(stab)?;
    let n = stab.n;
    let len = 2 * n;
    let k = BigRational::from_integer(BigInt::one() << stab.log2_dimension());
    let r = reading.r(n);
    let ones = BinaryVector::ones(len).bits();
    let mut a = vec![BigRational::zero(); r + 1];
    // weights of the span, and of its image under g -> g + wt(g) 1, whose
    // ordinary dual is the q-dual of the span
    let mut span_weights = vec![0u64; len + 1];
    let mut image_weights = vec![0u64; len + 1];
    for &x in s.group.keys() {
        let w = x.count_ones() as usize;
        span_weights[w] += 1;
        let y = if w % 2 == 1 { x ^ ones } else { x };
        image_weights[y.count_ones() as usize] += 1;
    }
    for (w, &c) in span_weights.iter().enumerate() {
        a[reading.layer(n, w)] += &k * BigRational::from_integer(c.into());
    }
    let size = BigRational::from_integer(BigInt::from(s.group.len()));
    let mut b = vec![BigRational::zero(); r + 1];
    for w in 0..=len {
        let count: BigRational = image_weights
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| BigRational::from_integer(c.into()) * krawtchouk(len, w, i))
            .sum::<BigRational>()
            / &size;
        b[reading.layer(n, w)] += count;
    }
    Ok(DistanceDistribution { family, a, b })
}

/// Distributions from the orthogonal code basis and every `Gamma_x`.
pub fn distance_distribution_matrix(
    code: &CodeObject,
    family: &FamilySpec,
) -> Result<DistanceDistribution, CliffordError> {
    let reading = reading_for(code, family)?;
    let m = MatrixChecker::new(code)?;
    let n = code.n;
    let r = reading.r(n);
    let k = BigRational::from_integer(BigInt::from(m.dimension()));
    let labels: Vec<u64> = (0..1u64 << (2 * n)).collect();
    let parts: Vec<(usize, BigRational, BigRational)> = labels
        .par_iter()
        .map(|&x| {
            let els = m.elements(&m.pauli(x));
            let mut tr = GaussianRational::zero();
            let mut hs = BigRational::zero();
            for (i, j, v) in els {
                let nn = &m.norms[i] * &m.norms[j];
                hs += (&v * v.conj() / nn).re;
                if i == j {
                    tr += v / &m.norms[i];
                }
            }
            let layer = reading.layer(n, x.count_ones() as usize);
            (layer, (&tr * tr.conj()).re, hs)
        })
        .collect();
    let mut a = vec![BigRational::zero(); r + 1];
    let mut b = vec![BigRational::zero(); r + 1];
    for (t, x, y) in parts {
        a[t] += x;
        b[t] += y;
    }
    for v in a.iter_mut().chain(b.iter_mut()) {
        *v /= &k;
    }
    Ok(DistanceDistribution {
        family: *family,
        a,
        b,
    })
}

pub fn distance_distribution(
    code: &CodeObject,
    family: &FamilySpec,
) -> Result<DistanceDistribution, CliffordError> {
    let reading = reading_for(code, family)?;
    match code.stabilizer() {
        Some(stab) => distribution_symbolic(stab, *family, reading),
        None => distance_distribution_matrix(code, family),
    }
}
