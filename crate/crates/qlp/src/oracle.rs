//! Brute-force operator layers `V_t` and channels `Phi_t` on small
//! instances, used to check the closed-form coefficients independently.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{factorial_q, serde_rat};
use crate::arith::{gr_int, gr_real, GaussianRational};
use crate::clifford::detect::words_of_weight;
use crate::clifford::{gamma, BinaryVector};
use crate::matrix::{axpy, inverse, SparseMatrix, SparseVec};
use crate::metric::{profile, FamilySpec, ValidationError};
use crate::wtj::{lambda_signature, wtj_matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("{0} is beyond the oracle size limit ({1})")]
    TooLarge(String, &'static str),
    #[error("layer {t} is outside 0..={r}")]
    Layer { t: usize, r: usize },
    #[error("expected a {expected}x{expected} matrix, found {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the spanning set is linearly dependent")]
    Singular,
    #[error("{0} is not self-dual")]
    NotSelfDual(String),
    #[error("oracle consistency check failed: {0}")]
    Invariant(String),
}

/// The working basis of `H` with the diagonal inner product
/// `<e_i|e_j> = delta_ij weights[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    pub weights: Vec<BigRational>,
}

impl Space {
    pub fn orthonormal(dim: usize) -> Self {
        Space {
            weights: vec![BigRational::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Adjoint with respect to the weighted inner product.
    pub fn adjoint(&self, a: &SparseMatrix) -> SparseMatrix {
        let mut m = SparseMatrix::zero(a.dim());
        for (i, j, x) in a.entries() {
            m.add_entry(
                j,
                i,
                x.conj() * gr_real(&self.weights[i] / &self.weights[j]),
            );
        }
        m
    }

    /// Hilbert-Schmidt product `tr(A^* B)`.
    pub fn hs(&self, a: &SparseMatrix, b: &SparseMatrix) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, j, x) in a.entries() {
            if let Some(y) = b.row(i).get(&j) {
                acc += x.conj() * y * gr_real(&self.weights[i] / &self.weights[j]);
            }
        }
        acc
    }
}

/// A spanning set of one operator layer `V_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    pub family: FamilySpec,
    pub t: usize,
    pub space: Space,
    pub matrices: Vec<SparseMatrix>,
    /// `gram[k][l] = tr(F_k^* F_l)`.
    pub gram: Vec<Vec<BigRational>>,
}

impl OperatorBasis {
    pub fn from_matrices(
        family: FamilySpec,
        t: usize,
        space: Space,
        matrices: Vec<SparseMatrix>,
    ) -> Result<Self, OracleError> {
        for m in &matrices {
            if m.dim() != space.dim() {
                return Err(OracleError::DimensionMismatch {
                    expected: space.dim(),
                    found: m.dim(),
                });
            }
        }
        let mut gram = vec![vec![BigRational::zero(); matrices.len()]; matrices.len()];
        for k in 0..matrices.len() {
            for l in k..matrices.len() {
                let g = space.hs(&matrices[k], &matrices[l]);
                if !g.im.is_zero() {
                    return Err(OracleError::Invariant(format!(
                        "Gram entry ({k},{l}) is not real"
                    )));
                }
                gram[k][l] = g.re.clone();
                gram[l][k] = g.re;
            }
        }
        Ok(OperatorBasis {
            family,
            t,
            space,
            matrices,
            gram,
        })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    fn is_diagonal(&self) -> bool {
        self.gram
            .iter()
            .enumerate()
            .all(|(k, row)| row.iter().enumerate().all(|(l, g)| k == l || g.is_zero()))
    }

    fn gram_inverse(&self) -> Result<Vec<Vec<GaussianRational>>, OracleError> {
        let m = self.len();
        if self.is_diagonal() {
            let mut inv = vec![vec![GaussianRational::zero(); m]; m];
            for k in 0..m {
                if self.gram[k][k].is_zero() {
                    return Err(OracleError::Singular);
                }
                inv[k][k] = gr_real(self.gram[k][k].recip());
            }
            return Ok(inv);
        }
        let g: Vec<Vec<GaussianRational>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| gr_real(x.clone())).collect())
            .collect();
        inverse(&g).ok_or(OracleError::Singular)
    }
}

/// `Phi_t(X) = sum_{k,l} (G^-1)_{kl} F_k X F_l^*`, which is the sum over
/// any orthonormal basis of `V_t`.
pub fn phi_apply(basis: &OperatorBasis, x: &SparseMatrix) -> Result<SparseMatrix, OracleError> {
    let dim = basis.space.dim();
    if x.dim() != dim {
        return Err(OracleError::DimensionMismatch {
            expected: dim,
            found: x.dim(),
        });
    }
    let ginv = basis.gram_inverse()?;
    let adj: Vec<SparseMatrix> = basis
        .matrices
        .iter()
        .map(|f| basis.space.adjoint(f))
        .collect();
    let mut acc = SparseMatrix::zero(dim);
    for (k, f) in basis.matrices.iter().enumerate() {
        let mut y = SparseMatrix::zero(dim);
        for (l, a) in adj.iter().enumerate() {
            if !ginv[k][l].is_zero() {
                y = y.add(&a.scale(&ginv[k][l]));
            }
        }
        acc = acc.add(&f.mul(x).mul(&y));
    }
    Ok(acc)
}

fn size_limit(spec: &FamilySpec) -> Result<(), OracleError> {
    let (ok, limit) = match *spec {
        FamilySpec::QHamming { q, n } => (
            (q == 2 && n <= 3) || (q == 3 && n <= 2),
            "q = 2 with n <= 3, or q = 3 with n <= 2",
        ),
        FamilySpec::Su2 { n } => (n <= 6, "n <= 6"),
        FamilySpec::SuqSym { q, n } => (
            (q == 2 && n <= 6) || (q == 3 && n <= 3),
            "q = 3 with n <= 3",
        ),
        FamilySpec::SunExt { n, .. } => (n <= 6, "n <= 6"),
        FamilySpec::CliffordOdd { n }
        | FamilySpec::CliffordEven { n }
        | FamilySpec::Spinorial { n } => (n <= 4, "n <= 4"),
        FamilySpec::Semispinorial { n } => (n <= 5, "n <= 5"),
    };
    if ok {
        Ok(())
    } else {
        Err(OracleError::TooLarge(spec.to_string(), limit))
    }
}

fn matrix_unit(dim: usize, i: usize, j: usize, x: GaussianRational) -> SparseMatrix {
    let mut m = SparseMatrix::zero(dim);
    m.add_entry(i, j, x);
    m
}

fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).sub(&b.mul(a))
}

fn vectorize(m: &SparseMatrix) -> SparseVec {
    let d = m.dim();
    m.entries()
        .map(|(i, j, x)| (i * d + j, x.clone()))
        .collect()
}

/// Row echelon form over the Gaussian rationals, rows keyed by pivot.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn insert(&mut self, mut v: SparseVec) -> bool {
        let mut cursor = 0;
        while let Some(k) = v
            .range(cursor..)
            .map(|(k, _)| *k)
            .find(|k| self.rows.contains_key(k))
        {
            let c = v[&k].clone();
            axpy(&mut v, &-c, &self.rows[&k]);
            cursor = k + 1;
        }
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = GaussianRational::one() / lead;
        let row: SparseVec = v.iter().map(|(k, x)| (*k, x * &inv)).collect();
        self.rows.insert(p, row);
        true
    }
}

/// Span of everything reachable from `seed` by commutators with `gens`.
fn ad_closure(gens: &[SparseMatrix], seed: SparseMatrix) -> Vec<SparseMatrix> {
    let mut ech = Echelon::default();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([seed]);
    while let Some(x) = queue.pop_front() {
        if x.is_zero() || !ech.insert(vectorize(&x)) {
            continue;
        }
        for g in gens {
            queue.push_back(commutator(g, &x));
        }
        out.push(x);
    }
    out
}

fn gram_schmidt(space: &Space, ms: Vec<SparseMatrix>) -> Vec<SparseMatrix> {
    let mut out: Vec<(SparseMatrix, GaussianRational)> = Vec::with_capacity(ms.len());
    for mut m in ms {
        for (b, nb) in &out {
            let c = space.hs(b, &m);
            if !c.is_zero() {
                m = m.sub(&b.scale(&(c / nb)));
            }
        }
        let nm = space.hs(&m, &m);
        out.push((m, nm));
    }
    out.into_iter().map(|(m, _)| m).collect()
}

/// Homogeneous polynomials of degree `n` in `q` variables; the monomial
/// `x^a` has squared norm `a!`.
struct SymSpace {
    monomials: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    space: Space,
}

fn compositions(q: usize, n: u32) -> Vec<Vec<u32>> {
    if q == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for mut rest in compositions(q - 1, n - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

impl SymSpace {
    fn new(q: usize, n: u32) -> Self {
        let monomials = compositions(q, n);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let weights = monomials
            .iter()
            .map(|a| a.iter().map(|&e| factorial_q(e as i64)).product())
            .collect();
        SymSpace {
            monomials,
            index,
            space: Space { weights },
        }
    }

    /// `x_i d/dx_j`.
    fn unit(&self, i: usize, j: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.monomials.len());
        for (c, a) in self.monomials.iter().enumerate() {
            if a[j] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[j] -= 1;
            b[i] += 1;
            m.add_entry(self.index[&b], c, gr_int(a[j] as i64, 0));
        }
        m
    }

    fn gens(&self, q: usize) -> Vec<SparseMatrix> {
        let mut g = Vec::new();
        for i in 0..q {
            for j in 0..q {
                if i != j {
                    g.push(self.unit(i, j));
                }
            }
        }
        g
    }
}

/// `Lambda^w C^n` with orthonormal basis `e_S`, `S` a `w`-subset.
struct ExtSpace {
    subsets: Vec<u32>,
    index: BTreeMap<u32, usize>,
}

impl ExtSpace {
    fn new(n: usize, w: usize) -> Self {
        let subsets: Vec<u32> = words_of_weight(n, w)
            .into_iter()
            .map(|s| s as u32)
            .collect();
        let index = subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        ExtSpace { subsets, index }
    }

    fn unit(&self, i: usize, j: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.subsets.len());
        for (c, &s) in self.subsets.iter().enumerate() {
            if s >> j & 1 == 0 || (i != j && s >> i & 1 == 1) {
                continue;
            }
            let t = (s & !(1 << j)) | (1 << i);
            let (lo, hi) = (i.min(j), i.max(j));
            let between = if hi > lo + 1 {
                (s & (((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1))).count_ones()
            } else {
                0
            };
            let sign = if between % 2 == 0 { 1 } else { -1 };
            m.add_entry(self.index[&t], c, gr_int(sign, 0));
        }
        m
    }

    fn gens(&self, n: usize) -> Vec<SparseMatrix> {
        let mut g = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.push(self.unit(i, j));
                }
            }
        }
        g
    }
}

/// A traceless basis of `M_q`: off-diagonal units and
/// `diag(1, .., 1, -k, 0, ..)`; pairwise orthogonal.
fn traceless_basis(q: usize) -> Vec<SparseMatrix> {
    let mut out = Vec::new();
    for i in 0..q {
        for j in 0..q {
            if i != j {
                out.push(matrix_unit(q, i, j, gr_int(1, 0)));
            }
        }
    }
    for k in 1..q {
        let mut m = SparseMatrix::zero(q);
        for i in 0..k {
            m.add_entry(i, i, gr_int(1, 0));
        }
        m.add_entry(k, k, gr_int(-(k as i64), 0));
        out.push(m);
    }
    out
}

fn hamming_layer(q: usize, n: usize, t: usize) -> Vec<SparseMatrix> {
    let mut factors = vec![SparseMatrix::identity(q)];
    factors.extend(traceless_basis(q));
    let k = factors.len();
    let mut out = Vec::new();
    for code in 0..k.pow(n as u32) {
        let digits: Vec<usize> = (0..n)
            .map(|p| code / k.pow((n - 1 - p) as u32) % k)
            .collect();
        if digits.iter().filter(|&&d| d != 0).count() != t {
            continue;
        }
        let m = digits
            .iter()
            .skip(1)
            .fold(factors[digits[0]].clone(), |acc, &d| acc.kron(&factors[d]));
        out.push(m);
    }
    out
}

fn gamma_matrix(n: usize, len: usize, bits: u64) -> SparseMatrix {
    gamma(n, &BinaryVector::from_bits(len, bits))
        .expect("label length matches")
        .matrix()
}

/// Basis indices of the `+1` eigenspace of `Z^{(x)n}`.
fn even_parity(n: usize) -> Vec<usize> {
    (0..1usize << n)
        .filter(|v| v.count_ones() % 2 == 0)
        .collect()
}

fn space_of(spec: &FamilySpec) -> Space {
    match *spec {
        FamilySpec::Su2 { n } => SymSpace::new(2, n).space,
        FamilySpec::SuqSym { q, n } => SymSpace::new(q as usize, n).space,
        FamilySpec::Semispinorial { n } => Space::orthonormal(1 << (n - 1)),
        FamilySpec::QHamming { q, n } => Space::orthonormal((q as usize).pow(n)),
        FamilySpec::SunExt { n, w } => {
            Space::orthonormal(ExtSpace::new(n as usize, w as usize).subsets.len())
        }
        FamilySpec::CliffordOdd { n }
        | FamilySpec::CliffordEven { n }
        | FamilySpec::Spinorial { n } => Space::orthonormal(1 << n),
    }
}

fn layer_matrices(spec: &FamilySpec, t: usize) -> Vec<SparseMatrix> {
    match *spec {
        FamilySpec::QHamming { q, n } => hamming_layer(q as usize, n as usize, t),
        FamilySpec::Su2 { n } => sym_layer(2, n, t),
        FamilySpec::SuqSym { q, n } => sym_layer(q as usize, n, t),
        FamilySpec::SunExt { n, w } => {
            let (n, w) = (n as usize, w as usize);
            let ext = ExtSpace::new(n, w);
            let seed = (0..t).fold(SparseMatrix::identity(ext.subsets.len()), |acc, i| {
                acc.mul(&ext.unit(i, n - 1 - i))
            });
            ad_closure(&ext.gens(n), seed)
        }
        FamilySpec::CliffordOdd { n } => {
            let n = n as usize;
            words_of_weight(2 * n + 1, t)
                .into_iter()
                .map(|b| gamma_matrix(n, 2 * n + 1, b))
                .collect()
        }
        FamilySpec::CliffordEven { n } => {
            let n = n as usize;
            words_of_weight(2 * n, t)
                .into_iter()
                .map(|b| gamma_matrix(n, 2 * n, b))
                .collect()
        }
        FamilySpec::Spinorial { n } => {
            let n = n as usize;
            words_of_weight(2 * n + 1, 2 * t)
                .into_iter()
                .map(|b| gamma_matrix(n, 2 * n + 1, b))
                .collect()
        }
        FamilySpec::Semispinorial { n } => {
            let n = n as usize;
            let keep = even_parity(n);
            words_of_weight(2 * n, 2 * t)
                .into_iter()
                // a middle label and its complement agree on the half-spin space
                .filter(|b| 2 * t != n || b & 1 == 0)
                .map(|b| gamma_matrix(n, 2 * n, b).compress(&keep))
                .collect()
        }
    }
}

fn sym_layer(q: usize, n: u32, t: usize) -> Vec<SparseMatrix> {
    let sym = SymSpace::new(q, n);
    let seed = sym.unit(0, q - 1);
    let seed = (0..t).fold(SparseMatrix::identity(sym.monomials.len()), |acc, _| {
        acc.mul(&seed)
    });
    ad_closure(&sym.gens(q), seed)
}

/// An orthogonal spanning set of `V_t` built from the family's own
/// operators, with its size checked against `dim V_t`.
pub fn v_basis(spec: &FamilySpec, t: usize) -> Result<OperatorBasis, OracleError> {
    let p = profile(spec)?;
    size_limit(spec)?;
    if t > p.r {
        return Err(OracleError::Layer { t, r: p.r });
    }
    let space = space_of(spec);
    let raw = if t == 0 {
        vec![SparseMatrix::identity(space.dim())]
    } else {
        layer_matrices(spec, t)
    };
    let ms = gram_schmidt(&space, raw);
    if BigRational::from_integer(ms.len().into()) != p.dim_v_q(t) {
        return Err(OracleError::Invariant(format!(
            "layer {t} of {spec} has {} independent operators, expected {}",
            ms.len(),
            p.dim_v[t]
        )));
    }
    OperatorBasis::from_matrices(*spec, t, space, ms)
}

pub fn v_bases(spec: &FamilySpec) -> Result<Vec<OperatorBasis>, OracleError> {
    let r = profile(spec)?.r;
    (0..=r).map(|t| v_basis(spec, t)).collect()
}

/// The eigenvalue of `Phi_t` on a nonzero `x`, which must be an
/// eigenvector.
pub fn eigenvalue(basis_t: &OperatorBasis, x: &SparseMatrix) -> Result<BigRational, OracleError> {
    let y = phi_apply(basis_t, x)?;
    let num = basis_t.space.hs(x, &y);
    let den = basis_t.space.hs(x, x);
    if den.is_zero() {
        return Err(OracleError::Invariant("zero test operator".into()));
    }
    let w = num / den;
    if !w.im.is_zero() {
        return Err(OracleError::Invariant(format!(
            "eigenvalue {w} is not real"
        )));
    }
    if y != x.scale(&w) {
        return Err(OracleError::Invariant(format!(
            "Phi_{} does not act as a scalar on the probe",
            basis_t.t
        )));
    }
    Ok(w.re)
}

/// `W_t(j)` as the eigenvalue of `Phi_t` on an element of `V_j`.
pub fn wtj_bruteforce(spec: &FamilySpec, t: usize, j: usize) -> Result<BigRational, OracleError> {
    let bt = v_basis(spec, t)?;
    let bj = v_basis(spec, j)?;
    eigenvalue(&bt, &bj.matrices[0])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtjMismatch {
    pub t: usize,
    pub j: usize,
    #[serde(with = "serde_rat")]
    pub formula: BigRational,
    #[serde(with = "serde_rat")]
    pub oracle: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtjReport {
    pub family: FamilySpec,
    pub size: usize,
    pub mismatches: Vec<WtjMismatch>,
    pub matches: bool,
}

/// Compares every `W_t(j)` of the closed form with the brute-force value.
pub fn verify_wtj(spec: &FamilySpec) -> Result<WtjReport, OracleError> {
    let w = wtj_matrix(spec)?;
    let bases = v_bases(spec)?;
    let mut mismatches = Vec::new();
    for (t, bt) in bases.iter().enumerate() {
        for (j, bj) in bases.iter().enumerate() {
            let got = eigenvalue(bt, &bj.matrices[0])?;
            if &got != w.get(t, j) {
                mismatches.push(WtjMismatch {
                    t,
                    j,
                    formula: w.get(t, j).clone(),
                    oracle: got,
                });
            }
        }
    }
    Ok(WtjReport {
        family: *spec,
        size: bases.len(),
        matches: mismatches.is_empty(),
        mismatches,
    })
}

fn sigma_y_power(n: usize) -> SparseMatrix {
    let y = SparseMatrix::from_dense(&[
        vec![gr_int(0, 0), gr_int(0, -1)],
        vec![gr_int(0, 1), gr_int(0, 0)],
    ]);
    (1..n).fold(y.clone(), |acc, _| acc.kron(&y))
}

/// The unitary `Lambda` of the conjugation `T(X) = Lambda conj(X) Lambda^*`.
pub fn lambda_unitary(spec: &FamilySpec) -> Result<SparseMatrix, OracleError> {
    size_limit(spec)?;
    let not_self_dual = || OracleError::NotSelfDual(spec.to_string());
    if lambda_signature(spec)?.signs().is_none() {
        return Err(not_self_dual());
    }
    Ok(match *spec {
        FamilySpec::QHamming { n, .. } => sigma_y_power(n as usize),
        // T(U_a) must be the same multiple of U_a for every generator;
        // the real generators are U_1..U_n and U_{2n+1}
        FamilySpec::Spinorial { n } => {
            let n = n as usize;
            if n % 2 == 0 {
                gamma_matrix(n, 2 * n + 1, y_label(n))
            } else {
                gamma_matrix(n, 2 * n + 1, ((1u64 << n) - 1) | (1u64 << (2 * n)))
            }
        }
        FamilySpec::Semispinorial { n } => {
            let n = n as usize;
            gamma_matrix(n, 2 * n, y_label(n)).compress(&even_parity(n))
        }
        FamilySpec::Su2 { n } | FamilySpec::SuqSym { n, .. } => {
            // x^a y^b -> (-1)^b x^b y^a
            let sym = SymSpace::new(2, n);
            let mut m = SparseMatrix::zero(sym.monomials.len());
            for (c, a) in sym.monomials.iter().enumerate() {
                let sign = if a[1] % 2 == 0 { 1 } else { -1 };
                m.add_entry(sym.index[&vec![a[1], a[0]]], c, gr_int(sign, 0));
            }
            m
        }
        FamilySpec::SunExt { n, w } => {
            // e_S -> sign(S, S^c) e_{S^c}
            let ext = ExtSpace::new(n as usize, w as usize);
            let full = (1u32 << n) - 1;
            let mut m = SparseMatrix::zero(ext.subsets.len());
            for (c, &s) in ext.subsets.iter().enumerate() {
                let comp = full & !s;
                let inversions: u32 = (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| (comp & ((1 << i) - 1)).count_ones())
                    .sum();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                m.add_entry(ext.index[&comp], c, gr_int(sign, 0));
            }
            m
        }
        FamilySpec::CliffordOdd { n } => {
            let n = n as usize;
            gamma_matrix(n, 2 * n + 1, y_label(n))
        }
        FamilySpec::CliffordEven { n } => {
            let n = n as usize;
            gamma_matrix(n, 2 * n, y_label(n))
        }
    })
}

/// `0^n 1^n` (then a trailing 0 for odd labels), as label bits.
fn y_label(n: usize) -> u64 {
    ((1u64 << n) - 1) << n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub family: FamilySpec,
    pub expected: Vec<i8>,
    /// Sign with `T(Y) = sign * Y` on every Hermitian element tried, or
    /// `None` when no common sign exists.
    pub found: Vec<Option<i8>>,
    /// First `(j, basis index)` whose Hermitian part breaks the expected sign.
    pub first_mismatch: Option<(usize, usize)>,
    pub matches: bool,
}

/// Applies `T(X) = Lambda conj(X) Lambda^*` to the Hermitian parts of each
/// basis element of each `V_j` and compares with the catalogued signs.
pub fn verify_lambda(spec: &FamilySpec) -> Result<LambdaReport, OracleError> {
    let expected = lambda_signature(spec)?
        .signs()
        .ok_or_else(|| OracleError::NotSelfDual(spec.to_string()))?
        .to_vec();
    let lam = lambda_unitary(spec)?;
    let bases = v_bases(spec)?;
    let space = &bases[0].space;
    let lam_adj = space.adjoint(&lam);
    let i = gr_int(0, 1);
    let mut found = Vec::with_capacity(bases.len());
    let mut first_mismatch = None;
    for (j, b) in bases.iter().enumerate() {
        let mut sign: Option<Option<i8>> = None;
        for (k, x) in b.matrices.iter().enumerate() {
            let xa = space.adjoint(x);
            for y in [x.add(&xa), x.sub(&xa).scale(&i)] {
                if y.is_zero() {
                    continue;
                }
                let ty = lam.mul(&y.conj()).mul(&lam_adj);
                let s = if ty == y {
                    Some(1)
                } else if ty == y.scale(&gr_int(-1, 0)) {
                    Some(-1)
                } else {
                    None
                };
                if s != Some(expected[j]) && first_mismatch.is_none() {
                    first_mismatch = Some((j, k));
                }
                sign = match sign {
                    None => Some(s),
                    Some(prev) if prev == s => Some(prev),
                    Some(_) => Some(None),
                };
            }
        }
        found.push(sign.flatten());
    }
    Ok(LambdaReport {
        family: *spec,
        matches: first_mismatch.is_none(),
        expected,
        found,
        first_mismatch,
    })
}
