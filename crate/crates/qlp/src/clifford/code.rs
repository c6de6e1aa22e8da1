use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::rational::pow2;
use crate::arith::{gr_real, i_pow, GaussianRational};
use crate::matrix::{axpy, inner, SparseMatrix, SparseVec};
use crate::metric::FamilySpec;

use super::binary::{is_q_isotropic, BinaryVector, F2Basis};
use super::pauli::{gamma_pauli, PauliString, MAX_QUBITS};
use super::CliffordError;

/// Largest qubit count for which projectors and code bases are built.
pub const MATRIX_MAX_QUBITS: usize = 10;

/// Joint eigenspace of commuting `Gamma_g`, with eigenvalue `signs[i]` on
/// `generators[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerCode {
    pub n: usize,
    pub generators: Vec<BinaryVector>,
    pub signs: Vec<i8>,
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        generators: Vec<BinaryVector>,
        signs: Vec<i8>,
    ) -> Result<Self, CliffordError> {
        let code = StabilizerCode {
            n,
            generators,
            signs,
        };
        code.check()?;
        Ok(code)
    }

    pub fn with_plus_signs(n: usize, generators: Vec<BinaryVector>) -> Result<Self, CliffordError> {
        let signs = vec![1; generators.len()];
        StabilizerCode::new(n, generators, signs)
    }

    pub fn check(&self) -> Result<(), CliffordError> {
        if self.n == 0 || self.n > MAX_QUBITS {
            return Err(CliffordError::TooLarge(format!("{} qubits", self.n)));
        }
        for g in &self.generators {
            if g.len() != 2 * self.n {
                return Err(CliffordError::LengthMismatch {
                    expected: 2 * self.n,
                    found: g.len(),
                });
            }
        }
        if self.signs.len() != self.generators.len() {
            return Err(CliffordError::BadSigns(format!(
                "{} signs for {} generators",
                self.signs.len(),
                self.generators.len()
            )));
        }
        if let Some(s) = self.signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(CliffordError::BadSigns(format!("sign {s} is not +1 or -1")));
        }
        if !is_q_isotropic(&self.generators)? {
            return Err(CliffordError::NotIsotropic);
        }
        if !F2Basis::from_vectors(&self.generators).1 {
            return Err(CliffordError::Dependent);
        }
        Ok(())
    }

    pub fn log2_dimension(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn span(&self) -> F2Basis {
        let mut b = F2Basis::new(2 * self.n);
        for g in &self.generators {
            b.insert(g.bits());
        }
        b
    }

    /// Every element of the stabilizer group `prod (s_i Gamma_{g_i})`,
    /// keyed by label bits.
    pub fn group(&self) -> Result<HashMap<u64, PauliString>, CliffordError> {
        let m = self.generators.len();
        if m > 24 {
            return Err(CliffordError::TooLarge(format!(
                "stabilizer group of 2^{m} elements"
            )));
        }
        let gens: Vec<PauliString> = self
            .generators
            .iter()
            .zip(&self.signs)
            .map(|(g, &s)| {
                let p = gamma_pauli(self.n, g)?;
                Ok(if s < 0 { p.scale_phase(2) } else { p })
            })
            .collect::<Result<_, CliffordError>>()?;
        let mut out = HashMap::with_capacity(1 << m);
        out.insert(0u64, PauliString::identity(self.n));
        let mut label = 0u64;
        let mut prod = PauliString::identity(self.n);
        // Gray code order; the signed generators commute and square to one,
        // so multiplying toggles a factor in or out
        for i in 1u64..(1u64 << m) {
            let b = i.trailing_zeros() as usize;
            label ^= self.generators[b].bits();
            prod = prod.mul(&gens[b]);
            out.insert(label, prod);
        }
        Ok(out)
    }
}

/// The code from the classical Hamming parity checks of length `2^s - 1`.
pub fn clifford_hamming(s: usize) -> Result<StabilizerCode, CliffordError> {
    if s < 3 {
        return Err(CliffordError::HammingParameter(s));
    }
    let n = (1usize << s) - 1;
    if n > MAX_QUBITS {
        return Err(CliffordError::TooLarge(format!("{n} qubits")));
    }
    let mut gens = Vec::with_capacity(s + 1);
    for row in 0..s {
        let bit = s - 1 - row;
        let x: Vec<u8> = (1..=n).map(|c| ((c >> bit) & 1) as u8).collect();
        let x = BinaryVector::from_slice(&x);
        gens.push(x.concat(&x));
    }
    gens.push(BinaryVector::ones(n).concat(&BinaryVector::zero(n)));
    StabilizerCode::with_plus_signs(n, gens)
}

#[derive(Debug, Clone, PartialEq)]
pub enum CodeRepr {
    Stabilizer(StabilizerCode),
    Projector(SparseMatrix),
    /// Spanning vectors, not necessarily orthogonal.
    Vectors(Vec<SparseVec>),
}

/// A code on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeObject {
    pub family: FamilySpec,
    pub n: usize,
    pub repr: CodeRepr,
}

pub fn build_code(stab: &StabilizerCode) -> Result<CodeObject, CliffordError> {
    stab.check()?;
    Ok(CodeObject {
        family: FamilySpec::CliffordOdd { n: stab.n as u32 },
        n: stab.n,
        repr: CodeRepr::Stabilizer(stab.clone()),
    })
}

impl CodeObject {
    pub fn from_projector(family: FamilySpec, n: usize, p: SparseMatrix) -> Self {
        CodeObject {
            family,
            n,
            repr: CodeRepr::Projector(p),
        }
    }

    pub fn from_vectors(family: FamilySpec, n: usize, vs: Vec<SparseVec>) -> Self {
        CodeObject {
            family,
            n,
            repr: CodeRepr::Vectors(vs),
        }
    }

    pub fn stabilizer(&self) -> Option<&StabilizerCode> {
        match &self.repr {
            CodeRepr::Stabilizer(s) => Some(s),
            _ => None,
        }
    }

    fn matrix_guard(&self) -> Result<(), CliffordError> {
        if self.n > MATRIX_MAX_QUBITS {
            Err(CliffordError::TooLarge(format!(
                "{} qubits exceeds the matrix limit of {MATRIX_MAX_QUBITS}; use the symbolic path",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// The orthogonal projector onto the code.
    pub fn projector(&self) -> Result<SparseMatrix, CliffordError> {
        self.matrix_guard()?;
        match &self.repr {
            CodeRepr::Projector(p) => Ok(p.clone()),
            CodeRepr::Stabilizer(s) => {
                let group = s.group()?;
                let dim = 1usize << self.n;
                let scale = gr_real(pow2(s.generators.len() as u32).recip());
                let mut p = SparseMatrix::zero(dim);
                for g in group.values() {
                    for v in 0..dim as u64 {
                        let (ph, w) = g.apply_basis(v);
                        p.add_entry(w as usize, v as usize, &scale * i_pow(ph as u32));
                    }
                }
                Ok(p)
            }
            CodeRepr::Vectors(_) => {
                let basis = self.orthogonal_basis()?;
                let dim = 1usize << self.n;
                let mut p = SparseMatrix::zero(dim);
                for w in &basis {
                    let nu = inner(w, w).re;
                    for (i, a) in w {
                        for (j, b) in w {
                            p.add_entry(*i, *j, a * b.conj() / gr_real(nu.clone()));
                        }
                    }
                }
                Ok(p)
            }
        }
    }

    /// Pairwise orthogonal, unnormalised vectors spanning the code.
    pub fn orthogonal_basis(&self) -> Result<Vec<SparseVec>, CliffordError> {
        self.matrix_guard()?;
        let dim = 1usize << self.n;
        let candidates: Box<dyn Iterator<Item = SparseVec>> = match &self.repr {
            CodeRepr::Vectors(vs) => Box::new(vs.clone().into_iter()),
            CodeRepr::Projector(p) => {
                let pt = p.dagger();
                Box::new(
                    (0..dim).map(move |i| pt.row(i).iter().map(|(j, x)| (*j, x.conj())).collect()),
                )
            }
            CodeRepr::Stabilizer(s) => {
                // P|v> is supported on the coset of v modulo the X parts of
                // the group, and cosets give orthogonal vectors
                let group: Vec<PauliString> = s.group()?.into_values().collect();
                let want = 1usize << s.log2_dimension();
                let mut xs = F2Basis::new(self.n);
                for g in &group {
                    xs.insert(g.x);
                }
                let mut out = Vec::new();
                for v in 0..dim as u64 {
                    if out.len() == want {
                        break;
                    }
                    if xs.reduce(v) != v {
                        continue;
                    }
                    let mut col = SparseVec::new();
                    for g in &group {
                        let (ph, w) = g.apply_basis(v);
                        axpy(
                            &mut col,
                            &i_pow(ph as u32),
                            &SparseVec::from([(w as usize, GaussianRational::one())]),
                        );
                    }
                    if !col.is_empty() {
                        out.push(col);
                    }
                }
                return Ok(out);
            }
        };
        let mut basis: Vec<(SparseVec, GaussianRational)> = Vec::new();
        for mut v in candidates {
            for (w, nu) in &basis {
                let c = inner(w, &v) / nu;
                axpy(&mut v, &-c, w);
            }
            if !v.is_empty() {
                let nu = inner(&v, &v);
                basis.push((v, nu));
            }
        }
        if basis.is_empty() {
            return Err(CliffordError::EmptyCode);
        }
        Ok(basis.into_iter().map(|(v, _)| v).collect())
    }
}
