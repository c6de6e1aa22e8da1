use crate::arith::{i_pow, GaussianRational};
use crate::matrix::{SparseMatrix, SparseVec};

use super::binary::BinaryVector;
use super::CliffordError;

pub const MAX_QUBITS: usize = 31;

/// `i^phase X^x Z^z` on `n` qubits. Qubit `k` (1-based, leftmost tensor
/// factor first) is bit `n - k` of a computational basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub n: usize,
    pub x: u64,
    pub z: u64,
    pub phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: 0,
            z: 0,
            phase: 0,
        }
    }

    fn qubit(n: usize, k: usize) -> u64 {
        1 << (n - k)
    }

    /// Multiplies `self * o`.
    pub fn mul(&self, o: &PauliString) -> PauliString {
        assert_eq!(self.n, o.n);
        // Z^b X^a = (-1)^{a.b} X^a Z^b
        let swap = (self.z & o.x).count_ones() as u8 % 2;
        PauliString {
            n: self.n,
            x: self.x ^ o.x,
            z: self.z ^ o.z,
            phase: (self.phase + o.phase + 2 * swap) % 4,
        }
    }

    pub fn dagger(&self) -> PauliString {
        let swap = (self.x & self.z).count_ones() as u8 % 2;
        PauliString {
            phase: (4 - self.phase + 2 * swap) % 4,
            ..*self
        }
    }

    pub fn scale_phase(&self, k: u8) -> PauliString {
        PauliString {
            phase: (self.phase + k) % 4,
            ..*self
        }
    }

    /// Image of the basis vector `v` as `(i-power, index)`.
    pub fn apply_basis(&self, v: u64) -> (u8, u64) {
        let sign = (self.z & v).count_ones() as u8 % 2;
        ((self.phase + 2 * sign) % 4, v ^ self.x)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        v.iter()
            .map(|(&i, a)| {
                let (p, j) = self.apply_basis(i as u64);
                (j as usize, a * i_pow(p as u32))
            })
            .collect()
    }

    pub fn commutes(&self, o: &PauliString) -> bool {
        ((self.x & o.z).count_ones() + (self.z & o.x).count_ones()) % 2 == 0
    }

    pub fn matrix(&self) -> SparseMatrix {
        let dim = 1usize << self.n;
        let mut m = SparseMatrix::zero(dim);
        for v in 0..dim as u64 {
            let (p, w) = self.apply_basis(v);
            m.add_entry(w as usize, v as usize, i_pow(p as u32));
        }
        m
    }

    /// Phase `c` with `self = c * o`, when both have the same support.
    pub fn ratio(&self, o: &PauliString) -> Option<GaussianRational> {
        if self.n != o.n || self.x != o.x || self.z != o.z {
            return None;
        }
        Some(i_pow(((4 + self.phase - o.phase) % 4) as u32))
    }
}

/// The generator `U_k` of the Weyl-Brauer representation, `1 <= k <= 2n+1`.
pub fn weyl_brauer_pauli(n: usize, k: usize) -> Result<PauliString, CliffordError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(CliffordError::TooLarge(format!("{n} qubits")));
    }
    if k == 0 || k > 2 * n + 1 {
        return Err(CliffordError::IndexOutOfRange {
            index: k,
            max: 2 * n + 1,
        });
    }
    let parity = |k: usize| (1..k).fold(0u64, |acc, l| acc | PauliString::qubit(n, l));
    Ok(if k <= n {
        PauliString {
            n,
            x: PauliString::qubit(n, k),
            z: parity(k),
            phase: 0,
        }
    } else if k <= 2 * n {
        // sigma_y = i X Z
        let k = k - n;
        PauliString {
            n,
            x: PauliString::qubit(n, k),
            z: parity(k) | PauliString::qubit(n, k),
            phase: 1,
        }
    } else {
        PauliString {
            n,
            x: 0,
            z: parity(n + 1),
            phase: 0,
        }
    })
}

pub fn weyl_brauer(n: usize, k: usize) -> Result<SparseMatrix, CliffordError> {
    Ok(weyl_brauer_pauli(n, k)?.matrix())
}

/// `Gamma_x` as a Pauli string, for labels of length `2n` or `2n+1`.
pub fn gamma_pauli(n: usize, x: &BinaryVector) -> Result<PauliString, CliffordError> {
    if x.len() != 2 * n && x.len() != 2 * n + 1 {
        return Err(CliffordError::LengthMismatch {
            expected: 2 * n,
            found: x.len(),
        });
    }
    let mut acc = PauliString::identity(n);
    for k in 1..=n {
        if x.get(k - 1) {
            acc = acc.mul(&weyl_brauer_pauli(n, k)?);
        }
        if x.get(n + k - 1) {
            acc = acc.mul(&weyl_brauer_pauli(n, n + k)?);
        }
    }
    if x.get(2 * n) {
        acc = acc.mul(&weyl_brauer_pauli(n, 2 * n + 1)?);
    }
    let w = x.weight() as u64;
    let tau = (w * w.saturating_sub(1) / 2) % 4;
    Ok(acc.scale_phase(tau as u8))
}

/// A Clifford operator `Gamma_x` on `n` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordOp {
    pub n: usize,
    pub label: BinaryVector,
    pub pauli: PauliString,
}

impl CliffordOp {
    pub fn matrix(&self) -> SparseMatrix {
        self.pauli.matrix()
    }
}

pub fn gamma(n: usize, x: &BinaryVector) -> Result<CliffordOp, CliffordError> {
    Ok(CliffordOp {
        n,
        label: *x,
        pauli: gamma_pauli(n, x)?,
    })
}
