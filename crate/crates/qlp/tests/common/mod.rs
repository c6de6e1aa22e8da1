#![allow(dead_code)]

use qlp::arith::{gr_int, GaussianRational};
use qlp::clifford::{is_q_isotropic, BinaryVector, F2Basis, StabilizerCode};
use qlp::matrix::SparseMatrix;
use rand::Rng;

pub fn pauli_x() -> SparseMatrix {
    SparseMatrix::from_dense(&[
        vec![gr_int(0, 0), gr_int(1, 0)],
        vec![gr_int(1, 0), gr_int(0, 0)],
    ])
}

pub fn pauli_y() -> SparseMatrix {
    SparseMatrix::from_dense(&[
        vec![gr_int(0, 0), gr_int(0, -1)],
        vec![gr_int(0, 1), gr_int(0, 0)],
    ])
}

pub fn pauli_z() -> SparseMatrix {
    SparseMatrix::from_dense(&[
        vec![gr_int(1, 0), gr_int(0, 0)],
        vec![gr_int(0, 0), gr_int(-1, 0)],
    ])
}

pub fn kron_all(ms: &[SparseMatrix]) -> SparseMatrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kron(m))
}

/// `U_k` straight from its tensor-product definition.
pub fn weyl_brauer_kron(n: usize, k: usize) -> SparseMatrix {
    let id = SparseMatrix::identity(2);
    let factors: Vec<SparseMatrix> = if k == 2 * n + 1 {
        vec![pauli_z(); n]
    } else {
        let (pos, mid) = if k <= n {
            (k, pauli_x())
        } else {
            (k - n, pauli_y())
        };
        (1..=n)
            .map(|l| {
                if l < pos {
                    pauli_z()
                } else if l == pos {
                    mid.clone()
                } else {
                    id.clone()
                }
            })
            .collect()
    };
    kron_all(&factors)
}

/// `Gamma_x` as the phase times the ordered product of tensor-product
/// generators.
pub fn gamma_kron(n: usize, x: &BinaryVector) -> SparseMatrix {
    let mut order = Vec::new();
    for k in 1..=n {
        order.push(k);
        order.push(n + k);
    }
    order.push(2 * n + 1);
    let mut acc = SparseMatrix::identity(1 << n);
    for k in order {
        if x.get(k - 1) {
            acc = acc.mul(&weyl_brauer_kron(n, k));
        }
    }
    let w = x.weight();
    let tau = w * w.saturating_sub(1) / 2;
    acc.scale(&qlp::arith::i_pow(tau))
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> BinaryVector {
    let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
    BinaryVector::from_slice(&bits)
}

/// Random q-isotropic independent generators on `n` qubits, `m` of them at
/// most, with random signs.
pub fn random_stabilizer<R: Rng>(rng: &mut R, n: usize, m: usize) -> StabilizerCode {
    let mut gens: Vec<BinaryVector> = Vec::new();
    let mut span = F2Basis::new(2 * n);
    for _ in 0..64 {
        if gens.len() == m {
            break;
        }
        let x = random_vector(rng, 2 * n);
        let mut trial = gens.clone();
        trial.push(x);
        if is_q_isotropic(&trial).unwrap() && !span.contains(x.bits()) {
            span.insert(x.bits());
            gens = trial;
        }
    }
    let signs = gens
        .iter()
        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    StabilizerCode::new(n, gens, signs).unwrap()
}

pub fn random_gr<R: Rng>(rng: &mut R) -> GaussianRational {
    gr_int(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
}
