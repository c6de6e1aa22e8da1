//! Sparse square matrices and vectors over the Gaussian rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::GaussianRational;

pub type SparseVec = BTreeMap<usize, GaussianRational>;

fn add_into(v: &mut SparseVec, i: usize, x: GaussianRational) {
    if x.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(GaussianRational::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// `<u|v>`, antilinear in `u`.
pub fn inner(u: &SparseVec, v: &SparseVec) -> GaussianRational {
    let (small, large, conj_small) = if u.len() <= v.len() {
        (u, v, true)
    } else {
        (v, u, false)
    };
    let mut acc = GaussianRational::zero();
    for (i, a) in small {
        if let Some(b) = large.get(i) {
            if conj_small {
                acc += a.conj() * b;
            } else {
                acc += b.conj() * a;
            }
        }
    }
    acc
}

pub fn axpy(y: &mut SparseVec, a: &GaussianRational, x: &SparseVec) {
    for (i, v) in x {
        add_into(y, *i, a * v);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![SparseVec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SparseMatrix::zero(dim);
        for i in 0..dim {
            m.rows[i].insert(i, GaussianRational::one());
        }
        m
    }

    pub fn diagonal(d: &[BigRational]) -> Self {
        let mut m = SparseMatrix::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.add_entry(i, i, GaussianRational::new(x.clone(), BigRational::zero()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<GaussianRational>]) -> Self {
        let mut m = SparseMatrix::zero(rows.len());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rows.len(), "matrix must be square");
            for (j, x) in r.iter().enumerate() {
                m.add_entry(i, j, x.clone());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        self.rows[i]
            .get(&j)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, x: GaussianRational) {
        add_into(&mut self.rows[i], j, x);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn scale(&self, a: &GaussianRational) -> Self {
        let mut m = SparseMatrix::zero(self.dim);
        for (i, j, x) in self.entries() {
            m.add_entry(i, j, a * x);
        }
        m
    }

    pub fn add(&self, o: &SparseMatrix) -> Self {
        let mut m = self.clone();
        for (i, j, x) in o.entries() {
            m.add_entry(i, j, x.clone());
        }
        m
    }

    pub fn sub(&self, o: &SparseMatrix) -> Self {
        let mut m = self.clone();
        for (i, j, x) in o.entries() {
            m.add_entry(i, j, -x.clone());
        }
        m
    }

    pub fn mul(&self, o: &SparseMatrix) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut m = SparseMatrix::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (k, a) in row {
                axpy(&mut acc, a, &o.rows[*k]);
            }
            m.rows[i] = acc;
        }
        m
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut m = SparseMatrix::zero(self.dim);
        for (i, j, x) in self.entries() {
            m.add_entry(j, i, x.conj());
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = SparseMatrix::zero(self.dim);
        for (i, j, x) in self.entries() {
            m.add_entry(i, j, x.conj());
        }
        m
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `tr(A B)` without forming the product.
    pub fn trace_product(&self, o: &SparseMatrix) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, j, x) in self.entries() {
            if let Some(y) = o.rows[j].get(&i) {
                acc += x * y;
            }
        }
        acc
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let x = inner_plain(row, v);
            add_into(&mut out, i, x);
        }
        out
    }

    pub fn kron(&self, o: &SparseMatrix) -> Self {
        let mut m = SparseMatrix::zero(self.dim * o.dim);
        for (i, j, x) in self.entries() {
            for (k, l, y) in o.entries() {
                m.add_entry(i * o.dim + k, j * o.dim + l, x * y);
            }
        }
        m
    }

    /// Restriction to the listed basis indices.
    pub fn compress(&self, idx: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut m = SparseMatrix::zero(idx.len());
        for (p, &i) in idx.iter().enumerate() {
            for (j, x) in &self.rows[i] {
                if let Some(&q) = pos.get(j) {
                    m.add_entry(p, q, x.clone());
                }
            }
        }
        m
    }
}

/// Bilinear `sum_i u_i v_i`.
fn inner_plain(u: &SparseVec, v: &SparseVec) -> GaussianRational {
    let (small, large) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let mut acc = GaussianRational::zero();
    for (i, a) in small {
        if let Some(b) = large.get(i) {
            acc += a * b;
        }
    }
    acc
}

/// Rank of a dense matrix by exact elimination.
pub fn rank(rows: &[Vec<GaussianRational>]) -> usize {
    let mut m: Vec<Vec<GaussianRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = GaussianRational::one() / &m[rank][c];
        let prow: Vec<GaussianRational> = m[rank].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// Inverse of a dense matrix, `None` if singular.
pub fn inverse(rows: &[Vec<GaussianRational>]) -> Option<Vec<Vec<GaussianRational>>> {
    let n = rows.len();
    let mut m: Vec<Vec<GaussianRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = GaussianRational::one() / &m[c][c];
        let prow: Vec<GaussianRational> = m[c].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        m[c] = prow;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
