//! Phase-one simplex over exact rationals.
//!
//! A floating-point pass proposes a final basis; the exact integer tableau is
//! pivoted onto it and the exact simplex finishes from there, so every
//! verdict is decided in exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl LinearConstraint {
    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
        }
    }
}

/// Integer tableau sharing one denominator `den`: the true entries are
/// `rows[i][j] / den`, and the objective row is stored last.
#[derive(Clone)]
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    den: BigInt,
    basis: Vec<usize>,
    art_start: usize,
    degenerate: bool,
}

impl Tableau {
    fn width(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let prow = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                let mut v = &*x * &p;
                if !f.is_zero() && !y.is_zero() {
                    v -= &f * y;
                }
                *x = if self.den.is_one() { v } else { v / &self.den };
            }
        }
        self.rows[r] = prow;
        self.den = p;
        self.basis[r] = c;
        if self.den.is_negative() {
            for row in self.rows.iter_mut() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            self.den = -&self.den;
        }
    }

    /// Pivots the proposed columns into the basis. Returns false if the
    /// resulting basis is singular or infeasible.
    fn crash(&mut self, target: &[usize]) -> bool {
        let m = self.rows.len() - 1;
        let mut wanted: Vec<usize> = target.to_vec();
        wanted.sort_unstable();
        for r in 0..m {
            if wanted.binary_search(&self.basis[r]).is_ok() {
                continue;
            }
            let c = wanted
                .iter()
                .copied()
                .find(|&c| !self.basis.contains(&c) && !self.rows[r][c].is_zero());
            match c {
                Some(c) => self.pivot(r, c),
                None => return false,
            }
        }
        let rhs = self.width();
        (0..m).all(|i| !self.rows[i][rhs].is_negative())
    }

    /// Minimises the objective row until no reduced cost is negative.
    fn run(&mut self) {
        let m = self.rows.len() - 1;
        let rhs = self.width();
        loop {
            let obj = &self.rows[m];
            // Bland's rule after a degenerate step, steepest reduced cost otherwise
            let entering = if self.degenerate {
                (0..rhs).find(|&j| obj[j].is_negative())
            } else {
                (0..rhs)
                    .filter(|&j| obj[j].is_negative())
                    .min_by(|&a, &b| obj[a].cmp(&obj[b]))
            };
            let Some(c) = entering else {
                return;
            };
            let mut best: Option<usize> = None;
            for i in 0..m {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => {
                        // rhs_i / a_ic against rhs_b / a_bc
                        let lhs = &self.rows[i][rhs] * &self.rows[b][c];
                        let rgt = &self.rows[b][rhs] * &self.rows[i][c];
                        lhs < rgt || (lhs == rgt && self.basis[i] < self.basis[b])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
            match best {
                Some(r) => {
                    self.degenerate = self.rows[r][rhs].is_zero();
                    self.pivot(r, c)
                }
                None => unreachable!("phase-one objective is unbounded"),
            }
        }
    }
}

fn integer_row(row: &[BigRational], rhs: &BigRational) -> Vec<BigInt> {
    let l = row
        .iter()
        .chain(std::iter::once(rhs))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .chain(std::iter::once(rhs))
        .map(|x| (x.numer() * &l) / x.denom())
        .collect()
}

/// Finds `x >= 0` satisfying every constraint, or `None` if none exists.
pub fn find_feasible(nvars: usize, constraints: &[LinearConstraint]) -> Option<Vec<BigRational>> {
    solve(nvars, constraints, true)
}

/// Same as [`find_feasible`] without the floating-point warm start.
pub fn find_feasible_cold(
    nvars: usize,
    constraints: &[LinearConstraint],
) -> Option<Vec<BigRational>> {
    solve(nvars, constraints, false)
}

fn solve(nvars: usize, constraints: &[LinearConstraint], warm: bool) -> Option<Vec<BigRational>> {
    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
    // rows with a zero right-hand side keep their slack basic after negation
    let flips =
        |c: &LinearConstraint| c.rhs.is_negative() || (c.rhs.is_zero() && c.rel == Relation::Ge);
    let n_art = constraints
        .iter()
        .filter(|c| c.rel == Relation::Eq || (c.rel == Relation::Ge) != flips(c))
        .count();
    let total = nvars + n_slack + n_art;
    let mut rows = Vec::with_capacity(m + 1);
    let mut basis = Vec::with_capacity(m);
    let mut slack = nvars;
    let mut art = nvars + n_slack;
    let mut obj = vec![BigInt::zero(); total + 1];
    for con in constraints {
        assert_eq!(con.coeffs.len(), nvars);
        let mut rel = con.rel;
        let ints = if flips(con) {
            rel = match rel {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
            let neg: Vec<BigRational> = con.coeffs.iter().map(|x| -x).collect();
            integer_row(&neg, &-&con.rhs)
        } else {
            integer_row(&con.coeffs, &con.rhs)
        };
        let mut row = vec![BigInt::zero(); total + 1];
        row[..nvars].clone_from_slice(&ints[..nvars]);
        row[total] = ints[nvars].clone();
        match rel {
            Relation::Le => {
                row[slack] = BigInt::one();
                basis.push(slack);
                slack += 1;
            }
            Relation::Ge | Relation::Eq => {
                if rel == Relation::Ge {
                    row[slack] = -BigInt::one();
                    slack += 1;
                }
                row[art] = BigInt::one();
                basis.push(art);
                art += 1;
                // reduced costs of the sum of artificials
                for (o, x) in obj.iter_mut().zip(&row) {
                    *o -= x;
                }
            }
        }
        rows.push(row);
    }
    for o in obj[nvars + n_slack..total].iter_mut() {
        *o += BigInt::one();
    }
    rows.push(obj);
    let start = Tableau {
        rows,
        den: BigInt::one(),
        basis,
        art_start: nvars + n_slack,
        degenerate: false,
    };
    let mut t = start.clone();
    let crashed = warm && float_basis(&start).map(|b| t.crash(&b)).unwrap_or(false);
    if !crashed {
        t = start;
    }
    t.run();
    if !t.rows[m][total].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < nvars {
            x[b] = BigRational::new(t.rows[i][total].clone(), t.den.clone());
        }
    }
    Some(x)
}

const EPS: f64 = 1e-9;

/// Runs phase one in floating point and returns its final basis.
fn float_basis(t: &Tableau) -> Option<Vec<usize>> {
    let m = t.rows.len() - 1;
    let w = t.width();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    for (i, row) in t.rows[..m].iter().enumerate() {
        let f: Vec<f64> = row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        let scale = f.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if !scale.is_finite() || scale == 0.0 {
            return None;
        }
        let mut f: Vec<f64> = f.iter().map(|x| x / scale).collect();
        // rescale the unit basic column back to one
        f[t.basis[i]] = 1.0;
        rows.push(f);
    }
    let mut obj = vec![0.0; w + 1];
    for (i, row) in rows.iter().enumerate() {
        if t.basis[i] >= t.art_start {
            for (o, x) in obj.iter_mut().zip(row) {
                *o -= x;
            }
        }
    }
    for o in obj[t.art_start..w].iter_mut() {
        *o += 1.0;
    }
    rows.push(obj);
    let mut basis = t.basis.clone();
    let mut degenerate = false;
    for _ in 0..50 * (m + w) {
        let obj = &rows[m];
        let entering = if degenerate {
            (0..w).find(|&j| obj[j] < -EPS)
        } else {
            (0..w)
                .filter(|&j| obj[j] < -EPS)
                .min_by(|&a, &b| obj[a].total_cmp(&obj[b]))
        };
        let Some(c) = entering else {
            return Some(basis);
        };
        let mut best: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = rows[i][c];
            if a <= EPS {
                continue;
            }
            let ratio = rows[i][w] / a;
            let better = match best {
                None => true,
                Some((b, br)) => ratio < br - EPS || (ratio <= br + EPS && basis[i] < basis[b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        let (r, _) = best?;
        degenerate = rows[r][w].abs() <= EPS;
        let prow: Vec<f64> = {
            let p = rows[r][c];
            rows[r].iter().map(|x| x / p).collect()
        };
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        rows[r] = prow;
        basis[r] = c;
    }
    None
}
