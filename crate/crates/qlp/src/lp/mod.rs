//! The quantum linear program for a metric family and the bounds built on
//! top of it.

pub mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{int, rat, serde_rat};
use crate::metric::{profile, FamilySpec, ValidationError};
use crate::wtj::{lambda_signature, wtj_matrix, SelfDualSignature};
pub use simplex::{find_feasible, find_feasible_cold, LinearConstraint, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("distance {d} outside 1..={max}")]
    DistanceOutOfRange { d: usize, max: usize },
    #[error("{0} has no self-dual structure")]
    NotSelfDual(FamilySpec),
    #[error("K must be positive")]
    NonPositiveK,
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// Which family of inequalities a row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowKind {
    Value,
    Detected(usize),
    Shadow(usize),
    SelfDual(usize),
    Pure(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub kind: RowKind,
    pub constraint: LinearConstraint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LpOptions {
    pub self_dual: bool,
    pub pure: bool,
}

/// Constraints on `A_0..A_r` for a code of value `K` and distance `d`.
/// Nonnegativity of every variable is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSystem {
    pub family: FamilySpec,
    pub k: BigRational,
    pub d: usize,
    pub options: LpOptions,
    pub rows: Vec<LpRow>,
}

impl LpSystem {
    pub fn nvars(&self) -> usize {
        self.rows[0].constraint.coeffs.len()
    }

    /// Exact substitution of `a` into every row.
    pub fn satisfied_by(&self, a: &[BigRational]) -> bool {
        a.len() == self.nvars()
            && a.iter().all(|x| !x.is_negative())
            && self.rows.iter().all(|r| r.constraint.holds(a))
    }
}

pub fn build_system(
    spec: &FamilySpec,
    k: &BigRational,
    d: usize,
    options: LpOptions,
) -> Result<LpSystem, LpError> {
    let p = profile(spec)?;
    let r = p.r;
    if d < 1 || d > r + 1 {
        return Err(LpError::DistanceOutOfRange { d, max: r + 1 });
    }
    if !k.is_positive() {
        return Err(LpError::NonPositiveK);
    }
    let w = wtj_matrix(spec)?;
    let lambda = if options.self_dual {
        match lambda_signature(spec)? {
            SelfDualSignature::SelfDual(v) => Some(v),
            SelfDualSignature::NotSelfDual => return Err(LpError::NotSelfDual(*spec)),
        }
    } else {
        None
    };
    let nv = r + 1;
    let unit = |t: usize| {
        let mut v = vec![BigRational::zero(); nv];
        v[t] = BigRational::one();
        v
    };
    let mut rows = Vec::new();
    rows.push(LpRow {
        kind: RowKind::Value,
        constraint: LinearConstraint {
            coeffs: unit(0),
            rel: Relation::Eq,
            rhs: k.clone(),
        },
    });
    for t in 0..=r {
        // K * B_t - A_t
        let mut coeffs: Vec<BigRational> = w.row(t).iter().map(|x| x * k).collect();
        coeffs[t] -= BigRational::one();
        let (kind, rel) = if t < d {
            (RowKind::Detected(t), Relation::Eq)
        } else {
            (RowKind::Shadow(t), Relation::Ge)
        };
        rows.push(LpRow {
            kind,
            constraint: LinearConstraint {
                coeffs,
                rel,
                rhs: BigRational::zero(),
            },
        });
    }
    if let Some(lambda) = &lambda {
        for t in 0..=r {
            let coeffs = (0..nv)
                .map(|j| &w.entries[t][j] * int(lambda[j] as i64))
                .collect();
            rows.push(LpRow {
                kind: RowKind::SelfDual(t),
                constraint: LinearConstraint {
                    coeffs,
                    rel: Relation::Ge,
                    rhs: BigRational::zero(),
                },
            });
        }
    }
    if options.pure {
        for t in 1..d {
            rows.push(LpRow {
                kind: RowKind::Pure(t),
                constraint: LinearConstraint {
                    coeffs: unit(t),
                    rel: Relation::Eq,
                    rhs: BigRational::zero(),
                },
            });
        }
    }
    Ok(LpSystem {
        family: *spec,
        k: k.clone(),
        d,
        options,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

pub fn check_feasible(sys: &LpSystem) -> Feasibility {
    let cons: Vec<LinearConstraint> = sys.rows.iter().map(|r| r.constraint.clone()).collect();
    match find_feasible(sys.nvars(), &cons) {
        Some(a) => {
            assert!(
                sys.satisfied_by(&a),
                "simplex witness failed re-verification"
            );
            Feasibility::Feasible(a)
        }
        None => Feasibility::Infeasible,
    }
}

pub fn feasible_at(
    spec: &FamilySpec,
    k: &BigRational,
    d: usize,
    options: LpOptions,
) -> Result<Feasibility, LpError> {
    Ok(check_feasible(&build_system(spec, k, d, options)?))
}

pub fn default_tolerance() -> BigRational {
    rat(1, 100_000)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub family: FamilySpec,
    pub d: usize,
    pub self_dual: bool,
    pub pure: bool,
    /// Largest value certified feasible, if any.
    #[serde(with = "serde_rat::opt")]
    pub feasible_at: Option<BigRational>,
    /// Smallest value certified infeasible, if any.
    #[serde(with = "serde_rat::opt")]
    pub infeasible_at: Option<BigRational>,
    #[serde(with = "serde_rat::vec")]
    pub witness: Vec<BigRational>,
    #[serde(
        with = "serde_rat::int_opt",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub integer_bound: Option<BigInt>,
    /// Number of bisection steps.
    pub iterations: usize,
}

impl BoundResult {
    /// The value reported in tables: the infeasible end of the bracket, or
    /// `dim_H` when that is feasible.
    pub fn value(&self) -> Option<&BigRational> {
        self.infeasible_at.as_ref().or(self.feasible_at.as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundOptions {
    pub lp: LpOptions,
    pub tolerance: BigRational,
    pub integer: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            lp: LpOptions::default(),
            tolerance: default_tolerance(),
            integer: false,
        }
    }
}

/// Bisects on `K` between 1 and `dim_H` until the bracket is narrower than
/// the tolerance.
pub fn lp_bound(spec: &FamilySpec, d: usize, opts: &BoundOptions) -> Result<BoundResult, LpError> {
    if !opts.tolerance.is_positive() {
        return Err(LpError::BadTolerance);
    }
    let p = profile(spec)?;
    let dim_h = p.dim_h_q();
    let check = |k: &BigRational| feasible_at(spec, k, d, opts.lp);
    let mut result = BoundResult {
        family: *spec,
        d,
        self_dual: opts.lp.self_dual,
        pure: opts.lp.pure,
        feasible_at: None,
        infeasible_at: None,
        witness: Vec::new(),
        integer_bound: None,
        iterations: 0,
    };
    let one = BigRational::one();
    match check(&one)? {
        Feasibility::Infeasible => {
            result.infeasible_at = Some(one);
            if opts.integer {
                result.integer_bound = Some(BigInt::zero());
            }
            return Ok(result);
        }
        Feasibility::Feasible(a) => {
            result.feasible_at = Some(one.clone());
            result.witness = a;
        }
    }
    match check(&dim_h)? {
        Feasibility::Feasible(a) => {
            result.feasible_at = Some(dim_h.clone());
            result.witness = a;
            if opts.integer {
                result.integer_bound = Some(p.dim_h.clone());
            }
            return Ok(result);
        }
        Feasibility::Infeasible => result.infeasible_at = Some(dim_h.clone()),
    }
    let mut lo = one;
    let mut hi = dim_h;
    while &hi - &lo >= opts.tolerance {
        let mid = (&lo + &hi) / int(2);
        result.iterations += 1;
        match check(&mid)? {
            Feasibility::Feasible(a) => {
                lo = mid;
                result.witness = a;
            }
            Feasibility::Infeasible => hi = mid,
        }
    }
    // bisection midpoints are dyadic; the true optimum is usually a simple
    // fraction, so try the simplest one left in the bracket
    let s = simplest_between(&lo, &hi);
    if s > lo && s < hi {
        if let Feasibility::Feasible(a) = check(&s)? {
            lo = s;
            result.witness = a;
        }
    }
    result.feasible_at = Some(lo.clone());
    result.infeasible_at = Some(hi.clone());
    if opts.integer {
        let mut k = lo.floor();
        loop {
            let next = &k + BigRational::one();
            if !check(&next)?.is_feasible() {
                break;
            }
            k = next;
        }
        result.integer_bound = Some(k.to_integer());
    }
    Ok(result)
}

/// Rational with the smallest denominator in `[a, b]`, for `0 < a <= b`.
pub fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= b {
        return next;
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnalyticBound {
    Value(#[serde(with = "serde_rat")] BigRational),
    NotApplicable,
}

impl AnalyticBound {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            AnalyticBound::Value(v) => Some(v),
            AnalyticBound::NotApplicable => None,
        }
    }
}

fn w1_min(spec: &FamilySpec) -> Result<(BigRational, Vec<usize>, Vec<BigRational>), LpError> {
    let p = profile(spec)?;
    if p.r < 1 {
        return Err(LpError::DistanceOutOfRange { d: 2, max: p.r + 1 });
    }
    let w = wtj_matrix(spec)?;
    let row = w.row(1).to_vec();
    let m = row.iter().min().cloned().expect("nonempty row");
    let at: Vec<usize> = (0..row.len()).filter(|&j| row[j] == m).collect();
    Ok((m, at, row))
}

/// Closed-form bound on the value of any distance-2 code, when the least
/// entry of the first row is not attained at `j = 1`.
pub fn dist2_bound(spec: &FamilySpec) -> Result<AnalyticBound, LpError> {
    let (m, at, row) = w1_min(spec)?;
    if at.contains(&1) {
        return Ok(AnalyticBound::NotApplicable);
    }
    let dim_h = profile(spec)?.dim_h_q();
    let a = -&m * dim_h / (&row[0] - &m);
    let b = (&row[1] - &m).recip();
    Ok(AnalyticBound::Value(a.max(b)))
}

/// Ratio-type bound on the value of any pure distance-2 code.
pub fn dist2_bound_pure(spec: &FamilySpec) -> Result<BigRational, LpError> {
    let (m, _, row) = w1_min(spec)?;
    let dim_h = profile(spec)?.dim_h_q();
    Ok(-&m * dim_h / (&row[0] - &m))
}

/// `dim_H` over the size of the ball of radius `floor((d-1)/2)`.
pub fn volume_bound(spec: &FamilySpec, d: usize) -> Result<BigRational, LpError> {
    let p = profile(spec)?;
    if d < 1 || d > p.r + 1 {
        return Err(LpError::DistanceOutOfRange { d, max: p.r + 1 });
    }
    let ball: BigInt = p.dim_v[..=(d - 1) / 2].iter().sum();
    Ok(p.dim_h_q() / BigRational::from_integer(ball))
}
