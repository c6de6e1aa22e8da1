//! Exact scalars: rationals, Gaussian rationals and sums of square roots.

pub mod gaussian;
pub mod rational;
pub mod surd;

pub use gaussian::{gr, gr_div, gr_int, gr_real, i_pow, GaussianRational};
pub use num_rational::BigRational;
pub use rational::{
    binomial, binomial_q, factorial, factorial_q, format_rational, int, parse_rational, rat,
};
pub use surd::SurdSum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}
