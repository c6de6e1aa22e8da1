//! Exact quantum linear programming bounds for codes under general error
//! metrics built from Lie algebra and Clifford algebra actions.

pub mod arith;
pub mod clifford;
pub mod codefile;
pub mod lp;
pub mod matrix;
pub mod metric;
pub mod oracle;
pub mod su2;
pub mod wtj;

pub use metric::{profile, validate, FamilySpec, MetricProfile};
pub use wtj::{lambda_signature, wtj_matrix, SelfDualSignature, WtjMatrix};
