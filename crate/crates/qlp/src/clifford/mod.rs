//! Clifford operators on `n` qubits and the codes cut out by commuting
//! families of them.

pub mod binary;
pub mod code;
pub mod detect;
pub mod pauli;

pub use binary::{f2_rank, is_q_isotropic, nullspace, q_form, BinaryVector, F2Basis};
pub use code::{
    build_code, clifford_hamming, CodeObject, CodeRepr, StabilizerCode, MATRIX_MAX_QUBITS,
};
pub use detect::{
    detection_report, detection_report_matrix, detection_report_symbolic, distance_distribution,
    distance_distribution_matrix, DetectionPath, DetectionReport, DistanceDistribution, Reading,
};
pub use pauli::{gamma, gamma_pauli, weyl_brauer, weyl_brauer_pauli, CliffordOp, PauliString};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("generators are not q-isotropic")]
    NotIsotropic,
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("bad signs: {0}")]
    BadSigns(String),
    #[error("Clifford Hamming codes need s >= 3, got {0}")]
    HammingParameter(usize),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("the code is zero-dimensional")]
    EmptyCode,
    #[error("cannot parse: {0}")]
    Parse(String),
    #[error("{0} is not a Clifford or spinorial family on the code's qubits")]
    UnsupportedFamily(String),
    #[error("symbolic and matrix detection disagree: {0}")]
    CrossCheck(String),
}
