//! JSON code files shared by `construct` and `verify`.

use serde::{Deserialize, Serialize};

use crate::clifford::{BinaryVector, CliffordError, StabilizerCode};
use crate::metric::FamilySpec;
use crate::su2::{Su2Entry, Su2Error, Su2Vector};

#[derive(Debug, thiserror::Error)]
pub enum CodeFileError {
    #[error("malformed code file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid stabilizer code: {0}")]
    Clifford(#[from] CliffordError),
    #[error("invalid su(2) code: {0}")]
    Su2(#[from] Su2Error),
    #[error("family {family} does not fit a {kind} code on n = {n}")]
    Family {
        family: String,
        kind: &'static str,
        n: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CodeFile {
    #[serde(rename = "clifford-stabilizer")]
    Clifford {
        family: FamilySpec,
        n: usize,
        generators: Vec<BinaryVector>,
        signs: Vec<i8>,
    },
    #[serde(rename = "su2-vectors")]
    Su2 {
        family: FamilySpec,
        vectors: Vec<Vec<Su2Entry>>,
    },
}

/// A code file after validation.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedCode {
    Clifford {
        family: FamilySpec,
        code: StabilizerCode,
    },
    Su2 {
        n: u32,
        vectors: Vec<Su2Vector>,
    },
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<CodeFile, CodeFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files serialize")
    }

    pub fn from_stabilizer(family: FamilySpec, code: &StabilizerCode) -> CodeFile {
        CodeFile::Clifford {
            family,
            n: code.n,
            generators: code.generators.clone(),
            signs: code.signs.clone(),
        }
    }

    pub fn from_su2(n: u32, vectors: &[Su2Vector]) -> CodeFile {
        CodeFile::Su2 {
            family: FamilySpec::Su2 { n },
            vectors: vectors.iter().map(Su2Vector::entries).collect(),
        }
    }

    pub fn load(&self) -> Result<LoadedCode, CodeFileError> {
        match self {
            CodeFile::Clifford {
                family,
                n,
                generators,
                signs,
            } => {
                let fits = matches!(
                    family,
                    FamilySpec::CliffordOdd { .. }
                        | FamilySpec::CliffordEven { .. }
                        | FamilySpec::Spinorial { .. }
                ) && family.n() as usize == *n;
                if !fits {
                    return Err(CodeFileError::Family {
                        family: family.name().to_string(),
                        kind: "clifford-stabilizer",
                        n: *n as u32,
                    });
                }
                let code = StabilizerCode::new(*n, generators.clone(), signs.clone())?;
                Ok(LoadedCode::Clifford {
                    family: *family,
                    code,
                })
            }
            CodeFile::Su2 { family, vectors } => {
                let FamilySpec::Su2 { n } = *family else {
                    return Err(CodeFileError::Family {
                        family: family.name().to_string(),
                        kind: "su2-vectors",
                        n: family.n(),
                    });
                };
                let vectors = vectors
                    .iter()
                    .map(|v| Su2Vector::from_entries(n, v))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LoadedCode::Su2 { n, vectors })
            }
        }
    }
}
