use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed threshold expression: {0}")]
    MalformedThreshold(String),

    #[error("modulus is not additive: |T|({left} + {right}) differs from |T|({left}) + |T|({right})")]
    ModulusNotAdditive { left: String, right: String },

    #[error("codomain is not a vector lattice: {0}")]
    NonLatticeCodomain(String),

    #[error("domain cone is not simplicial; only single-point evaluation of the modulus is available")]
    NonSimplicialDomain,

    #[error("inconsistent operator report: {0}")]
    InconsistentReport(String),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
