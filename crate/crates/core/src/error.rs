use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operator does not preserve the subspace")]
    NotInvariant,
    #[error("operator is not a scalar on the subspace: {0}")]
    NotScalar(String),
    #[error("operator is not a multiple of the projector: {0}")]
    NotProportional(String),
    #[error("signature mismatch: expected gl({expected}), got gl({got})")]
    SignatureMismatch { expected: String, got: String },
    #[error("weights violate the betweenness conditions: {0}")]
    NotBranchCompatible(String),
    #[error("characteristic roots coincide at indices {} and {} (value {value})", .pair.0, .pair.1)]
    RootsCoincide { pair: (usize, usize), value: String },
    #[error("weight is not dominant: {0}")]
    NonDominant(String),
    #[error("weight is not integral: {0}")]
    NonIntegral(String),
    #[error("weight is atypical: (Λ+ρ, ε_{} − δ_{}) = 0", .witness.0, .witness.1)]
    Atypical { witness: (usize, usize) },
    #[error("maximal vectors of weight {0} span more than one dimension")]
    MultiplicityAmbiguity(String),
    #[error("component spans do not exhaust the module: {0}")]
    IncompleteDecomposition(String),
    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

impl Error {
    /// Stable variant name used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotInvariant => "NotInvariant",
            Error::NotScalar(_) => "NotScalar",
            Error::NotProportional(_) => "NotProportional",
            Error::SignatureMismatch { .. } => "SignatureMismatch",
            Error::NotBranchCompatible(_) => "NotBranchCompatible",
            Error::RootsCoincide { .. } => "RootsCoincide",
            Error::NonDominant(_) => "NonDominant",
            Error::NonIntegral(_) => "NonIntegral",
            Error::Atypical { .. } => "Atypical",
            Error::MultiplicityAmbiguity(_) => "MultiplicityAmbiguity",
            Error::IncompleteDecomposition(_) => "IncompleteDecomposition",
            Error::ConsistencyFailure(_) => "ConsistencyFailure",
            Error::Parse(_) => "ParseError",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
        }
    }
}
