use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector norm below 1e-14")]
    ZeroVector,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("bad qubit subset: {0}")]
    BadSubset(String),
    #[error("bad qubit index {index} for a {n_qubits}-qubit register")]
    BadIndex { index: usize, n_qubits: usize },
    #[error("bad Pauli word: {0}")]
    BadWord(String),
    #[error("bad comb: {0}")]
    BadComb(String),
    #[error("expected {expected} qubits, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("bad qubit pair ({0}, {1})")]
    BadPair(usize, usize),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("spectral failure: {0}")]
    SpectralFailure(String),
    #[error("rank {0} exceeds the supported maximum of 4")]
    RankOverflow(usize),
    #[error("no restart met the stall criterion")]
    NoConvergence,
    #[error("states are not orthonormal (overlap {0:.3e})")]
    NotOrthonormal(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable tag for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroVector => "zero-vector",
            Error::BadDimension(_) => "bad-dimension",
            Error::BadSubset(_) => "bad-subset",
            Error::BadIndex { .. } => "bad-index",
            Error::BadWord(_) => "bad-word",
            Error::BadComb(_) => "bad-comb",
            Error::BadArity { .. } => "bad-arity",
            Error::BadPair(..) => "bad-pair",
            Error::BadParam(_) => "bad-param",
            Error::NotDensityMatrix(_) => "not-density-matrix",
            Error::SpectralFailure(_) => "spectral-failure",
            Error::RankOverflow(_) => "rank-overflow",
            Error::NoConvergence => "no-convergence",
            Error::NotOrthonormal(_) => "not-orthonormal",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// Parse-type failures as opposed to numerical ones; the CLI maps these to distinct exit codes.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::BadParam(_)
                | Error::BadDimension(_)
                | Error::BadSubset(_)
                | Error::BadIndex { .. }
                | Error::BadWord(_)
                | Error::BadComb(_)
                | Error::BadArity { .. }
                | Error::BadPair(..)
                | Error::ZeroVector
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
