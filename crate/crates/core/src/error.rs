use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("matrix size overflow: {rows} x {cols}")]
    Size { rows: usize, cols: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |a - a*| = {violation:e}")]
    NotHermitian { violation: f64 },

    #[error("matrix is rank deficient: numerical rank {rank} of {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("columns are not orthonormal: max |L*L - I| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("real field violated: max |imag| = {max_imag:e}")]
    FieldViolation { max_imag: f64 },

    #[error("matrix {index} is not unitary: max |U*U - I| = {deviation:e}")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("index {index} out of range for {len} subspaces")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("parameter mismatch: {0}")]
    Mismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid tolerance {0:e}: must lie in (0, 1e-2)")]
    Tolerance(f64),

    #[error("subspace {index}: {source}")]
    InSubspace {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn in_subspace(index: usize, source: Error) -> Self {
        Error::InSubspace {
            index,
            source: Box::new(source),
        }
    }

    /// `true` for failures of the filesystem rather than of the data.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
