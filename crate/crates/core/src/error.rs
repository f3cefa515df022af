use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A request exceeded one of the configured [`Limits`](crate::Limits).
    #[error("resource limit exceeded: {what} = {requested} (maximum {maximum})")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        maximum: usize,
    },

    #[error("coefficient table has n_max = {available} but {required} terms are needed for k = {k}")]
    InsufficientTable {
        k: usize,
        available: usize,
        required: usize,
    },

    #[error("table does not contain series index k = {k} (k_max = {k_max})")]
    IndexOutOfTable { k: usize, k_max: usize },

    /// The observed term ratio broke the geometric tail assumption.
    #[error("term ratio {ratio:.6} at n = {n} (k = {k}) exceeds the tail bound ratio {bound}")]
    TailCheck {
        k: usize,
        n: usize,
        ratio: f64,
        bound: f64,
    },

    #[error("unknown constant `{name}`; valid names: {valid}")]
    UnknownConstant { name: String, valid: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bernoulli cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
