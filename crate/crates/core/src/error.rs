use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("x^2 + {c1}x + {c0} has no real root")]
    NotReal { c0: i64, c1: i64 },

    #[error("mu is an eigenvalue of the star complement (m(mu) = 0)")]
    MuIsEigenvalue,

    #[error("graph is not K_{{{t},{s}}} with the declared part order")]
    BadTag { t: usize, s: usize },

    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("mu in {{-1, 0}} admits infinitely many graphs; a cap on |X| is required")]
    Unbounded,

    #[error("candidates share the H-neighbourhood {0:#b} although mu is not -1 or 0")]
    DuplicateNeighbourhood(u64),

    #[error("G(r) part sizes are not nonnegative integers for t={t}, s={s}, r={r}")]
    DivisibilityViolation { t: usize, s: usize, r: usize },

    #[error("hypothesis k+t+s-1 > r violated")]
    HypothesisViolated,

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
