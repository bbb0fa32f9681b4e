use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("incompatible order tags: {left} and {right}")]
    IncompatibleOrder { left: String, right: String },

    #[error("operator at order {order} requires the order {lower} coefficient sequence")]
    MissingLowerOrder { order: f64, lower: f64 },

    /// The order-0 derivative has a boundary term that the order-ν formula cannot see.
    #[error("operator needs boundary data at order 0; use op_d0 / op_d0_squared")]
    BoundaryRequired,

    #[error("integrand is not finite at node x = {node}")]
    NonFinite { node: f64 },

    #[error("eigen-solver did not converge for a {size}x{size} Jacobi matrix")]
    EigenFailure { size: usize },

    #[error("could not parse {0:?} as a number")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by user-supplied parameters, as opposed to numerical failure.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::NonFinite { .. } | Error::EigenFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
