use thiserror::Error;

/// Failures raised by the numerical engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("point {re} + {im}i lies on the branch cut [-3, 1]")]
    OnCut { re: f64, im: f64 },

    #[error("polynomial degree cap {cap} reached before tolerance {tol:e}")]
    ToleranceNotReached { cap: usize, tol: f64 },

    #[error("contour quadrature cannot reach {tol:e}: cancellation factor {factor:e}")]
    QuadratureDivergence { factor: f64, tol: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("root finding failed: residual {residual:e}")]
    RootFinding { residual: f64 },

    #[error("path tracing stalled at {re} + {im}i")]
    Stall { re: f64, im: f64 },

    #[error("saddle relevance is ambiguous at (u, v) = ({u}, {v})")]
    ClassificationAmbiguous { u: f64, v: f64 },

    #[error("{x} outside the supported range [{lo}, {hi}]")]
    Range { x: f64, lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
