use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {arg} outside the domain of {what}")]
    Domain { what: &'static str, arg: f64 },

    #[error("{what} is singular at {arg}")]
    SingularArgument { what: &'static str, arg: f64 },

    #[error("{0} is undefined")]
    Undefined(&'static str),

    #[error("surface is not admissible at ({u}, {t}): |X_12| = {x12:e}")]
    NonAdmissible { u: f64, t: f64, x12: f64 },

    #[error("parameter point ({u}, {t}) lies outside the sampling domain")]
    OutsideDomain { u: f64, t: f64 },

    #[error("finite-difference stencil around ({u}, {t}) leaves the definition domain")]
    StencilOutOfDomain { u: f64, t: f64 },

    #[error("point ({u}, {t}) is within {distance:e} of the singular axis")]
    NearSingular { u: f64, t: f64, distance: f64 },

    #[error("invalid index {0}")]
    InvalidIndex(usize),

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("inconsistent case: {0}")]
    InconsistentCase(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
