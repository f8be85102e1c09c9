use thiserror::Error;

use crate::polyring::Var;

/// Errors raised by the algebra and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation `{0}` divides by (1 - q) and is undefined at q = 1")]
    QIsOne(&'static str),

    #[error("q = {0} makes some [n]_q vanish; divided-power series are undefined")]
    DegenerateQ(String),

    #[error("operands were built over different (q, u) contexts")]
    ContextMismatch,

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("determining series must have variable-free coefficients")]
    NonScalarCoefficients,

    #[error("index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("operation `{0}` requires a nonzero deformation parameter u")]
    DeformationZero(&'static str),

    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(Var),

    #[error("sum of determining series has zero constant term (degree drop)")]
    Degeneracy,

    #[error("family has a determining series vanishing at t = 0; `{0}` needs a nondegenerate family")]
    DegenerateFamily(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
