//! Exact arithmetic kernel: Gaussian-rational scalars, multivariate
//! polynomials, polynomial matrices with determinants, characteristic
//! polynomials, and Pfaffians.

mod matrix;
mod parse;
mod poly;
mod scalar;

pub use matrix::PolyMatrix;
pub use parse::parse_poly;
pub use poly::{Monomial, MultiPoly};
pub use scalar::GaussRational;

#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unbound variable `{0}` at evaluation")]
    UnboundVariable(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Pfaffian needs even size, got {0}")]
    OddPfaffian(usize),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("variable `{0}` already occurs in the matrix")]
    VariableCollision(String),
    #[error("parse error: {0}")]
    Parse(String),
}
