//! Laboratory for bi-Poisson pencils, quaternionic spectral curves and
//! Nahm flows: an exact symbolic kernel plus double-precision diagnostics.

pub mod bipoisson;
pub mod charts;
pub mod exact;
pub mod numeric;

pub use exact::{GaussRational, MultiPoly, PolyMatrix};
