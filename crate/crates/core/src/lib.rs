//! Exact computer algebra for the Muirhead system of the matrix-argument
//! hypergeometric function ₁F₁: zonal polynomials, truncated series, the
//! Weyl algebra, Gröbner bases over rational-function coefficients,
//! characteristic-variety combinatorics and restriction to a hyperplane.

pub mod arith;
pub mod charvar;
pub mod combinatorics;
pub mod error;
pub mod hyperseries;
pub mod muirhead;
pub mod par;
pub mod restriction;
pub mod solutions;
pub mod weyl;
pub mod zonal;

pub use error::{Error, Result};
