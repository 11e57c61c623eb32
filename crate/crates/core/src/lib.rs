//! Rational geodesic currents on compact hyperbolic surfaces with boundary.

// Negated float comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod current;
pub mod decomposition;
pub mod dt;
pub mod error;
pub mod hyperbolic;
pub mod intersection;
pub mod mcg;
pub mod measures;
pub mod quadrature;
pub mod report;
pub mod surface;
pub mod word;

pub use error::{Error, Result};
