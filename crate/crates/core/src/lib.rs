//! Selberg and Ruelle zeta functions on compact even-dimensional real
//! hyperbolic manifolds: the functional-equation exponent, truncated Euler
//! products, model zeta functions with prescribed singularities, and
//! contour-based singularity counting.

pub mod cli;
pub mod config;
pub mod counting;
pub mod error;
pub mod fe_factor;
pub mod format;
pub mod model_zeta;
pub mod quadrature;
pub mod sigma_poly;
pub mod space_params;
pub mod spectrum_io;
pub mod zeta_eval;

pub use error::{Error, Result};
