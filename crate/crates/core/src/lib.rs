//! Exact computation of volumes of isolated singularities and the b-divisor
//! calculus behind them, for surface singularities given by resolution
//! graphs and for affine toric singularities given by rational cones.
//!
//! All arithmetic is exact over the rationals.

pub mod cli;
pub mod endo;
pub mod error;
pub mod exactmath;
pub mod io;
pub mod oracle;
pub mod surface;
pub mod toric;

pub use error::{Error, Result};
