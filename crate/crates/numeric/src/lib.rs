//! Double-precision model of `SO0(n+1,1)` acting on sections over `R^n`, with
//! checks of the Bruhat decompositions, the infinitesimal action and the
//! Fourier multiplier of the standard intertwiner.

pub mod action;
pub mod bruhat;
pub mod error;
pub mod fourier_check;
pub mod group;
pub mod multiplier;
pub mod report;
pub mod suite;

pub use error::{NumericError, Result};
pub use group::{GroupMatrix, Generators};
pub use report::{Report, Tolerances};
