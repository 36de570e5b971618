//! Exact representation theory of the spherical principal series of
//! `SO0(n+1,1)`: K-type eigenvalues of the standard intertwining operators,
//! composition series, Fourier-picture multipliers, the unitary dual and
//! restrictions to the minimal parabolic.

pub mod error;
pub mod exact_arith;
pub mod weight_lattice;
pub mod compact_picture;
pub mod fourier_picture;
pub mod unitary_dual;
pub mod restriction;

pub use error::{Error, Result};
pub use exact_arith::Rational;
pub use weight_lattice::{HighestWeight, ParamContext};
pub use compact_picture::{CompositionFactor, FactorTag, LambdaSpec, PrincipalSeriesPoint};
