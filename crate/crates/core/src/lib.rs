//! Toeplitz operators with quasi-radial and quasi-homogeneous symbols on the weighted
//! Bergman spaces `A²_m` of complex projective space, realized on the affine chart
//! `ℂⁿ` as polynomials of degree at most `m`.

pub mod bergman;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod linalg;
pub mod multiindex;
pub mod oracle;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod symbols;
pub mod toeplitz;

pub use error::{Error, Result};
pub use multiindex::{block_degrees, enumerate_basis, BasisOrder, MultiIndex, Partition};
pub use scalar::Real;
pub use bergman::BergmanSpace;
pub use linalg::CMatrix;
pub use symbols::{QuasiHomogeneousSymbol, QuasiRadialSymbol, SymbolClassRkh};
pub use toeplitz::{OperatorMatrix, SpectralOptions};

pub type BergmanSpace64 = BergmanSpace<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type OperatorMatrix64 = OperatorMatrix<f64>;
pub type QuasiRadialSymbol64 = QuasiRadialSymbol<f64>;
pub type QuasiHomogeneousSymbol64 = QuasiHomogeneousSymbol<f64>;
pub type BergmanSpace32 = BergmanSpace<f32>;
pub type OperatorMatrix32 = OperatorMatrix<f32>;
