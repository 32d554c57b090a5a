//! Exact symbolic computation with linear connections on Lie algebroids and
//! anchored super vector bundles, organized around their heap and truss
//! structures.
//!
//! Everything is polynomial in the coordinates with rational coefficients,
//! so every identity is checked exactly rather than numerically.

pub mod algebroid;
pub mod connection;
pub mod error;
pub mod frontend;
pub mod laws;
pub mod propositions;
pub mod sampling;
pub mod superalgebra;
pub mod tensor;
pub mod truss;

pub use algebroid::{Algebroid, BundleSignature, Section};
pub use connection::{Connection, CurvatureConvention, CurvatureTensor, Metric, TorsionTensor};
pub use error::{Error, Result};
pub use laws::{LawReport, Sample, Witness};
pub use superalgebra::{Coefficient, Derivation, Monomial, Parity, RingSignature, SuperScalar};
pub use tensor::{BundleMatrix, Tensor12, Tensor13};
pub use truss::ConnEndo;
