//! Constant and spectral solutions of the graded reflection equation for the
//! standard Hecke R-matrices of the general linear Lie superalgebras.

pub mod baxter;
pub mod error;
pub mod grading;
pub mod json;
pub mod kmatrix;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;
pub mod verifier;

pub use baxter::Spectral;
pub use error::{Error, Result};
pub use grading::Grading;
pub use kmatrix::{AdmissiblePair, Classification, KFamily, KParams, MinimalPolynomialClass};
pub use rmatrix::BraidMatrix;
pub use scalar::{Point, Ring, Scalar};
pub use tensor::{GradedTensorElement, SparseMatrix, SquareMatrix, TensorMatrix};
pub use verifier::{CheckMode, Residual, Witness};
