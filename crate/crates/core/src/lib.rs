//! Exact Jordan–Chevalley and fine Frobenius decompositions of matrices over
//! ℚ and 𝔽_p, and power series of matrices over valued fields.

pub mod cli;
pub mod error;
pub mod frobenius;
pub mod jordan_chevalley;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use matrix::{eval_poly_at_matrix, Matrix};
pub use poly::{Factorization, Polynomial};
pub use report::Report;
pub use scalar::{AbsValue, Field, QuadElement, Scalar};
