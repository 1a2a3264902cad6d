//! Exact linear algebra for filtered vector spaces, mixed Hodge structures
//! and mixed Hodge complexes over the Gaussian rationals `Q(i)`.

pub mod breen;
pub mod cli;
pub mod cplx;
pub mod error;
pub mod filtration;
pub mod io;
pub mod matrix;
pub mod mhs;
pub mod multilinear;
pub mod namhs;
pub mod poly;
pub mod rees;
pub mod report;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use filtration::{FilteredSpace, HodgeFiltration};
pub use matrix::{Matrix, Vector};
pub use scalar::Scalar;
pub use subspace::{SubQuotient, Subspace};
