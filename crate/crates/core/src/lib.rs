//! Exact Hochschild-Mitchell (co)homology of finite k-linear categories.
//!
//! Categories are stored by structure constants over an exact field. On top
//! of the complexes live smash products by finite groups, gradings and their
//! Galois certificates, the conjugacy-class decomposition of cohomology with
//! coefficients in `M#kG`, and towers of truncations for filtered families.

#![no_std]

extern crate alloc;

pub mod decomp;
pub mod error;
pub mod field;
pub mod group;
pub mod gsmash;
pub mod hochschild;
pub mod kcat;
pub mod linalg;
pub mod towers;
pub mod validation;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{SparseMatrix, SparseVec, Subspace};
