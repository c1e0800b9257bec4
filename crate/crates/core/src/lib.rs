//! Exact evaluation and operator-level verification of gl(m|n) invariants:
//! characteristic roots, reduced Wigner coefficients, squared reduced matrix
//! elements, and Casimir towers.

pub mod closed_forms;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod operator;
pub mod parallel;
pub mod roots;
pub mod scalar;
pub mod superalgebra;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{kernel_basis, restrict_operator, scalar_on_subspace, Subspace};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use superalgebra::{casimir2_eigenvalue, rho, typicality, weight_form, Signature, Weight};
pub use roots::{characteristic_roots, index_sets, roots_distinct, IndexSets, RootSet};
pub use module::{build_kac_module, restrict_decompose, GModule};
