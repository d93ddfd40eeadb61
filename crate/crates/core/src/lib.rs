//! Abelian number fields, class field bounds and decision procedures for
//! when a Hilbert class field is abelian over `Q`.
//!
//! Fields are given as fixed fields of subgroups of `(Z/m)^*`
//! ([`cyclo::AbelianField`]); quadratic fields carry their class numbers and
//! unit norms ([`quadratic::QuadraticFieldData`]). Each decision procedure
//! returns a [`Certificate`] recording the verdict and the numbers behind it.

pub mod abgroup;
pub mod arith;
pub mod certificate;
pub mod cubic;
pub mod cyclo;
pub mod error;
pub mod quadratic;
pub mod report;
pub mod survey;
pub mod theorems;

pub use abgroup::FiniteAbelianGroup;
pub use certificate::{Certificate, Criterion, Verdict};
pub use cyclo::{AbelianField, ParsedField};
pub use error::{Error, Result};
pub use quadratic::QuadraticFieldData;
