//! Matroid computations for dense minor-closed classes: finite fields and
//! projective geometries, rank-oracle matroids with lazy minors, truncations
//! and principal extensions, isomorphism and minor search, constructive
//! density reductions, free spike and swirl representability, and the
//! verification suites that exercise all of them.

pub mod arith;
pub mod constructions;
pub mod error;
pub mod field;
pub mod io;
pub mod iso;
pub mod lemmas;
pub mod matroid;
pub mod representability;
pub mod minor;
pub mod subset;
pub mod verify;
pub mod zphi;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use matroid::Matroid;
pub use subset::Subset;
