//! Finite monoids and groups, Green's relations, minimal ideals, wreath
//! products as row-monomial matrices, and two explicit constructions with
//! exhaustive verifiers: an idempotent-generated cover of a finite group and
//! the solution of a finite embedding problem.
//!
//! Every value is immutable once built. Element indices refer to the
//! deterministic enumeration order of the owning [`FiniteMonoid`], with the
//! identity at index `0`.

pub mod constructions;
pub mod element;
pub mod error;
pub mod green;
pub mod group;
pub mod hom;
pub mod monoid;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod srank;
pub mod wreath;

pub use constructions::{
    build_idempotent_cover, prepare_base, solve_embedding, verify_cover, verify_embedding,
    CoverMode, CoverOptions, CoverResult, EmbeddingProblem, EmbeddingSolution, PreparedBase,
};
pub use element::{Element, Transformation};
pub use error::{Error, Result};
pub use green::{
    green_structure, minimal_ideal, GreenStructure, MinimalIdeal, Partition, ReesCoordinates,
};
pub use group::{group_by_name, identify, is_isomorphic, FiniteGroup};
pub use hom::{canonical_section, hom_from_images, pullback, MonoidHom, Section};
pub use monoid::{generate_monoid, FiniteMonoid, ProductRule, DEFAULT_CAP};
pub use report::{Check, ConstructionReport, Outcome};
pub use srank::{r_s, SRankResult};
pub use wreath::{BlockRowMonomialMatrix, RowMonomialMatrix};
