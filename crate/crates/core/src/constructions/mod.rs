//! The two explicit constructions: the idempotent-generated cover of a
//! finite group, and the solution of an embedding problem.

pub mod cover;
pub mod embedding;

pub use cover::*;
pub use embedding::*;
