//! Exact computations for acyclic cluster algebras: quiver and seed mutation,
//! exchange graphs and mutation classes, finite-type classification, and the
//! Caldero-Chapoton map checked against module-level Ext computations.

pub mod error;
pub mod laurent;
pub mod quiver;
pub mod reptheory;
pub mod seed;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use quiver::{canonical_form, dynkin_type, DynkinFamily, DynkinType, Quiver};
pub use seed::{Seed, SeedKey};
