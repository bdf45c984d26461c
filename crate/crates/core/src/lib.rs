//! Finite semantic models of 2-typoids.
//!
//! A [`Typoid`] is a strict groupoid of base paths together with an
//! equivalence layer: edges with designated units, composition and
//! inversion, a partition of every hom-set into cells, and a table sending
//! paths to edges. This crate checks the typoid laws, typoid functions and
//! univalence exhaustively, and implements the standard constructions
//! (equality, product, exponential, truncation, finite universes).
//!
//! Everything here is `no_std` with `alloc`.

#![no_std]

extern crate alloc;

pub mod constructions;
mod error;
pub mod families;
mod ids;
mod model;
mod morphism;
mod partition;
mod report;
pub mod search;
pub mod stock;
mod tables;
mod univalence;
mod validate;

pub use error::{Bound, Error};
pub use ids::{ArrowId, EdgeId, PathId, TermId};
pub use model::{EquivalenceLayer, FiniteGroupoid, GroupoidBuilder, Typoid, TypoidBuilder};
pub use morphism::{
    check_inverse_law, check_path_action, compose_morphisms, identity, identity_from_equality, is_strict,
    validate_morphism, MorphismChecks, TypoidMorphism,
};
pub use partition::CellPartition;
pub use report::{Law, ValidationReport, Violation, Witness};
pub use tables::{ArrowTables, ArrowTablesBuilder};
pub use univalence::{
    certificate_morphism, check_edge_square, check_pointed_factors, check_square, check_univalence, induce_morphism,
    product_certificate, verify_certificate, FactorOutcome, NotUnivalent, PointedFactors, UnivalenceCertificate,
    UnivalenceGap,
};
pub use validate::{derived_laws, expected_checks, validate_groupoid, validate_typoid};
