//! Finite categories with concentration structures.
//!
//! A concentration structure is an equivalence relation on the morphisms of
//! a category that makes the set of classes into a monoid, with
//! `[f][g] = [f'∘g']` for any composable representatives. This crate decides
//! the axioms on explicit finite categories, computes the resulting monoids,
//! and implements the constructions built on them: pullbacks along 2-lifting
//! functors, sub- and quotient concentrations, semidirect products,
//! equivariant direct limits of groups, and finite groupoid models.

pub mod catalg;
pub mod category;
pub mod concentration;
pub mod dirlim;
pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod lifting;
pub mod monoid;

pub use category::{FinCategory, Functor, Morphism, MorphismId, ObjectId, ValidationReport};
pub use concentration::{check_concentration, AxiomReport, MorphismPartition, Outcome, Verdict};
pub use error::{Error, Result};
pub use monoid::{concentration_monoid, find_isomorphism, FinMonoid, MonoidHom};
