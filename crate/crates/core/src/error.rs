use thiserror::Error;

use crate::category::MorphismId;

/// Errors raised when an input is malformed or an operation's precondition
/// does not hold. Failures of a property that is being *decided* (an axiom,
/// 2-lifting, normality, ...) are reported through the return value of the
/// deciding function, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("object index {index} out of range ({len} objects)")]
    ObjectOutOfRange { index: usize, len: usize },
    #[error("morphism index {index} out of range ({len} morphisms)")]
    MorphismOutOfRange { index: usize, len: usize },
    #[error("malformed category: {0}")]
    MalformedCategory(String),
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("not a concentration structure: {0}")]
    NotConcentration(String),
    #[error("functor does not preserve the concentration: {0} and {1} are related but their images are not")]
    NotPreserving(MorphismId, MorphismId),
    #[error("functor is not 2-lifting: composable pair ({0}, {1}) has no composable lift")]
    NotTwoLifting(MorphismId, MorphismId),
    #[error("{what} has size {size}, which exceeds the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("invalid subcategory: {0}")]
    InvalidSubcategory(String),
    #[error("sub-concentration is not normal: {0}")]
    NotNormal(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("action is not compatible with the concentrations: {0}")]
    IncompatibleAction(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("equivariance violated: {0}")]
    Equivariance(String),
    #[error("not a connected groupoid: {0}")]
    NotGroupoid(String),
    #[error("invalid base-point path family: {0}")]
    InvalidTheta(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
