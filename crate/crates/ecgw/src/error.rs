//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate token `{0}`")]
    DuplicateToken(String),
    #[error("element `{0}` is not in the domain")]
    MissingAssignment(String),
    #[error("element `{0}` is not in the codomain")]
    NotInCodomain(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("not composable: codomain/domain mismatch")]
    NotComposable,
    #[error("not a coproduct inclusion")]
    NotCoproductInclusion,
    #[error("not an isomorphism")]
    NotIso,
    #[error("map does not factor through the given morphism")]
    NoFactorization,
    #[error("malformed square: {0}")]
    MalformedSquare(String),
    #[error("square is not good")]
    SquareNotGood,
    #[error("no star-pushout witness available for the span")]
    StarPushoutMissing,
    #[error("malformed monoid table: {0}")]
    MalformedMonoid(String),
    #[error("malformed action: {0}")]
    MalformedAction(String),
    #[error("subset is not closed under the action")]
    NotActionClosed,
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("chain condition violated at degree {0}")]
    ChainConditionViolated(i32),
    #[error("chain map square is not a pullback at degree {0}")]
    NotPullback(i32),
    #[error("chain map square does not commute at degree {0}")]
    SquareNotCommuting(i32),
    #[error("index {0} out of window")]
    IndexOutOfWindow(i32),
    #[error("the given pair is not a kernel-cokernel pair")]
    NotKernelCokernelPair,
    #[error("complex is not exact at degree {0}")]
    NotExact(i32),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
