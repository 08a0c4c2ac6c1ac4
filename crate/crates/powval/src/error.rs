//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter is not squarefree (divisible by {0}^2)")]
    NotSquarefree(i64),
    #[error("disallowed field parameter {0}")]
    DisallowedValue(i64),
    #[error("field degree not supported by this operation")]
    UnsupportedDegree,
    #[error("operation requires the rational base field")]
    UnsupportedField,
    #[error("precision must be positive")]
    BadPrecision,
    #[error("the zero element has no ideal factorization")]
    ZeroElement,
    #[error("factorization budget exhausted")]
    FactorizationTooLarge,
    #[error("projective point needs at least one nonzero coordinate")]
    AllZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("root enclosures could not be certified at the precision cap")]
    RootCertificationFailure,
    #[error("polynomial degree too small")]
    DegreeTooSmall,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("a target coincides with the evaluation point")]
    TargetEqualsPoint,
    #[error("targets must be pairwise distinct")]
    DuplicateTargets,
    #[error("factor is not irreducible")]
    NotIrreducible,
    #[error("duplicate factor")]
    DuplicateFactors,
    #[error("height cap exceeds the enumeration budget")]
    CapTooLarge,
    #[error("parameters out of range")]
    BadRange,
    #[error("sequence has {got} terms, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("sequence terms must be pairwise distinct")]
    DuplicateSequenceTerms,
    #[error("sequence term is zero")]
    ZeroTerm,
    #[error("sequence is not periodic with the given period")]
    NotPeriodic,
    #[error("sequence prefix too short")]
    PrefixTooShort,
    #[error("polynomial degree does not match the requested degree")]
    DegreeMismatch,
    #[error("enumeration budget exceeded")]
    BudgetExceeded,
    #[error("search box larger than budget")]
    BoxTooLarge,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
