use thiserror::Error;

use crate::codes::CodeError;
use crate::scalar::ScalarError;

/// Errors raised by algebra-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("the code has no non-constant codewords")]
    EmptyCStar,
    #[error("missing structure parameter {0}")]
    MissingParam(String),
    #[error("structure parameter {0} lies outside the parameter domain")]
    UnexpectedParam(String),
    #[error("algebra dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("params line {line}, column {col}: {msg}")]
    ParamsParse { line: usize, col: usize, msg: String },
    #[error("permutation {0} is not an automorphism of the code")]
    NotAnAutomorphism(String),
    #[error("parameters are not regular: {0}")]
    NotRegular(String),
    #[error("not a subcode of the algebra's code")]
    NotASubcode,
    #[error("element has length {found}, expected {expected}")]
    ElementLength { expected: usize, found: usize },
    #[error("element is not semisimple over the working field")]
    NotSemisimple,
    #[error("fusion law lacks the labels 1 and 0")]
    MissingUnitLabels,
    #[error("fusion law of {0} admits no nontrivial Z2-grading")]
    NoGrading(String),
    #[error("subcode is not constant weight")]
    NotConstantWeight,
    #[error("structure parameters are not constant on the subcode: {0}")]
    ParamsNotConstantOnD(String),
    #[error("no root of {0} in the working field")]
    NoRootInField(String),
    #[error("mu = 0, so the idempotent degenerates to a multiple of t_D")]
    DegenerateMuZero,
    #[error("a = 1/(2|alpha|): the small idempotents collapse to t_alpha")]
    DegenerateHalfCase,
    #[error("a = 1/(3|alpha|): the lambda - 1/2 eigenvector collapses into the 1-eigenspace")]
    DegenerateThirdCase,
    #[error("Frobenius condition 1 fails at i = {i}, j = {j}, alpha = {alpha}")]
    ConditionOneFails { i: usize, j: usize, alpha: String },
    #[error("Frobenius condition 2 fails at alpha = {alpha}, beta = {beta}, gamma = {gamma}")]
    ConditionTwoFails { alpha: String, beta: String, gamma: String },
    #[error("the algebra is degenerate: {0}")]
    Degenerate(String),
    #[error("Miyamoto grading fails: {0}")]
    GradingFails(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
