use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a supported prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("characteristic mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("subspace is not a p-ideal: {0}")]
    NotPIdeal(String),
    #[error("subspace is not a restricted subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("not a restricted morphism: {0}")]
    NotMorphism(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("kernel submodule is not central: {0}")]
    NotCentral(String),
    #[error("unknown standard algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("section mismatch: {0}")]
    SectionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::DimensionMismatch(msg.into()))
}
