use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("not an element of gsp4: {0}")]
    Membership(String),
    #[error("weight of the zero element is undefined")]
    ZeroElement,
    #[error("subspace is not stable under the Cartan action: {0}")]
    NotStable(String),
    #[error("linearly dependent basis for `{0}`")]
    Dependent(String),
    #[error("invalid highest weight {0}")]
    InvalidHighestWeight(String),
    #[error("character is not the character of a k-module: {0}")]
    NotAModule(String),
    #[error("singular matrix")]
    Singular,
    #[error("frame mismatch: {0} vs {1}")]
    FrameMismatch(String, String),
    #[error("element is not in k~: {0}")]
    NotInKTilde(String),
    #[error("module relation violated: {0}")]
    BadModule(String),
    #[error("degenerate bilinear form")]
    Degenerate,
    #[error("unknown basis symbol `{0}`")]
    UnknownSymbol(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
