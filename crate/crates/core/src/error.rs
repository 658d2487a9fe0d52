use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed scalar literal {0:?}")]
    MalformedLiteral(String),
    #[error("fraction {0:?} has a zero denominator")]
    ZeroDenominator(String),
    #[error("unknown scalar mode {0:?} (expected exact or float)")]
    UnknownMode(String),
    #[error("q must be nonzero")]
    ZeroQ,

    #[error("node set is empty")]
    EmptyNodeSet,
    #[error("duplicate node: x_{first} and x_{second} coincide", first = .0 + 1, second = .1 + 1)]
    DuplicateNode(usize, usize),
    #[error("invalid node generator parameters: {0}")]
    InvalidGenerator(&'static str),
    #[error("chebyshev nodes are irrational and only available in float mode")]
    ChebyshevExact,
    #[error("node x_{index} is zero; this construction requires x_j != 0 for every j", index = .0 + 1)]
    ZeroNode(usize),

    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("jackson quotient undefined at x = 0")]
    JacksonAtOrigin,
    #[error("jackson quotient undefined at q = 1; use the classical derivative matrix instead")]
    JacksonAtQOne,

    #[error("unknown function {0:?} (expected monomial:m or poly:c0,c1,...)")]
    UnknownFunction(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(
        "operator at position {pos} is not normal-ordered: every x factor must stand to the left \
         of every D factor, since D*x = x*D + 1 and the order changes the operator"
    )]
    NormalOrdering { pos: usize },
}
