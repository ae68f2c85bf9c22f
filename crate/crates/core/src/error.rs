use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{element} is not a member of {monoid}")]
    NotAMember { monoid: String, element: String },

    #[error("elements belong to different monoids: {left} vs {right}")]
    DescriptorMismatch { left: String, right: String },

    #[error("bound exceeded: {what} needs {requested} but the ceiling is {ceiling}")]
    BoundExceeded {
        what: &'static str,
        requested: String,
        ceiling: u64,
    },

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed trace: {0}")]
    MalformedTrace(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(
        "monoid not multiplicatively closed: product {product} has residue {product_residue} \u{2260} {residue}"
    )]
    NotClosed {
        residue: u64,
        modulus: u64,
        product: u128,
        product_residue: u64,
    },
}
