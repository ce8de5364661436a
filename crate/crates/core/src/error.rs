//! Error type shared by the whole crate.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two polynomials from different variable spaces were combined.
    SpaceMismatch,
    /// Two scalars or polynomials over different coefficient fields were combined.
    FieldMismatch,
    /// An operation that needs a nonzero input received zero.
    ZeroInput,
    /// A polynomial expected to be (multi)homogeneous is not.
    NotHomogeneous(String),
    /// A square matrix was required.
    NonSquare { rows: usize, cols: usize },
    /// Degree preconditions on a graded map are violated.
    DegreeCondition(String),
    /// A complex is not generically exact, so it has no determinant.
    NotGenericallyExact(String),
    /// The exact polynomial division inside a determinant quotient failed.
    /// This indicates an internal inconsistency and must never occur on
    /// generically exact input.
    DivisionNotExact,
    /// A parameterization has base points; remove them first.
    BasePoints(String),
    /// An implicit family with more than two defining equations needs a
    /// Hilbert-Burch presentation.
    NeedHilbertBurch,
    /// A parameter was left unbound during specialization.
    UnboundParameter(String),
    /// An identifier is not declared in the variable space.
    UnknownVariable(String),
    /// Polynomial text could not be parsed; byte offset of the failure.
    Parse { pos: usize, msg: String },
    /// Division by zero in the coefficient field.
    DivisionByZero,
    /// No valid twist exists inside the search box.
    NoValidTwist,
    /// The twist search box is empty.
    EmptySearchBox,
    /// Anything else that violates a documented precondition.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SpaceMismatch => write!(f, "polynomials belong to different variable spaces"),
            Error::FieldMismatch => write!(f, "mixed coefficient fields"),
            Error::ZeroInput => write!(f, "zero input where a nonzero value is required"),
            Error::NotHomogeneous(d) => write!(f, "not homogeneous: {d}"),
            Error::NonSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::DegreeCondition(d) => write!(f, "degree condition violated: {d}"),
            Error::NotGenericallyExact(d) => write!(f, "complex is not generically exact: {d}"),
            Error::DivisionNotExact => write!(f, "internal error: determinant quotient is not an exact division"),
            Error::BasePoints(d) => write!(f, "base points detected: {d}"),
            Error::NeedHilbertBurch => write!(
                f,
                "implicit family with more than two equations: supply a Hilbert-Burch matrix"
            ),
            Error::UnboundParameter(n) => write!(f, "parameter `{n}` is unbound"),
            Error::UnknownVariable(n) => write!(f, "unknown identifier `{n}`"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NoValidTwist => write!(f, "no valid twist in the search box"),
            Error::EmptySearchBox => write!(f, "empty twist search box"),
            Error::Unsupported(d) => write!(f, "{d}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
