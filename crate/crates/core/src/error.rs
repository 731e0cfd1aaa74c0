use std::fmt;

/// Errors produced by field construction, arithmetic, parsing, and decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion or division by the zero element.
    DivisionByZero,
    /// Arithmetic attempted between elements of distinct fields.
    FieldMismatch,
    /// A gcd/lcm style operation received zero where a nonzero operand is required.
    ZeroPolynomial,
    /// Text could not be parsed; the message points at the offending part.
    Parse(String),
    /// Field parameters are unusable (p not prime, modulus not monic/irreducible, size cap).
    InvalidField(String),
    /// Iterating the substitution never returned to the identity within the bound.
    OrderNotFound { max: usize },
    /// The substitution map is not invertible on the function field.
    NotInjective,
    /// The chosen element does not generate a normal basis.
    NotNormalBasis,
    /// Designed distance outside 2..=n.
    BadDelta { delta: usize, n: usize },
    /// Random search gave up after the attempt cap.
    SearchExhausted,
    /// A word or message has the wrong number of coordinates.
    LengthMismatch { expected: usize, got: usize },
    /// An error position lies outside 0..n.
    PositionOutOfRange { position: usize, n: usize },
    /// Distance verification would need more minors than the configured cap.
    TooManyMinors { count: u64, cap: u64 },
    /// A linear system has no unique solution.
    SingularSystem,
    /// An error value solved to zero, contradicting the located positions.
    ZeroErrorValue,
    /// The locator from the key equation misses positions and recovery was disabled.
    KeyEquationFailure,
    /// The received word cannot be corrected to a codeword.
    Undecodable(String),
    /// The failure solver could not identify any further error position.
    NoPositionFound,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "elements belong to different fields"),
            Error::ZeroPolynomial => write!(f, "operation requires a nonzero polynomial"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::OrderNotFound { max } => {
                write!(f, "substitution order not found within {max} iterations")
            }
            Error::NotInjective => write!(f, "substitution is not an automorphism"),
            Error::NotNormalBasis => write!(f, "element does not generate a normal basis"),
            Error::BadDelta { delta, n } => {
                write!(f, "designed distance {delta} outside 2..={n}")
            }
            Error::SearchExhausted => write!(f, "random search exhausted its attempt cap"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            Error::PositionOutOfRange { position, n } => {
                write!(f, "position {position} outside 0..{n}")
            }
            Error::TooManyMinors { count, cap } => {
                write!(f, "distance check needs {count} minors, cap is {cap}")
            }
            Error::SingularSystem => write!(f, "linear system has no unique solution"),
            Error::ZeroErrorValue => write!(f, "solved error value is zero"),
            Error::KeyEquationFailure => {
                write!(f, "key equation failure: locator misses error positions")
            }
            Error::Undecodable(msg) => write!(f, "undecodable word: {msg}"),
            Error::NoPositionFound => write!(f, "no further error position could be identified"),
        }
    }
}

impl std::error::Error for Error {}
