use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not a unit")]
    NotInvertible,
    #[error("polynomial must have constant term 1")]
    NotReversedMonic,
    #[error("insufficient data: needed {needed} values, got {available}")]
    InsufficientData { needed: usize, available: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dual unavailable: {0}")]
    DualUnavailable(String),
    #[error("object is not self-dual up to L^-{0}")]
    NotSelfDual(i64),
    #[error("no table declared for {atom} at power {n}")]
    MissingTable { atom: String, n: usize },
    #[error("determinant is not a unit monomial: {0}")]
    C1ViolationCandidate(String),
    #[error("not of the form L^r * (Artin classes): {0}")]
    NotInC1Form(String),
    #[error("not a unit monomial: {0}")]
    NotUnitMonomial(String),
    #[error("matrix in degree {0} is singular")]
    SingularPiece(i32),
    #[error("malformed Weil polynomial: {0}")]
    BadWeilPoly(String),
    #[error("class is not invertible: {0}")]
    NotInvertibleClass(String),
    #[error("Euler characteristics differ: {0}")]
    ChiMismatch(String),
    #[error("unknown atom {0}")]
    UnknownAtom(String),
    #[error("bad declaration: {0}")]
    BadDeclaration(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("coefficient is not an integer: {0}")]
    NotIntegral(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
