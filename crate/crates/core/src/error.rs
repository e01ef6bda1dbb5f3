use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic must exceed 3 (got p = {0})")]
    CharacteristicTooSmall(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{h} is too large for table-driven arithmetic")]
    TooLarge { p: u32, h: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below p")]
    MalformedModulus { expected: u32 },
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("element index {index} is out of range for a field of order {q}")]
    IndexOutOfRange { index: u64, q: u32 },
    #[error("element {0} is not a non-square")]
    NotANonSquare(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed F_{{{p}^{from}}} into F_{{{p2}^{to}}}")]
    NoEmbedding { p: u32, from: u32, p2: u32, to: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("linear form has all coefficients zero")]
    ZeroLinearForm,
    #[error("variable index {0} out of range")]
    BadVariable(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("diagonal equation needs at least one variable")]
    NoVariables,
    #[error("diagonal coefficient {0} is zero")]
    ZeroCoefficient(usize),
    #[error("8*N({case}) = {value} is not divisible by 8")]
    NotDivisibleBy8 { case: usize, value: i64 },
    #[error("no closed form for the all-zero signature")]
    UnknownSignature,
    #[error("closed form {numerator}/{denominator} is not integral")]
    NonIntegral { numerator: i64, denominator: i64 },
    #[error("brute-force enumeration of q^{s} = {size} tuples exceeds the limit")]
    TooLarge { s: usize, size: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("singular point {0:?}")]
    SingularPoint([u32; 3]),
    #[error("point is not on the curve or line")]
    PointNotOnCurve,
    #[error("line is a component of the curve (infinite intersection multiplicity)")]
    LineIsComponent,
    #[error(
        "enumeration of {size} points exceeds the ceiling {ceiling} (raise FERMAT_SLICE_MAX_ENUM)"
    )]
    ResourceGuard { size: u64, ceiling: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("non-integral bound: {0}")]
    NonIntegral(String),
}
