use alloc::string::String;

/// Errors raised by the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is excluded (the method requires p != 2)")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{d} exceeds the supported size")]
    FieldTooLarge { p: u64, d: u32 },
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree {source_degree} does not divide degree {target_degree}")]
    NotSubfield { source_degree: u32, target_degree: u32 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("linear change of variables is singular")]
    SingularChange,
    #[error("zero linear form does not define a line")]
    ZeroLine,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("sextic reduces to zero modulo {0}")]
    ZeroReduction(u64),
    #[error("trace {trace} violates the Weil bound |t| <= 22q for q = {q}")]
    WeilBoundViolated { trace: String, q: String },
    #[error("inconsistent traces: {0}")]
    InconsistentTraces(String),
    #[error("restriction to the line is not a square times a unit")]
    NotTritangent,
    #[error("tritangent splits only over F_p^2 (unit is a non-square)")]
    NonRationalSplit,
    #[error("cubic and quintic share a zero on the line; the reduction is singular there")]
    CommonZeroOnLine,
    #[error("lattice chain hypothesis violated: {0}")]
    ChainViolation(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("zero is not allowed here")]
    ZeroInput,
}

pub type Result<T> = core::result::Result<T, Error>;
