use thiserror::Error;

/// Failures raised while building or operating on a ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring order must be positive")]
    ZeroOrder,
    #[error("order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: u128, cap: u128 },
    #[error("{0}")]
    NotPrimePower(String),
    #[error("matrix size must be at least 1")]
    ZeroDimension,
    #[error("base ring {0} is not commutative")]
    NoncommutativeBase(String),
    #[error("product needs at least one factor")]
    EmptyProduct,
    #[error("element index {index} out of range for ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element belongs to a different ring")]
    RingMismatch,
    #[error("table shape mismatch: {0}")]
    TableShape(String),
    #[error("zero element must carry index 0, found {0}")]
    ZeroNotIndexZero(usize),
    #[error("axiom `{axiom}` fails at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },
    #[error("no unity: no element acts as a two-sided multiplicative identity")]
    NoUnity,
    #[error("declared one {declared} is not the unity (unity is {actual})")]
    WrongUnity { declared: usize, actual: usize },
    #[error("additive group does not match declared type {declared:?}")]
    AdditiveTypeMismatch { declared: Vec<usize> },
    #[error("not an ideal: `{property}` fails at {witness:?}")]
    NotIdeal {
        property: &'static str,
        witness: Vec<usize>,
    },
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("resource limit: {0}")]
    Budget(String),
    #[error("malformed table text at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;
