use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group presentation needs at least one modulus")]
    EmptyPresentation,
    #[error("modulus {0} is invalid; every modulus must be >= 1")]
    BadModulus(u64),
    #[error("group order overflows the platform integer")]
    OrderOverflow,
    #[error("cannot parse group token {0:?}")]
    GroupSpec(String),
    #[error("element {coords:?} is not valid for moduli {moduli:?}")]
    BadElement { coords: Vec<u64>, moduli: Vec<u64> },
    #[error("element index {index} out of range for group of order {order}")]
    BadIndex { index: usize, order: usize },
    #[error("subgroup is not closed: {0}")]
    NotClosed(String),
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
    #[error("vector length {got} does not match expected length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("vector contains a non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("invalid subgroup tower: {0}")]
    BadTower(String),
    #[error("{0} does not divide {1}")]
    NotDivisor(usize, usize),
    #[error("qubit count {n} outside 1..={cap}")]
    QubitCount { n: usize, cap: usize },
    #[error("qubit index {qubit} out of range for {n} qubits")]
    BadQubit { qubit: usize, n: usize },
    #[error("gate targets must be distinct, got {0:?}")]
    RepeatedTarget(Vec<usize>),
    #[error("gate matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("gate of arity {arity} given {targets} targets")]
    ArityMismatch { arity: usize, targets: usize },
    #[error("state is not normalised (norm^2 = {0})")]
    NotNormalised(f64),
    #[error("function table is degenerate: f({a}) = f({b}) but {a} - {b} is not a period")]
    Degenerate { a: usize, b: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}
