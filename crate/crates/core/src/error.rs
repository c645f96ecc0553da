use thiserror::Error;

use crate::field::Elem;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not a monic irreducible polynomial of degree {degree}")]
    NotIrreducible { degree: u32 },
    #[error("field size {size} exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("{sub_degree} does not divide the extension degree {degree}")]
    InvalidSubfield { sub_degree: u32, degree: u32 },
    #[error("{ell} does not divide the multiplicative order {order}")]
    NotDivisor { ell: u64, order: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a bijection: {a} and {b} have the same image")]
    NotBijective { a: Elem, b: Elem },
    #[error("map is not a permutation: {0}")]
    NotPermutation(String),
    #[error("prerequisite failed: the map is not an n-cycle for n = {0}")]
    PrereqNotNcycle(u64),
    #[error("hypothesis violated: {}", .0.join("; "))]
    HypothesisViolated(Vec<String>),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("h({witness}) is not an n-th root of unity")]
    HValueNotRootOfUnity { witness: Elem },
    #[error("g maps {witness} outside ker(psi)")]
    KernelViolation { witness: Elem },
    #[error("degenerate H: {0}")]
    DegenerateH(String),
    #[error("invalid lambda spec: {0}")]
    InvalidSpec(String),
    #[error("map is not surjective onto the given set: {0}")]
    NotSurjective(String),
}

impl Error {
    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadParams(msg.into())
    }

    pub(crate) fn hyp(msg: impl Into<String>) -> Self {
        Error::HypothesisViolated(vec![msg.into()])
    }
}
