use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped so a front end can map them to exit codes:
/// input problems, exceeded enumeration budgets, and internal invariant
/// violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 65536)")]
    NotPrime(u64),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {element} outside ground set [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("ground set size {0} outside [1, 64]")]
    GroundSetSize(usize),
    #[error("relations contain a cycle: {}", fmt_cycle(.0))]
    Cycle(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator matrix has rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("code has dimension zero")]
    ZeroDimension,
    #[error("enumeration needs {required} steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn fmt_cycle(cycle: &[usize]) -> String {
    cycle
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" <= ")
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects a computation whose step count exceeds `budget`.
pub(crate) fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { required, budget })
    } else {
        Ok(())
    }
}

/// Default number of enumeration steps an exhaustive routine may take.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
